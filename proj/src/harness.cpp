#include "edgecontract/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

#include "edgecontract/errors.hpp"

namespace edgecontract {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

template <typename Enum, std::size_t N>
Enum parse_choice(std::string_view text, const std::pair<std::string_view, Enum> (&choices)[N],
                  std::string_view what) {
  const std::string key = lower(text);
  for (const auto& [name, value] : choices) {
    if (key == name) return value;
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(text) + "'");
}

MetricSummary summarize_metric(const std::vector<double>& xs) {
  MetricSummary s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double sq = 0.0;
    for (double x : xs) sq += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(xs.size() - 1));
  }
  return s;
}

std::optional<double> gain_pct(double value, double baseline) {
  if (baseline == 0.0) return std::nullopt;
  return (value - baseline) / std::abs(baseline) * 100.0;
}

}  // namespace

std::string_view to_string(Benchmark benchmark) {
  switch (benchmark) {
    case Benchmark::NoContract: return "No_Contract";
    case Benchmark::HumanContract: return "Human_Contract";
    case Benchmark::OracleContract: return "Oracle_Contract";
    case Benchmark::VlmContract: return "VLM_Contract";
  }
  return "?";
}

Benchmark parse_benchmark(std::string_view text) {
  static const std::pair<std::string_view, Benchmark> choices[] = {
      {"no_contract", Benchmark::NoContract},       {"nocontract", Benchmark::NoContract},
      {"none", Benchmark::NoContract},              {"human_contract", Benchmark::HumanContract},
      {"human", Benchmark::HumanContract},          {"oracle_contract", Benchmark::OracleContract},
      {"oracle", Benchmark::OracleContract},        {"vlm_contract", Benchmark::VlmContract},
      {"vlm", Benchmark::VlmContract},
  };
  return parse_choice(text, choices, "benchmark");
}

std::string_view to_string(OracleRule rule) {
  switch (rule) {
    case OracleRule::Threshold: return "threshold";
    case OracleRule::Comparison: return "comparison";
    case OracleRule::ComparisonLiteral: return "comparison-literal";
  }
  return "?";
}

std::string_view to_string(HumanTruth truth) { return truth == HumanTruth::Oracle ? "oracle" : "latent"; }

std::string_view to_string(WithheldUtility mode) {
  return mode == WithheldUtility::Reservation ? "reservation" : "gross";
}

std::string_view to_string(VlmMode mode) { return mode == VlmMode::Replay ? "replay" : "live"; }

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::Servers: return "servers";
    case SweepAxis::Tasks: return "tasks";
  }
  return "?";
}

OracleRule parse_oracle_rule(std::string_view text) {
  static const std::pair<std::string_view, OracleRule> choices[] = {
      {"threshold", OracleRule::Threshold},
      {"comparison", OracleRule::Comparison},
      {"comparison-literal", OracleRule::ComparisonLiteral},
  };
  return parse_choice(text, choices, "oracle rule");
}

HumanTruth parse_human_truth(std::string_view text) {
  static const std::pair<std::string_view, HumanTruth> choices[] = {{"oracle", HumanTruth::Oracle},
                                                                    {"latent", HumanTruth::Latent}};
  return parse_choice(text, choices, "human truth");
}

WithheldUtility parse_withheld_utility(std::string_view text) {
  static const std::pair<std::string_view, WithheldUtility> choices[] = {
      {"reservation", WithheldUtility::Reservation}, {"gross", WithheldUtility::Gross}};
  return parse_choice(text, choices, "withheld utility mode");
}

VlmMode parse_vlm_mode(std::string_view text) {
  static const std::pair<std::string_view, VlmMode> choices[] = {{"replay", VlmMode::Replay},
                                                                 {"live", VlmMode::Live}};
  return parse_choice(text, choices, "VLM mode");
}

SweepAxis parse_sweep_axis(std::string_view text) {
  static const std::pair<std::string_view, SweepAxis> choices[] = {
      {"none", SweepAxis::None}, {"servers", SweepAxis::Servers}, {"tasks", SweepAxis::Tasks}};
  return parse_choice(text, choices, "sweep axis");
}

Solver parse_solver(std::string_view text) {
  static const std::pair<std::string_view, Solver> choices[] = {{"greedy", Solver::Greedy},
                                                                {"bruteforce", Solver::BruteForce}};
  return parse_choice(text, choices, "solver");
}

void ScenarioConfig::validate() const {
  try {
    contract.validate();
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("[contract] ") + e.what());
  }
  perf.validate(contract);
  topology.validate();
  if (!(allocator.deadline > 0.0)) throw ConfigError("deadline must be positive");
  if (!(allocator.weights.completion >= 0.0) || !(allocator.weights.response >= 0.0)) {
    throw ConfigError("objective weights must be nonnegative");
  }
  if (!(assessor.human_epsilon >= 0.0 && assessor.human_epsilon <= 1.0)) {
    throw ConfigError("human_epsilon must lie in [0, 1]");
  }
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  for (int v : sweep.values) {
    if (v < 1) throw ConfigError("sweep values must be positive");
  }
}

Settlement settle_payment(TaskType latent, double realized_score, const ContractBundle& selected,
                          const ContractParams& params, WithheldUtility withheld) {
  const double theta = valuation(latent, params);
  const double realized = teleoperator_utility(theta, realized_score, selected.price, params);
  Settlement s;
  if (realized < 0.0) {
    s.payment = 0.0;
    s.teleop_utility = withheld == WithheldUtility::Reservation ? 0.0 : gross_value(theta, realized_score, params);
    s.edge_utility = -params.eta1 * selected.perf;
  } else {
    s.payment = selected.price;
    s.teleop_utility = realized;
    s.edge_utility = selected.price - params.eta1 * selected.perf;
  }
  return s;
}

const ContractBundle& selected_bundle(const AigcTask& task, Benchmark benchmark, const ContractMenu& menu,
                                      const ContractBundle& pooled) {
  if (benchmark == Benchmark::NoContract) return pooled;
  if (!task.assessed) throw std::logic_error("contract benchmark needs an assessed task");
  return *task.assessed == DifficultyLabel::Low ? menu.low : menu.high;
}

void settle_payments(std::span<const AigcTask> tasks, std::span<TaskOutcome> outcomes, const ContractMenu& menu,
                     const ContractBundle& pooled, Benchmark benchmark, const ContractParams& params,
                     WithheldUtility withheld) {
  for (auto& out : outcomes) {
    const auto it = std::find_if(tasks.begin(), tasks.end(), [&](const AigcTask& t) { return t.id == out.task_id; });
    if (it == tasks.end()) throw std::logic_error("outcome for unknown task " + std::to_string(out.task_id));
    const ContractBundle& bundle = selected_bundle(*it, benchmark, menu, pooled);
    const Settlement s = settle_payment(it->latent_type, out.realized_score, bundle, params, withheld);
    out.payment = s.payment;
    out.teleop_utility = s.teleop_utility;
    out.edge_utility = s.edge_utility;
  }
}

AssessmentContext AssessmentContext::load(const AssessorConfig& config, std::span<const Benchmark> benchmarks) {
  AssessmentContext context;
  if (std::find(benchmarks.begin(), benchmarks.end(), Benchmark::VlmContract) == benchmarks.end()) {
    return context;
  }
  if (config.vlm_mode == VlmMode::Replay) {
    if (config.vlm_labels.empty()) throw ConfigError("VLM_Contract in replay mode needs [assessor] vlm_labels");
    context.replay = std::make_shared<const LabelReplay>(LabelReplay::load(config.vlm_labels));
  } else {
    context.endpoint = config.vlm_endpoint;
    if (context.endpoint.empty()) {
      if (const char* env = std::getenv("VLM_ENDPOINT")) context.endpoint = env;
    }
    if (context.endpoint.empty()) {
      throw ConfigError("VLM_Contract in live mode needs [assessor] vlm_endpoint or VLM_ENDPOINT");
    }
    if (!config.vlm_prompt.empty()) context.prompt = load_prompt_template(config.vlm_prompt);
  }
  return context;
}

DifficultyLabel oracle_label(const AigcTask& task, OracleRule rule, const ContractMenu& menu,
                             const ContractParams& params) {
  switch (rule) {
    case OracleRule::Threshold: return oracle_assess_routed(task.realized, params);
    case OracleRule::Comparison:
      return realized_comparison_assess(task.realized, menu, params, PriceVariant::Corrected);
    case OracleRule::ComparisonLiteral:
      return realized_comparison_assess(task.realized, menu, params, PriceVariant::Literal);
  }
  return DifficultyLabel::High;
}

int assess_tasks(std::vector<AigcTask>& tasks, Benchmark benchmark, const ScenarioConfig& config,
                 const ContractMenu& menu, const AssessmentContext& context, Rng& rng,
                 std::vector<bool>* fallbacks) {
  if (fallbacks) fallbacks->assign(tasks.size(), false);
  if (benchmark == Benchmark::NoContract) return 0;

  AssessorKind vlm_source = OracleAssessor{};
  if (benchmark == Benchmark::VlmContract) {
    if (config.assessor.vlm_mode == VlmMode::Replay) {
      vlm_source = VlmReplay{context.replay};
    } else {
      vlm_source = VlmLive{context.endpoint, context.prompt, config.assessor.vlm_timeout_s};
    }
  }

  int fallback_count = 0;
  for (std::size_t n = 0; n < tasks.size(); ++n) {
    AigcTask& task = tasks[n];
    DifficultyLabel label = DifficultyLabel::High;
    switch (benchmark) {
      case Benchmark::OracleContract:
        label = oracle_label(task, config.assessor.oracle_rule, menu, config.contract);
        break;
      case Benchmark::HumanContract: {
        const DifficultyLabel truth =
            config.assessor.human_truth == HumanTruth::Oracle
                ? oracle_label(task, config.assessor.oracle_rule, menu, config.contract)
                : (task.latent_type == TaskType::Low ? DifficultyLabel::Low : DifficultyLabel::High);
        label = noisy_human_assess(truth, config.assessor.human_epsilon, rng);
        break;
      }
      case Benchmark::VlmContract: {
        const VlmAssessment result = vlm_assess(task.id, vlm_source);
        label = result.label;
        if (result.fell_back) {
          ++fallback_count;
          if (fallbacks) (*fallbacks)[n] = true;
          std::clog << "warning: task " << task.id << " assessed as 2 after VLM failure: " << result.error << '\n';
        }
        break;
      }
      case Benchmark::NoContract: break;
    }
    assign_label(task, label);
  }
  return fallback_count;
}

RunRecord run_scenario(const ScenarioConfig& config, Benchmark benchmark, int repeat_index,
                       const AssessmentContext& context, bool verbose) {
  config.validate();
  RunRecord record;
  record.benchmark = benchmark;
  record.repeat = repeat_index;
  record.seed = repeat_seed(config.seed, repeat_index);
  record.num_tasks = config.topology.num_tasks;
  record.num_servers = config.topology.num_servers;

  // One stream in a fixed order: topology, tasks, then assessment noise.
  Rng rng(record.seed);
  const Topology topo = build_topology(config.topology, config.perf, config.contract, rng);
  std::vector<AigcTask> tasks =
      sample_tasks(config.topology.num_tasks, config.topology.num_gateways, config.perf, config.contract, rng);

  const ContractMenu menu = benchmark == Benchmark::NoContract ? ContractMenu{} : solve_contract(config.contract);
  const ContractBundle pooled = solve_pooled_contract(config.contract);

  std::vector<bool> fallbacks;
  record.assessment_fallbacks = assess_tasks(tasks, benchmark, config, menu, context, rng, &fallbacks);

  const FeasibilityMode mode =
      benchmark == Benchmark::NoContract ? FeasibilityMode::Unrestricted : FeasibilityMode::ByLabel;
  Allocation allocation =
      allocate(config.allocator.solver, tasks, topo, config.allocator.deadline, config.allocator.weights, mode);
  settle_payments(tasks, allocation.outcomes, menu, pooled, benchmark, config.contract, config.withheld_utility);

  record.metrics = completion_metrics(allocation.outcomes, config.allocator.deadline, config.allocator.weights);
  // delta_c is a per-run constant of the edge utility, not a per-task payment.
  record.metrics.mean_edge_utility += config.contract.delta_c;

  if (verbose) {
    record.ledger.reserve(tasks.size());
    for (std::size_t n = 0; n < tasks.size(); ++n) {
      // Outcomes come back in id order and sample_tasks numbers tasks 0..N-1.
      record.ledger.push_back({tasks[n].id, tasks[n].latent_type, tasks[n].assessed, fallbacks[n],
                               allocation.outcomes[n]});
    }
  }
  return record;
}

RunRecord run_scenario(const ScenarioConfig& config, Benchmark benchmark, int repeat_index, bool verbose) {
  const Benchmark one[] = {benchmark};
  return run_scenario(config, benchmark, repeat_index, AssessmentContext::load(config.assessor, one), verbose);
}

std::vector<PointSummary> summarize(std::span<const RunRecord> runs) {
  struct Group {
    PointSummary point;
    std::vector<double> completion, response, objective, teleop, edge;
  };
  std::vector<Group> groups;
  for (const auto& run : runs) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.point.benchmark == run.benchmark && g.point.axis == run.axis && g.point.sweep_value == run.sweep_value;
    });
    if (it == groups.end()) {
      Group g;
      g.point.benchmark = run.benchmark;
      g.point.axis = run.axis;
      g.point.sweep_value = run.sweep_value;
      groups.push_back(std::move(g));
      it = std::prev(groups.end());
    }
    it->completion.push_back(run.metrics.completion_rate);
    it->response.push_back(run.metrics.mean_response);
    it->objective.push_back(run.metrics.objective);
    it->teleop.push_back(run.metrics.mean_teleop_utility);
    it->edge.push_back(run.metrics.mean_edge_utility);
  }

  std::vector<PointSummary> out;
  out.reserve(groups.size());
  for (auto& g : groups) {
    g.point.repeats = static_cast<int>(g.completion.size());
    g.point.completion_rate = summarize_metric(g.completion);
    g.point.mean_response = summarize_metric(g.response);
    g.point.objective = summarize_metric(g.objective);
    g.point.mean_teleop_utility = summarize_metric(g.teleop);
    g.point.mean_edge_utility = summarize_metric(g.edge);
    out.push_back(g.point);
  }
  for (auto& point : out) {
    const auto base = std::find_if(out.begin(), out.end(), [&](const PointSummary& p) {
      return p.benchmark == Benchmark::NoContract && p.axis == point.axis && p.sweep_value == point.sweep_value;
    });
    if (base == out.end()) continue;
    point.teleop_gain_pct = gain_pct(point.mean_teleop_utility.mean, base->mean_teleop_utility.mean);
    point.edge_gain_pct = gain_pct(point.mean_edge_utility.mean, base->mean_edge_utility.mean);
  }
  return out;
}

ScenarioResult run_sweep(const ScenarioConfig& config, SweepAxis axis, std::span<const int> values,
                         std::span<const Benchmark> benchmarks, bool verbose) {
  config.validate();
  if (benchmarks.empty()) throw ConfigError("sweep needs at least one benchmark");
  if (axis != SweepAxis::None && values.empty()) throw ConfigError("sweep needs at least one value");

  const AssessmentContext context = AssessmentContext::load(config.assessor, benchmarks);
  ScenarioResult result;
  result.config = config;
  result.config.sweep.axis = axis;
  result.config.sweep.values.assign(values.begin(), values.end());
  result.config.sweep.benchmarks.assign(benchmarks.begin(), benchmarks.end());

  const std::vector<int> points = axis == SweepAxis::None ? std::vector<int>{0}
                                                          : std::vector<int>(values.begin(), values.end());
  for (int value : points) {
    ScenarioConfig point = config;
    if (axis == SweepAxis::Servers) point.topology.num_servers = value;
    if (axis == SweepAxis::Tasks) point.topology.num_tasks = value;
    for (Benchmark benchmark : benchmarks) {
      for (int r = 0; r < config.repeats; ++r) {
        RunRecord run = run_scenario(point, benchmark, r, context, verbose);
        run.axis = axis;
        run.sweep_value = value;
        result.runs.push_back(std::move(run));
      }
    }
  }
  result.summary = summarize(result.runs);
  return result;
}

ScenarioResult run_simulation(const ScenarioConfig& config, Benchmark benchmark, bool verbose) {
  const Benchmark one[] = {benchmark};
  return run_sweep(config, SweepAxis::None, {}, one, verbose);
}

}  // namespace edgecontract
