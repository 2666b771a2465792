#include "edgecontract/export.hpp"

#include <fstream>
#include <sstream>

#include "edgecontract/config.hpp"
#include "edgecontract/errors.hpp"

namespace edgecontract {

NLOHMANN_JSON_SERIALIZE_ENUM(Benchmark, {{Benchmark::NoContract, "No_Contract"},
                                         {Benchmark::HumanContract, "Human_Contract"},
                                         {Benchmark::OracleContract, "Oracle_Contract"},
                                         {Benchmark::VlmContract, "VLM_Contract"}})
NLOHMANN_JSON_SERIALIZE_ENUM(SweepAxis, {{SweepAxis::None, "none"},
                                         {SweepAxis::Servers, "servers"},
                                         {SweepAxis::Tasks, "tasks"}})
NLOHMANN_JSON_SERIALIZE_ENUM(TaskType, {{TaskType::Low, "L"}, {TaskType::High, "H"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Solver, {{Solver::Greedy, "greedy"}, {Solver::BruteForce, "bruteforce"}})
NLOHMANN_JSON_SERIALIZE_ENUM(WithheldUtility, {{WithheldUtility::Reservation, "reservation"},
                                               {WithheldUtility::Gross, "gross"}})
NLOHMANN_JSON_SERIALIZE_ENUM(HumanTruth, {{HumanTruth::Oracle, "oracle"}, {HumanTruth::Latent, "latent"}})
NLOHMANN_JSON_SERIALIZE_ENUM(OracleRule, {{OracleRule::Threshold, "threshold"},
                                          {OracleRule::Comparison, "comparison"},
                                          {OracleRule::ComparisonLiteral, "comparison-literal"}})
NLOHMANN_JSON_SERIALIZE_ENUM(VlmMode, {{VlmMode::Replay, "replay"}, {VlmMode::Live, "live"}})

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ContractParams, theta_low, theta_high, beta_low, beta_high, eta1, eta2, eta3,
                                   perf_threshold, perf_expected, delta_c, utility_floor)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ScoreInterval, low, high)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PerfModelConfig, score_low_easy, score_low_hard, score_high, payload_bits,
                                   compute_demand)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TopologyConfig, num_tasks, num_servers, num_gateways, compute_time_min,
                                   compute_time_max, prop_delay_min, prop_delay_max, bandwidth_min, bandwidth_max,
                                   small_servers)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Weights, completion, response)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AllocatorConfig, deadline, weights, solver)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AssessorConfig, human_epsilon, human_truth, oracle_rule, vlm_mode, vlm_labels,
                                   vlm_prompt, vlm_endpoint, vlm_timeout_s)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SweepConfig, axis, values, benchmarks)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ScenarioConfig, contract, withheld_utility, perf, topology, allocator, assessor,
                                   sweep, repeats, seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AllocMetrics, completion_rate, mean_response, objective, mean_teleop_utility,
                                   mean_edge_utility)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TaskOutcome, task_id, server_id, t_transmit, t_compute, t_queue, t_total, on_time,
                                   realized_score, payment, teleop_utility, edge_utility)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MetricSummary, mean, stddev)

namespace {

nlohmann::json optional_number(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

std::optional<double> read_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string gain_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

void to_json(nlohmann::json& j, const TaskLedgerEntry& e) {
  j = {{"task_id", e.task_id},
       {"latent_type", e.latent_type},
       {"label", e.label ? nlohmann::json(to_int(*e.label)) : nlohmann::json()},
       {"assessment_fallback", e.assessment_fallback},
       {"outcome", e.outcome}};
}

void from_json(const nlohmann::json& j, TaskLedgerEntry& e) {
  j.at("task_id").get_to(e.task_id);
  j.at("latent_type").get_to(e.latent_type);
  e.label = j.at("label").is_null() ? std::nullopt : std::optional(label_from_int(j.at("label").get<int>()));
  j.at("assessment_fallback").get_to(e.assessment_fallback);
  j.at("outcome").get_to(e.outcome);
}

void to_json(nlohmann::json& j, const RunRecord& r) {
  j = {{"benchmark", r.benchmark},
       {"sweep_axis", r.axis},
       {"sweep_value", r.sweep_value},
       {"repeat", r.repeat},
       {"seed", r.seed},
       {"num_tasks", r.num_tasks},
       {"num_servers", r.num_servers},
       {"metrics", r.metrics},
       {"assessment_fallbacks", r.assessment_fallbacks},
       {"ledger", r.ledger}};
}

void from_json(const nlohmann::json& j, RunRecord& r) {
  j.at("benchmark").get_to(r.benchmark);
  j.at("sweep_axis").get_to(r.axis);
  j.at("sweep_value").get_to(r.sweep_value);
  j.at("repeat").get_to(r.repeat);
  j.at("seed").get_to(r.seed);
  j.at("num_tasks").get_to(r.num_tasks);
  j.at("num_servers").get_to(r.num_servers);
  j.at("metrics").get_to(r.metrics);
  j.at("assessment_fallbacks").get_to(r.assessment_fallbacks);
  j.at("ledger").get_to(r.ledger);
}

void to_json(nlohmann::json& j, const PointSummary& p) {
  j = {{"benchmark", p.benchmark},
       {"sweep_axis", p.axis},
       {"sweep_value", p.sweep_value},
       {"repeats", p.repeats},
       {"completion_rate", p.completion_rate},
       {"mean_response_s", p.mean_response},
       {"objective", p.objective},
       {"mean_teleop_utility", p.mean_teleop_utility},
       {"mean_edge_utility", p.mean_edge_utility},
       {"teleop_gain_pct", optional_number(p.teleop_gain_pct)},
       {"edge_gain_pct", optional_number(p.edge_gain_pct)}};
}

void from_json(const nlohmann::json& j, PointSummary& p) {
  j.at("benchmark").get_to(p.benchmark);
  j.at("sweep_axis").get_to(p.axis);
  j.at("sweep_value").get_to(p.sweep_value);
  j.at("repeats").get_to(p.repeats);
  j.at("completion_rate").get_to(p.completion_rate);
  j.at("mean_response_s").get_to(p.mean_response);
  j.at("objective").get_to(p.objective);
  j.at("mean_teleop_utility").get_to(p.mean_teleop_utility);
  j.at("mean_edge_utility").get_to(p.mean_edge_utility);
  p.teleop_gain_pct = read_optional(j, "teleop_gain_pct");
  p.edge_gain_pct = read_optional(j, "edge_gain_pct");
}

ExportFormat parse_export_format(std::string_view text) {
  if (text == "csv") return ExportFormat::Csv;
  if (text == "json") return ExportFormat::Json;
  throw ConfigError("unknown output format '" + std::string(text) + "' (csv or json)");
}

void write_results_csv(const ScenarioResult& result, std::ostream& out) {
  out << "benchmark,sweep_axis,sweep_value,repeat,seed,completion_rate,mean_response_s,objective,"
         "mean_teleop_utility,mean_edge_utility\n";
  for (const auto& run : result.runs) {
    out << to_string(run.benchmark) << ',' << to_string(run.axis) << ',' << run.sweep_value << ',' << run.repeat
        << ',' << run.seed << ',' << format_double(run.metrics.completion_rate) << ','
        << format_double(run.metrics.mean_response) << ',' << format_double(run.metrics.objective) << ','
        << format_double(run.metrics.mean_teleop_utility) << ',' << format_double(run.metrics.mean_edge_utility)
        << '\n';
  }
}

void write_aggregate_csv(const ScenarioResult& result, std::ostream& out) {
  out << "benchmark,sweep_axis,sweep_value,repeats,completion_rate_mean,completion_rate_std,mean_response_s_mean,"
         "mean_response_s_std,objective_mean,objective_std,mean_teleop_utility_mean,mean_teleop_utility_std,"
         "mean_edge_utility_mean,mean_edge_utility_std,teleop_gain_vs_no_contract_pct,"
         "edge_gain_vs_no_contract_pct\n";
  for (const auto& p : result.summary) {
    out << to_string(p.benchmark) << ',' << to_string(p.axis) << ',' << p.sweep_value << ',' << p.repeats;
    for (const MetricSummary* m :
         {&p.completion_rate, &p.mean_response, &p.objective, &p.mean_teleop_utility, &p.mean_edge_utility}) {
      out << ',' << format_double(m->mean) << ',' << format_double(m->stddev);
    }
    out << ',' << gain_cell(p.teleop_gain_pct) << ',' << gain_cell(p.edge_gain_pct) << '\n';
  }
}

nlohmann::json to_json(const ScenarioResult& result) {
  return {{"config", result.config}, {"runs", result.runs}, {"summary", result.summary}};
}

ScenarioResult scenario_result_from_json(const nlohmann::json& doc) {
  ScenarioResult result;
  doc.at("config").get_to(result.config);
  doc.at("runs").get_to(result.runs);
  doc.at("summary").get_to(result.summary);
  return result;
}

std::vector<std::filesystem::path> export_results(const ScenarioResult& result, const std::filesystem::path& dir,
                                                  ExportFormat format) {
  ensure_dir(dir);
  std::vector<std::filesystem::path> written;
  if (format == ExportFormat::Csv) {
    std::ostringstream rows;
    write_results_csv(result, rows);
    written.push_back(dir / "results.csv");
    write_file(written.back(), rows.str());
  } else {
    written.push_back(dir / "results.json");
    write_file(written.back(), to_json(result).dump(2) + "\n");
  }
  std::ostringstream aggregate;
  write_aggregate_csv(result, aggregate);
  written.push_back(dir / "aggregate.csv");
  write_file(written.back(), aggregate.str());
  return written;
}

}  // namespace edgecontract
