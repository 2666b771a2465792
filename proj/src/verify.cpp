#include "edgecontract/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "edgecontract/errors.hpp"
#include "edgecontract/perf_model.hpp"

namespace edgecontract {

namespace {

int count_components(const LabelGrid& grid, DifficultyLabel label) {
  const std::size_t n = grid.size();
  std::vector<char> seen(n * n, 0);
  int components = 0;
  for (std::size_t start = 0; start < n * n; ++start) {
    if (seen[start] || grid.labels[start] != label) continue;
    ++components;
    std::deque<std::size_t> frontier{start};
    seen[start] = 1;
    while (!frontier.empty()) {
      const std::size_t cell = frontier.front();
      frontier.pop_front();
      const std::size_t i = cell / n;
      const std::size_t j = cell % n;
      const std::size_t next[4] = {i > 0 ? cell - n : cell, i + 1 < n ? cell + n : cell, j > 0 ? cell - 1 : cell,
                                   j + 1 < n ? cell + 1 : cell};
      for (std::size_t k : next) {
        if (!seen[k] && grid.labels[k] == label) {
          seen[k] = 1;
          frontier.push_back(k);
        }
      }
    }
  }
  return components;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

}  // namespace

LabelGrid assessment_grid(const ContractParams& params, double lo, double hi, int points) {
  if (points < 1 || !(hi > lo)) throw InvalidParams("assessment grid needs points >= 1 and hi > lo");
  LabelGrid grid;
  const auto n = static_cast<std::size_t>(points);
  grid.axis.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    grid.axis[k] = lo + static_cast<double>(k + 1) * (hi - lo) / static_cast<double>(points);
  }
  grid.threshold.resize(n * n);
  grid.labels.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RealizedPerformance rp{grid.axis[i], grid.axis[j]};
      grid.threshold[i * n + j] = assignment_threshold(rp, params);
      grid.labels[i * n + j] = oracle_assess(rp, params);
    }
  }
  return grid;
}

bool label_grid_island_free(const LabelGrid& grid) {
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (grid.at(i, j) != DifficultyLabel::Low) continue;
      if (i + 1 < n && grid.at(i + 1, j) != DifficultyLabel::Low) return false;
      if (j > 0 && grid.at(i, j - 1) != DifficultyLabel::Low) return false;
    }
  }
  return count_components(grid, DifficultyLabel::Low) <= 1 && count_components(grid, DifficultyLabel::High) <= 1;
}

AllocationInstance random_allocation_instance(Rng& rng, int max_tasks, int max_servers, int max_gateways) {
  const int num_tasks = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_tasks)));
  const int num_servers = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_servers)));
  const int num_gateways = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_gateways)));

  std::vector<EdgeServer> servers;
  bool has_small = false;
  bool has_large = false;
  for (int m = 0; m < num_servers; ++m) {
    const ModelClass cls = rng.bernoulli(0.5) ? ModelClass::Small : ModelClass::Large;
    (cls == ModelClass::Small ? has_small : has_large) = true;
    servers.push_back({m, cls, 1.0 / rng.uniform(0.11737, 0.28326)});
  }
  std::vector<Link> links;
  for (int g = 0; g < num_gateways; ++g) {
    for (int m = 0; m < num_servers; ++m) {
      links.push_back({g, m, rng.uniform(0.001, 0.003), rng.uniform(5e6, 100e6)});
    }
  }

  AllocationInstance instance;
  for (int n = 0; n < num_tasks; ++n) {
    AigcTask task;
    task.id = n;
    task.payload_bits = 1e6;
    task.compute_demand = 1.0;
    task.gateway_id = static_cast<int>(rng.index(static_cast<std::size_t>(num_gateways)));
    DifficultyLabel label = rng.bernoulli(0.5) ? DifficultyLabel::Low : DifficultyLabel::High;
    if (label == DifficultyLabel::Low && !has_small) label = DifficultyLabel::High;
    if (label == DifficultyLabel::High && !has_large) label = DifficultyLabel::Low;
    task.assessed = label;
    task.latent_type = label == DifficultyLabel::Low ? TaskType::Low : TaskType::High;
    task.realized = {1.5, 1.6};
    instance.tasks.push_back(task);
  }
  instance.topology = Topology::direct(num_gateways, std::move(servers), links);
  return instance;
}

AllocationInstance symmetric_allocation_instance(int tasks, int servers, double compute_time, double prop_delay,
                                                 double bandwidth) {
  std::vector<EdgeServer> nodes;
  std::vector<Link> links;
  for (int m = 0; m < servers; ++m) {
    nodes.push_back({m, ModelClass::Large, 1.0 / compute_time});
    links.push_back({0, m, prop_delay, bandwidth});
  }
  AllocationInstance instance;
  for (int n = 0; n < tasks; ++n) {
    AigcTask task;
    task.id = n;
    task.payload_bits = 1e6;
    task.compute_demand = 1.0;
    task.assessed = DifficultyLabel::High;
    task.latent_type = TaskType::High;
    task.realized = {1.5, 1.6};
    instance.tasks.push_back(task);
  }
  instance.topology = Topology::direct(1, std::move(nodes), links);
  return instance;
}

namespace {

ContractParams random_params_once(Rng& rng) {
  ContractParams p;
  p.theta_low = rng.uniform(0.5, 2.0);
  p.theta_high = p.theta_low * (1.0 + rng.uniform(0.05, 1.5));
  p.beta_high = rng.uniform(0.02, std::min(0.95, 0.95 * p.theta_low / p.theta_high));
  p.beta_low = 1.0 - p.beta_high;
  p.eta1 = rng.uniform(1.0, 10.0);
  p.eta3 = p.eta1 * rng.uniform(0.05, 0.9);
  p.eta2 = rng.uniform(5.0, 500.0);
  p.perf_threshold = rng.uniform(0.2, 2.0);
  p.perf_expected = p.perf_threshold + rng.uniform(0.01, 1.0);
  p.delta_c = rng.uniform(0.0, 20.0);
  return p;
}

}  // namespace

ContractParams random_admissible_params(Rng& rng) {
  for (;;) {
    ContractParams p = random_params_once(rng);
    if (p.admissible()) return p;
  }
}

std::vector<CheckResult> run_verification(const ContractParams& params, std::uint64_t seed) {
  std::vector<CheckResult> checks;
  Rng rng(seed);

  {
    CheckResult c{"closed form matches grid oracle (step 1e-4)", false, {}};
    const ContractMenu menu = solve_contract(params);
    const ContractMenu grid =
        grid_search_oracle(params, {params.perf_threshold + 1e-3, params.perf_threshold + 1.0}, 1e-4);
    const double gap = expected_system_utility(menu, params) - expected_system_utility(grid, params);
    const double perf_gap = std::max(std::abs(menu.low.perf - grid.low.perf), std::abs(menu.high.perf - grid.high.perf));
    c.passed = gap >= -1e-3 && std::abs(gap) <= 1e-3 && perf_gap <= 1e-3;
    c.detail = "utility gap " + fmt(gap) + ", perf gap " + fmt(perf_gap);
    checks.push_back(c);
  }
  {
    CheckResult c{"closed form binds low IR and high IC", false, {}};
    const FeasibilityReport r = verify_feasibility(solve_contract(params), params, kClosedFormTolerance);
    c.passed = r.feasible && r.low_ir_binding && r.high_ic_binding && r.ir_high > 0.0;
    c.detail = "ir_L " + fmt(r.ir_low) + ", ic_H " + fmt(r.ic_high) + ", information rent " + fmt(r.ir_high);
    checks.push_back(c);
  }
  {
    CheckResult c{"IR/IC and screening monotonicity over 200 random draws", true, {}};
    int failures = 0;
    for (int k = 0; k < 200; ++k) {
      const ContractParams p = random_admissible_params(rng);
      const ContractMenu m = solve_contract(p);
      const FeasibilityReport r = verify_feasibility(m, p, 1e-8);
      const bool ok = std::abs(r.ir_low) <= 1e-8 && std::abs(r.ic_high) <= 1e-8 && r.ir_high > 0.0 &&
                      r.ic_low >= 0.0 && m.high.perf > m.low.perf && m.high.price > m.low.price;
      if (!ok) ++failures;
    }
    c.passed = failures == 0;
    c.detail = std::to_string(failures) + " failing draws";
    checks.push_back(c);
  }
  {
    CheckResult c{"assignment grid over (I_r1, I_r1 + 1] is island-free", false, {}};
    const LabelGrid grid = assessment_grid(params, params.perf_threshold, params.perf_threshold + 1.0, 100);
    const LabelGrid again = assessment_grid(params, params.perf_threshold, params.perf_threshold + 1.0, 100);
    const auto low_count = std::count(grid.labels.begin(), grid.labels.end(), DifficultyLabel::Low);
    c.passed = label_grid_island_free(grid) && grid.labels == again.labels;
    c.detail = std::to_string(low_count) + " of " + std::to_string(grid.labels.size()) + " cells labeled 1";
    checks.push_back(c);
  }
  {
    CheckResult c{"greedy allocation vs exhaustive enumeration (100 instances)", true, {}};
    const Weights weights{1.0, 1.0};
    double gap_sum = 0.0;
    int violations = 0;
    for (int k = 0; k < 100; ++k) {
      const AllocationInstance inst = random_allocation_instance(rng, 6, 3, 2);
      const double greedy =
          completion_metrics(allocate_greedy(inst.tasks, inst.topology, 1.0, weights).outcomes, 1.0, weights).objective;
      const double exact =
          completion_metrics(allocate_bruteforce(inst.tasks, inst.topology, 1.0, weights).outcomes, 1.0, weights)
              .objective;
      if (exact > greedy) ++violations;
      gap_sum += greedy - exact;
    }
    c.passed = violations == 0;
    c.detail = "mean objective gap " + fmt(gap_sum / 100.0) + ", " + std::to_string(violations) + " violations";
    checks.push_back(c);
  }
  {
    CheckResult c{"oracle vs realized-comparison agreement (logged)", true, {}};
    if (params.admissible()) {
      const ContractMenu menu = solve_contract(params);
      const PerfModelConfig perf;
      int agree = 0;
      int total = 0;
      for (int k = 0; k < 1000; ++k) {
        const AigcTask task = sample_task(k, perf, params, rng);
        if (!(task.realized.score_low > params.perf_threshold)) continue;
        ++total;
        if (oracle_assess_routed(task.realized, params) == realized_comparison_assess(task.realized, menu, params)) {
          ++agree;
        }
      }
      c.detail = "agreement " + fmt(total ? static_cast<double>(agree) / total : 0.0) + " over " +
                 std::to_string(total) + " tasks";
    }
    checks.push_back(c);
  }
  return checks;
}

}  // namespace edgecontract
