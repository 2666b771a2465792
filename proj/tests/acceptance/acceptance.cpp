#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "edgecontract/allocator.hpp"
#include "edgecontract/assessment.hpp"
#include "edgecontract/config.hpp"
#include "edgecontract/contract.hpp"
#include "edgecontract/export.hpp"
#include "edgecontract/harness.hpp"
#include "edgecontract/verify.hpp"

using namespace edgecontract;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (elapsed > limit_s) {
    out.passed = false;
    out.detail += " [over time limit " + std::to_string(limit_s) + " s]";
  }
  if (!out.passed) ++failures;
  std::printf("%s criterion %d: %s (%.2f s) %s\n", out.passed ? "PASS" : "FAIL", number, name.c_str(), elapsed,
              out.detail.c_str());
  std::fflush(stdout);
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(8);
  s << x;
  return s.str();
}

const PointSummary& point(const ScenarioResult& r, Benchmark b, int value) {
  for (const auto& p : r.summary) {
    if (p.benchmark == b && p.sweep_value == value) return p;
  }
  throw std::runtime_error("missing sweep point");
}

double pooled_sd(const MetricSummary& a, const MetricSummary& b) {
  return std::sqrt((a.stddev * a.stddev + b.stddev * b.stddev) / 2.0);
}

// +1: metric should not decrease along the axis, -1: should not increase.
bool trend_holds(const ScenarioResult& r, Benchmark b, const std::vector<int>& values,
                 MetricSummary PointSummary::*metric, int direction, std::string& detail) {
  bool ok = true;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const MetricSummary& a = point(r, b, values[k]).*metric;
    const MetricSummary& c = point(r, b, values[k + 1]).*metric;
    const double step = direction * (c.mean - a.mean);
    if (step < -pooled_sd(a, c)) {
      ok = false;
      detail += " break at " + std::to_string(values[k]) + "->" + std::to_string(values[k + 1]);
    }
  }
  return ok;
}

std::string series(const ScenarioResult& r, Benchmark b, const std::vector<int>& values,
                   MetricSummary PointSummary::*metric) {
  std::string s = "[";
  for (std::size_t k = 0; k < values.size(); ++k) s += (k ? " " : "") + num((point(r, b, values[k]).*metric).mean);
  return s + "]";
}

ScenarioConfig servers_sweep() {
  ScenarioConfig c;
  c.topology.num_tasks = 200;
  c.allocator.deadline = 1.0;
  c.repeats = 30;
  c.sweep.axis = SweepAxis::Servers;
  c.sweep.values = {20, 25, 30, 35, 40};
  return c;
}

ScenarioConfig tasks_sweep() {
  ScenarioConfig c = servers_sweep();
  c.topology.num_servers = 30;
  c.sweep.axis = SweepAxis::Tasks;
  c.sweep.values = {100, 150, 200, 250, 300};
  return c;
}

}  // namespace

int main() {
  const ContractParams table1;

  criterion(1, "closed form matches the grid oracle", 60.0, [&] {
    const ContractMenu m = solve_contract(table1);
    const ContractMenu g = grid_search_oracle(table1, {1.301, 2.3}, 1e-4);
    const double gap = expected_system_utility(m, table1) - expected_system_utility(g, table1);
    const bool values = std::abs(m.low.perf - 1.39467) <= 1e-4 && std::abs(m.high.perf - 1.65355) <= 1e-4 &&
                        std::abs(m.low.price - 3.1587) <= 1e-3 && std::abs(m.high.price - 5.2811) <= 1e-3;
    const bool oracle = std::abs(gap) <= 1e-3 && std::abs(g.low.perf - m.low.perf) <= 1e-3 &&
                        std::abs(g.high.perf - m.high.perf) <= 1e-3;
    return Outcome{values && oracle, "I_L=" + num(m.low.perf) + " I_H=" + num(m.high.perf) + " p_L=" +
                                         num(m.low.price) + " p_H=" + num(m.high.price) + " utility gap " + num(gap)};
  });

  criterion(2, "IR/IC property suite over 200 draws", 10.0, [&] {
    Rng rng(2024);
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const ContractParams p = random_admissible_params(rng);
      const ContractMenu m = solve_contract(p);
      const FeasibilityReport r = verify_feasibility(m, p, 1e-8);
      worst = std::max({worst, std::abs(r.ir_low), std::abs(r.ic_high)});
      const bool ok = std::abs(r.ir_low) <= 1e-8 && std::abs(r.ic_high) <= 1e-8 && r.ir_high > 0.0 &&
                      r.ic_low >= 0.0 && m.high.perf > m.low.perf && m.high.price > m.low.price;
      bad += !ok;
    }
    return Outcome{bad == 0, std::to_string(bad) + " failing draws, worst binding residual " + num(worst)};
  });

  criterion(3, "assignment rule worked points and island-free grid", 10.0, [&] {
    const double rhs_a = assignment_threshold({1.5, 1.5}, table1);
    const double rhs_b = assignment_threshold({1.35, 1.70}, table1);
    const bool points = oracle_assess({1.5, 1.5}, table1) == DifficultyLabel::Low &&
                        oracle_assess({1.35, 1.70}, table1) == DifficultyLabel::High &&
                        std::abs(rhs_a - 839.8) < 0.05 && std::abs(rhs_b - 1.19) < 0.005;
    const LabelGrid a = assessment_grid(table1, 1.3, 2.3, 100);
    const LabelGrid b = assessment_grid(table1, 1.3, 2.3, 100);
    const bool deterministic = a.labels == b.labels && a.threshold == b.threshold;
    const bool islands = label_grid_island_free(a);
    return Outcome{points && deterministic && islands,
                   "RHS(1.5,1.5)=" + num(rhs_a) + " RHS(1.35,1.70)=" + num(rhs_b) +
                       (deterministic ? ", deterministic" : ", NOT deterministic") +
                       (islands ? ", island-free" : ", islands found")};
  });

  criterion(4, "greedy vs exhaustive allocation", 300.0, [&] {
    const Weights w{1.0, 1.0};
    auto objective = [&](const Allocation& a) { return completion_metrics(a.outcomes, 1.0, w).objective; };
    Rng rng(77);
    int violations = 0;
    double gap = 0.0;
    for (int k = 0; k < 100; ++k) {
      const AllocationInstance inst = random_allocation_instance(rng, 6, 3, 2);
      const double g = objective(allocate_greedy(inst.tasks, inst.topology, 1.0, w));
      const double b = objective(allocate_bruteforce(inst.tasks, inst.topology, 1.0, w));
      violations += b > g;
      gap += g - b;
    }
    int unequal = 0;
    for (int k = 0; k < 30; ++k) {
      const AllocationInstance one = random_allocation_instance(rng, 1, 3, 2);
      unequal += objective(allocate_greedy(one.tasks, one.topology, 1.0, w)) !=
                 objective(allocate_bruteforce(one.tasks, one.topology, 1.0, w));
    }
    for (int n = 1; n <= 6; ++n) {
      for (int m = 1; m <= 3; ++m) {
        const AllocationInstance s = symmetric_allocation_instance(n, m, 0.2, 0.002, 10e6);
        unequal += objective(allocate_greedy(s.tasks, s.topology, 1.0, w)) !=
                   objective(allocate_bruteforce(s.tasks, s.topology, 1.0, w));
      }
    }
    return Outcome{violations == 0 && unequal == 0,
                   "mean gap " + num(gap / 100.0) + ", " + std::to_string(violations) + " violations, " +
                       std::to_string(unequal) + " unequal single/symmetric instances"};
  });

  criterion(5, "latency fixtures", 5.0, [&] {
    const Weights w{1.0, 1.0};
    const AllocationInstance inst = symmetric_allocation_instance(3, 1, 0.2, 0.002, 10e6);
    const Allocation a = allocate_greedy(inst.tasks, inst.topology, 1.0, w);
    const double expected[] = {0.404, 0.604, 0.804};
    bool ok = true;
    std::string got;
    for (int k = 0; k < 3; ++k) {
      ok = ok && std::abs(a.outcomes[k].t_total - expected[k]) <= 1e-12;
      got += num(a.outcomes[k].t_total) + " ";
    }
    ok = ok && completion_metrics(a.outcomes, 1.0, w).completion_rate == 1.0;
    std::vector<TaskOutcome> boundary(1);
    boundary[0].t_total = 1.0;
    const bool strict = completion_metrics(boundary, 1.0, w).completion_rate == 0.0;
    return Outcome{ok && strict, "t_total " + got + (strict ? "; t_total = deadline counts late" : "; boundary wrong")};
  });

  ScenarioResult by_servers;
  ScenarioResult by_tasks;
  const std::vector<Benchmark> benches = {Benchmark::NoContract, Benchmark::HumanContract, Benchmark::OracleContract};

  criterion(6, "latency trends across server and task sweeps", 600.0, [&] {
    const ScenarioConfig sc = servers_sweep();
    const ScenarioConfig tc = tasks_sweep();
    by_servers = run_sweep(sc, sc.sweep.axis, sc.sweep.values, benches);
    by_tasks = run_sweep(tc, tc.sweep.axis, tc.sweep.values, benches);
    std::string detail;
    bool ok = true;
    for (Benchmark b : benches) {
      ok &= trend_holds(by_servers, b, sc.sweep.values, &PointSummary::completion_rate, +1, detail);
      ok &= trend_holds(by_servers, b, sc.sweep.values, &PointSummary::mean_response, -1, detail);
      ok &= trend_holds(by_tasks, b, tc.sweep.values, &PointSummary::completion_rate, -1, detail);
      ok &= trend_holds(by_tasks, b, tc.sweep.values, &PointSummary::mean_response, +1, detail);
    }
    detail += " oracle completion vs M " +
              series(by_servers, Benchmark::OracleContract, sc.sweep.values, &PointSummary::completion_rate) +
              ", response vs N " +
              series(by_tasks, Benchmark::OracleContract, tc.sweep.values, &PointSummary::mean_response);
    return Outcome{ok, detail};
  });

  criterion(7, "contract raises teleoperator utility over No_Contract", 600.0, [&] {
    if (by_servers.summary.empty()) return Outcome{false, "sweeps unavailable"};
    int points = 0;
    int oracle_above = 0;
    int human_between = 0;
    double min_gain = 1e300;
    double max_gain = -1e300;
    for (const ScenarioResult* r : {&by_servers, &by_tasks}) {
      for (int v : r->config.sweep.values) {
        ++points;
        const PointSummary& none = point(*r, Benchmark::NoContract, v);
        const PointSummary& human = point(*r, Benchmark::HumanContract, v);
        const PointSummary& oracle = point(*r, Benchmark::OracleContract, v);
        const double n = none.mean_teleop_utility.mean;
        const double h = human.mean_teleop_utility.mean;
        const double o = oracle.mean_teleop_utility.mean;
        oracle_above += o > n && oracle.teleop_gain_pct && *oracle.teleop_gain_pct > 0.0;
        human_between += n < h && h < o;
        min_gain = std::min(min_gain, *oracle.teleop_gain_pct);
        max_gain = std::max(max_gain, *oracle.teleop_gain_pct);
      }
    }
    std::ostringstream csv;
    write_aggregate_csv(by_servers, csv);
    const bool reported = csv.str().find("teleop_gain_vs_no_contract_pct") != std::string::npos;
    const bool ok = oracle_above == points && human_between * 5 >= points * 4 && reported;
    return Outcome{ok, "oracle above on " + std::to_string(oracle_above) + "/" + std::to_string(points) +
                           ", human between on " + std::to_string(human_between) + "/" + std::to_string(points) +
                           ", oracle gain " + num(min_gain) + "%.." + num(max_gain) + "%"};
  });

  criterion(8, "repeated runs give byte-identical CSV", 600.0, [&] {
    auto render = [](const ScenarioResult& r) {
      std::ostringstream rows;
      std::ostringstream agg;
      write_results_csv(r, rows);
      write_aggregate_csv(r, agg);
      return rows.str() + agg.str();
    };
    ScenarioConfig c;
    c.repeats = 5;
    const std::string sim_a = render(run_simulation(c, Benchmark::OracleContract));
    const std::string sim_b = render(run_simulation(c, Benchmark::OracleContract));
    const ScenarioConfig reloaded = parse_config(format_config(c));
    const std::string sim_c = render(run_simulation(reloaded, Benchmark::OracleContract));
    const std::string sweep_a = render(run_sweep(c, c.sweep.axis, c.sweep.values, c.sweep.benchmarks));
    const std::string sweep_b = render(run_sweep(c, c.sweep.axis, c.sweep.values, c.sweep.benchmarks));
    const bool ok = sim_a == sim_b && sim_a == sim_c && sweep_a == sweep_b;
    return Outcome{ok, "simulate " + std::to_string(sim_a.size()) + " bytes, sweep " +
                           std::to_string(sweep_a.size()) + " bytes, config round-trip included"};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
