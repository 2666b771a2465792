#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "edgecontract/config.hpp"
#include "edgecontract/errors.hpp"
#include "edgecontract/export.hpp"
#include "edgecontract/harness.hpp"
#include "edgecontract/verify.hpp"

namespace ec = edgecontract;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "results";
  std::string format = "csv";
  std::string benchmark;
  bool verbose = false;
};

ec::ScenarioConfig load(const Options& opt) {
  ec::ScenarioConfig cfg = opt.config.empty() ? ec::ScenarioConfig{} : ec::load_config(opt.config);
  if (opt.seed) cfg.seed = *opt.seed;
  return cfg;
}

void report_written(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) std::cout << "wrote " << p.string() << '\n';
}

void print_summary(const ec::ScenarioResult& result) {
  for (const auto& p : result.summary) {
    std::cout << ec::to_string(p.benchmark);
    if (p.axis != ec::SweepAxis::None) std::cout << ' ' << ec::to_string(p.axis) << '=' << p.sweep_value;
    std::cout << ": completion " << p.completion_rate.mean << ", response " << p.mean_response.mean
              << " s, teleop " << p.mean_teleop_utility.mean << ", edge " << p.mean_edge_utility.mean;
    if (p.teleop_gain_pct) std::cout << ", teleop gain " << *p.teleop_gain_pct << '%';
    std::cout << '\n';
  }
}

nlohmann::json bundle_json(const ec::ContractBundle& b) { return {{"price", b.price}, {"perf", b.perf}}; }

int contract_solve(const Options& opt) {
  const ec::ScenarioConfig cfg = load(opt);
  const ec::ContractMenu menu = ec::solve_contract(cfg.contract);
  const ec::ContractBundle pooled = ec::solve_pooled_contract(cfg.contract);
  const ec::FeasibilityReport r = ec::verify_feasibility(menu, cfg.contract, ec::kClosedFormTolerance);
  const double esu = ec::expected_system_utility(menu, cfg.contract);

  const auto fmt = ec::parse_export_format(opt.format);
  if (fmt == ec::ExportFormat::Json) {
    nlohmann::json doc = {{"low", bundle_json(menu.low)},
                          {"high", bundle_json(menu.high)},
                          {"pooled", bundle_json(pooled)},
                          {"expected_system_utility", esu},
                          {"feasibility",
                           {{"ir_low", r.ir_low},
                            {"ir_high", r.ir_high},
                            {"ic_low", r.ic_low},
                            {"ic_high", r.ic_high},
                            {"feasible", r.feasible},
                            {"low_ir_binding", r.low_ir_binding},
                            {"high_ic_binding", r.high_ic_binding}}}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "bundle,perf,price\n"
              << "low," << ec::format_double(menu.low.perf) << ',' << ec::format_double(menu.low.price) << '\n'
              << "high," << ec::format_double(menu.high.perf) << ',' << ec::format_double(menu.high.price) << '\n'
              << "pooled," << ec::format_double(pooled.perf) << ',' << ec::format_double(pooled.price) << '\n';
    std::cout << "\nexpected system utility " << ec::format_double(esu) << '\n'
              << "IR_L " << r.ir_low << "  IR_H " << r.ir_high << "  IC_L " << r.ic_low << "  IC_H " << r.ic_high
              << '\n'
              << "feasible " << std::boolalpha << r.feasible << ", low IR binding " << r.low_ir_binding
              << ", high IC binding " << r.high_ic_binding << '\n';
  }
  return r.feasible ? 0 : 1;
}

int verify(const Options& opt) {
  const ec::ScenarioConfig cfg = load(opt);
  bool ok = true;
  for (const auto& c : ec::run_verification(cfg.contract, cfg.seed)) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
    std::cout << '\n';
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

int simulate(const Options& opt) {
  const ec::ScenarioConfig cfg = load(opt);
  const ec::Benchmark bench =
      opt.benchmark.empty() ? ec::Benchmark::OracleContract : ec::parse_benchmark(opt.benchmark);
  const ec::ScenarioResult result = ec::run_simulation(cfg, bench, opt.verbose);
  print_summary(result);
  report_written(ec::export_results(result, opt.out, ec::parse_export_format(opt.format)));
  return 0;
}

int sweep(const Options& opt) {
  const ec::ScenarioConfig cfg = load(opt);
  std::vector<ec::Benchmark> benchmarks = cfg.sweep.benchmarks;
  if (!opt.benchmark.empty()) benchmarks = {ec::parse_benchmark(opt.benchmark)};
  const ec::ScenarioResult result = ec::run_sweep(cfg, cfg.sweep.axis, cfg.sweep.values, benchmarks, opt.verbose);
  print_summary(result);
  report_written(ec::export_results(result, opt.out, ec::parse_export_format(opt.format)));
  return 0;
}

int assess_grid(const Options& opt, int points) {
  const ec::ScenarioConfig cfg = load(opt);
  const double lo = cfg.contract.perf_threshold;
  const ec::LabelGrid grid = ec::assessment_grid(cfg.contract, lo, lo + 1.0, points);
  const bool island_free = ec::label_grid_island_free(grid);

  const auto fmt = ec::parse_export_format(opt.format);
  std::filesystem::create_directories(opt.out);
  const std::filesystem::path path =
      std::filesystem::path(opt.out) / (fmt == ec::ExportFormat::Json ? "assess_grid.json" : "assess_grid.csv");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ec::IoError("cannot open " + path.string() + " for writing");
  const std::size_t n = grid.size();
  if (fmt == ec::ExportFormat::Json) {
    nlohmann::json cells = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        cells.push_back({{"score_low", grid.axis[i]},
                         {"score_high", grid.axis[j]},
                         {"threshold", grid.threshold[i * n + j]},
                         {"label", ec::to_int(grid.at(i, j))}});
      }
    }
    out << nlohmann::json{{"island_free", island_free}, {"cells", cells}}.dump(2) << '\n';
  } else {
    out << "score_low,score_high,threshold,label\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out << ec::format_double(grid.axis[i]) << ',' << ec::format_double(grid.axis[j]) << ','
            << ec::format_double(grid.threshold[i * n + j]) << ',' << ec::to_int(grid.at(i, j)) << '\n';
      }
    }
  }
  if (!out) throw ec::IoError("write failed for " + path.string());
  std::cout << "wrote " << path.string() << '\n'
            << n << 'x' << n << " grid, island-free: " << std::boolalpha << island_free << '\n';
  return island_free ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contract-based AIGC task offloading simulator"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config, "Scenario INI file")->check(CLI::ExistingFile);
  app.add_option("--seed", opt.seed, "Base seed (overrides [sweep] seed)");
  app.add_option("--out", opt.out, "Output directory")->capture_default_str();
  app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--benchmark", opt.benchmark, "No_Contract, Human_Contract, Oracle_Contract or VLM_Contract");
  app.add_flag("--verbose", opt.verbose, "Per-task ledger in JSON output");

  int grid_points = 100;
  auto* solve_cmd = app.add_subcommand("contract-solve", "Print the optimal menu and its feasibility report");
  auto* verify_cmd = app.add_subcommand("verify", "Run oracle-equivalence and invariant checks");
  auto* simulate_cmd = app.add_subcommand("simulate", "One scenario, one benchmark, all repeats");
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep servers or tasks across benchmarks");
  auto* grid_cmd = app.add_subcommand("assess-grid", "Label grid over realized scores");
  grid_cmd->add_option("--points", grid_points, "Grid points per axis")->check(CLI::PositiveNumber);
  for (auto* sub : {solve_cmd, verify_cmd, simulate_cmd, sweep_cmd, grid_cmd}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return contract_solve(opt);
    if (*verify_cmd) return verify(opt);
    if (*simulate_cmd) return simulate(opt);
    if (*sweep_cmd) return sweep(opt);
    if (*grid_cmd) return assess_grid(opt, grid_points);
  } catch (const ec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
