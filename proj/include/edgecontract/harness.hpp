#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgecontract/allocator.hpp"
#include "edgecontract/assessment.hpp"
#include "edgecontract/contract.hpp"
#include "edgecontract/netsim.hpp"
#include "edgecontract/perf_model.hpp"

namespace edgecontract {

enum class Benchmark { NoContract, HumanContract, OracleContract, VlmContract };

std::string_view to_string(Benchmark benchmark);
/// Accepts the display names (No_Contract, ...) and short forms (none, human, oracle, vlm), any case.
Benchmark parse_benchmark(std::string_view text);

/// Rule producing the oracle label (also the truth the human benchmark perturbs).
enum class OracleRule { Threshold, Comparison, ComparisonLiteral };

/// What the human benchmark's noise is applied to.
enum class HumanTruth { Oracle, Latent };

/// Teleoperator utility booked when the payment is withheld.
enum class WithheldUtility {
  /// The teleoperator walks away with its reservation utility, zero.
  Reservation,
  /// The teleoperator keeps the quality value without paying.
  Gross,
};

enum class VlmMode { Replay, Live };

enum class SweepAxis { None, Servers, Tasks };

std::string_view to_string(OracleRule rule);
std::string_view to_string(HumanTruth truth);
std::string_view to_string(WithheldUtility mode);
std::string_view to_string(VlmMode mode);
std::string_view to_string(SweepAxis axis);
OracleRule parse_oracle_rule(std::string_view text);
HumanTruth parse_human_truth(std::string_view text);
WithheldUtility parse_withheld_utility(std::string_view text);
VlmMode parse_vlm_mode(std::string_view text);
SweepAxis parse_sweep_axis(std::string_view text);
Solver parse_solver(std::string_view text);

struct AssessorConfig {
  double human_epsilon = kDefaultHumanNoise;
  HumanTruth human_truth = HumanTruth::Oracle;
  OracleRule oracle_rule = OracleRule::Threshold;
  VlmMode vlm_mode = VlmMode::Replay;
  std::string vlm_labels;
  std::string vlm_prompt;
  /// Empty means read VLM_ENDPOINT from the environment.
  std::string vlm_endpoint;
  double vlm_timeout_s = 30.0;

  friend bool operator==(const AssessorConfig&, const AssessorConfig&) = default;
};

struct AllocatorConfig {
  double deadline = 1.0;
  /// Defaults keep both objective terms dimensionless: zeta1 = 1, zeta2 = 1 / deadline.
  Weights weights{1.0, 1.0};
  Solver solver = Solver::Greedy;

  friend bool operator==(const AllocatorConfig&, const AllocatorConfig&) = default;
};

struct SweepConfig {
  SweepAxis axis = SweepAxis::Servers;
  std::vector<int> values{20, 25, 30, 35, 40};
  std::vector<Benchmark> benchmarks{Benchmark::NoContract, Benchmark::HumanContract, Benchmark::OracleContract};

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct ScenarioConfig {
  ContractParams contract;
  WithheldUtility withheld_utility = WithheldUtility::Reservation;
  PerfModelConfig perf;
  TopologyConfig topology;
  AllocatorConfig allocator;
  AssessorConfig assessor;
  SweepConfig sweep;
  int repeats = 30;
  std::uint64_t seed = 20240601;

  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Seed of one repeat: base + repeat_index.
inline std::uint64_t repeat_seed(std::uint64_t base, int repeat_index) {
  return base + static_cast<std::uint64_t>(repeat_index);
}

struct Settlement {
  double payment = 0.0;
  double teleop_utility = 0.0;
  /// Per task, without delta_c.
  double edge_utility = 0.0;
};

/// Settles one task. With negative realized utility the payment is withheld
/// and the edge server still bears eta1 * selected.perf.
Settlement settle_payment(TaskType latent, double realized_score, const ContractBundle& selected,
                          const ContractParams& params, WithheldUtility withheld = WithheldUtility::Reservation);

/// Bundle a task buys: the pooled bundle without a contract, else the bundle of its label.
const ContractBundle& selected_bundle(const AigcTask& task, Benchmark benchmark, const ContractMenu& menu,
                                      const ContractBundle& pooled);

/// Fills payment and utilities of every outcome (matched by task id).
void settle_payments(std::span<const AigcTask> tasks, std::span<TaskOutcome> outcomes, const ContractMenu& menu,
                     const ContractBundle& pooled, Benchmark benchmark, const ContractParams& params,
                     WithheldUtility withheld = WithheldUtility::Reservation);

/// Resources loaded once and shared by every run (replay labels, prompt, endpoint).
struct AssessmentContext {
  std::shared_ptr<const LabelReplay> replay;
  std::string prompt;
  std::string endpoint;

  /// Loads what `benchmarks` need; throws ConfigError when a VLM source is missing.
  static AssessmentContext load(const AssessorConfig& config, std::span<const Benchmark> benchmarks);
};

/// Oracle label under the configured rule.
DifficultyLabel oracle_label(const AigcTask& task, OracleRule rule, const ContractMenu& menu,
                             const ContractParams& params);

struct TaskLedgerEntry {
  std::int64_t task_id = 0;
  TaskType latent_type = TaskType::Low;
  std::optional<DifficultyLabel> label;
  bool assessment_fallback = false;
  TaskOutcome outcome;

  friend bool operator==(const TaskLedgerEntry&, const TaskLedgerEntry&) = default;
};

/// Labels every task once. Returns the number of VLM fallbacks.
int assess_tasks(std::vector<AigcTask>& tasks, Benchmark benchmark, const ScenarioConfig& config,
                 const ContractMenu& menu, const AssessmentContext& context, Rng& rng,
                 std::vector<bool>* fallbacks = nullptr);

struct RunRecord {
  Benchmark benchmark = Benchmark::OracleContract;
  SweepAxis axis = SweepAxis::None;
  int sweep_value = 0;
  int repeat = 0;
  std::uint64_t seed = 0;
  int num_tasks = 0;
  int num_servers = 0;
  AllocMetrics metrics;
  int assessment_fallbacks = 0;
  std::vector<TaskLedgerEntry> ledger;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// generate -> assess -> select bundle -> allocate -> settle. Deterministic
/// in (config.seed, repeat_index); every benchmark sees the same topology and tasks.
RunRecord run_scenario(const ScenarioConfig& config, Benchmark benchmark, int repeat_index,
                       const AssessmentContext& context, bool verbose = false);

/// Loads the assessment context itself.
RunRecord run_scenario(const ScenarioConfig& config, Benchmark benchmark, int repeat_index, bool verbose = false);

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct PointSummary {
  Benchmark benchmark = Benchmark::OracleContract;
  SweepAxis axis = SweepAxis::None;
  int sweep_value = 0;
  int repeats = 0;
  MetricSummary completion_rate;
  MetricSummary mean_response;
  MetricSummary objective;
  MetricSummary mean_teleop_utility;
  MetricSummary mean_edge_utility;
  /// Percentage change of the mean over No_Contract at the same point, when it ran.
  std::optional<double> teleop_gain_pct;
  std::optional<double> edge_gain_pct;

  friend bool operator==(const PointSummary&, const PointSummary&) = default;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<RunRecord> runs;
  std::vector<PointSummary> summary;

  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

/// Mean and sample standard deviation per (benchmark, sweep point), in first-seen order.
std::vector<PointSummary> summarize(std::span<const RunRecord> runs);

/// repeats x points x benchmarks. An empty `values` with SweepAxis::None runs the config as is.
ScenarioResult run_sweep(const ScenarioConfig& config, SweepAxis axis, std::span<const int> values,
                         std::span<const Benchmark> benchmarks, bool verbose = false);

/// One benchmark at the configured counts, all repeats.
ScenarioResult run_simulation(const ScenarioConfig& config, Benchmark benchmark, bool verbose = false);

}  // namespace edgecontract
