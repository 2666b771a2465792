#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "edgecontract/assessment.hpp"
#include "edgecontract/contract.hpp"
#include "edgecontract/rng.hpp"

namespace edgecontract {

/// Latent difficulty type of a task, hidden from edge servers.
enum class TaskType { Low, High };

std::string_view to_string(TaskType type);

/// Valuation theta of a latent type.
double valuation(TaskType type, const ContractParams& params);

struct ScoreInterval {
  double low = 0.0;
  double high = 0.0;

  friend bool operator==(const ScoreInterval&, const ScoreInterval&) = default;
};

/// Synthetic score model standing in for the generative models. Scores are
/// higher-is-better and drawn uniformly from the configured intervals.
struct PerfModelConfig {
  /// Small-dataset model score of an easy task.
  ScoreInterval score_low_easy{1.45, 1.60};
  /// Small-dataset model score of a hard task; may dip below perf_threshold.
  ScoreInterval score_low_hard{1.28, 1.42};
  /// Large-dataset model score, either type.
  ScoreInterval score_high{1.55, 1.75};
  double payload_bits = 1'000'000.0;
  double compute_demand = 1.0;

  void validate(const ContractParams& params) const;

  friend bool operator==(const PerfModelConfig&, const PerfModelConfig&) = default;
};

struct AigcTask {
  std::int64_t id = 0;
  TaskType latent_type = TaskType::Low;
  RealizedPerformance realized;
  std::optional<DifficultyLabel> assessed;
  int gateway_id = 0;
  double payload_bits = 0.0;
  double compute_demand = 0.0;
};

/// Sets task.assessed; throws std::logic_error when a label is already present.
void assign_label(AigcTask& task, DifficultyLabel label);

RealizedPerformance realized_scores(TaskType latent, const PerfModelConfig& config, Rng& rng);

/// Draws the latent type (High with probability beta_high), then the scores.
/// gateway_id is left at 0.
AigcTask sample_task(std::int64_t id, const PerfModelConfig& config, const ContractParams& params, Rng& rng);

/// Tasks 0..count-1 in one stream; each task's origin gateway is drawn
/// uniformly right after its scores.
std::vector<AigcTask> sample_tasks(int count, int num_gateways, const PerfModelConfig& config,
                                   const ContractParams& params, Rng& rng);

}  // namespace edgecontract
