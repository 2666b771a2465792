#include "edgecontract/perf_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "edgecontract/errors.hpp"

namespace edgecontract {

namespace {

void check_interval(const ScoreInterval& interval, std::string_view name, double floor, bool may_dip) {
  if (!std::isfinite(interval.low) || !std::isfinite(interval.high) || interval.low > interval.high) {
    throw ConfigError(std::string(name) + ": interval needs finite low <= high");
  }
  if (!may_dip && !(interval.low > floor)) {
    throw ConfigError(std::string(name) + ": interval must lie above perf_threshold");
  }
}

}  // namespace

std::string_view to_string(TaskType type) { return type == TaskType::Low ? "L" : "H"; }

double valuation(TaskType type, const ContractParams& params) {
  return type == TaskType::Low ? params.theta_low : params.theta_high;
}

void PerfModelConfig::validate(const ContractParams& params) const {
  check_interval(score_low_easy, "score_low_easy", params.perf_threshold, false);
  check_interval(score_low_hard, "score_low_hard", params.perf_threshold, true);
  check_interval(score_high, "score_high", params.perf_threshold, false);
  if (!(payload_bits >= 0.0) || !(compute_demand >= 0.0)) {
    throw ConfigError("payload_bits and compute_demand must be nonnegative");
  }
}

void assign_label(AigcTask& task, DifficultyLabel label) {
  if (task.assessed) throw std::logic_error("task " + std::to_string(task.id) + " was already assessed");
  task.assessed = label;
}

RealizedPerformance realized_scores(TaskType latent, const PerfModelConfig& config, Rng& rng) {
  const ScoreInterval& small = latent == TaskType::Low ? config.score_low_easy : config.score_low_hard;
  RealizedPerformance rp;
  rp.score_low = rng.uniform(small.low, small.high);
  rp.score_high = rng.uniform(config.score_high.low, config.score_high.high);
  return rp;
}

AigcTask sample_task(std::int64_t id, const PerfModelConfig& config, const ContractParams& params, Rng& rng) {
  AigcTask task;
  task.id = id;
  task.latent_type = rng.bernoulli(params.beta_high) ? TaskType::High : TaskType::Low;
  task.realized = realized_scores(task.latent_type, config, rng);
  task.payload_bits = config.payload_bits;
  task.compute_demand = config.compute_demand;
  return task;
}

std::vector<AigcTask> sample_tasks(int count, int num_gateways, const PerfModelConfig& config,
                                   const ContractParams& params, Rng& rng) {
  if (count < 1 || num_gateways < 1) throw ConfigError("need at least one task and one gateway");
  std::vector<AigcTask> tasks;
  tasks.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    AigcTask task = sample_task(n, config, params, rng);
    task.gateway_id = static_cast<int>(rng.index(static_cast<std::size_t>(num_gateways)));
    tasks.push_back(task);
  }
  return tasks;
}

}  // namespace edgecontract
