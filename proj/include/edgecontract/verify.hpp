#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgecontract/allocator.hpp"
#include "edgecontract/assessment.hpp"
#include "edgecontract/contract.hpp"
#include "edgecontract/netsim.hpp"
#include "edgecontract/rng.hpp"

namespace edgecontract {

/// Closed-form oracle labels over a square grid of realized scores.
/// Row i uses score_low = axis[i], column j uses score_high = axis[j].
struct LabelGrid {
  std::vector<double> axis;
  std::vector<double> threshold;  // row-major
  std::vector<DifficultyLabel> labels;  // row-major

  [[nodiscard]] std::size_t size() const { return axis.size(); }
  [[nodiscard]] DifficultyLabel at(std::size_t i, std::size_t j) const { return labels[i * axis.size() + j]; }
};

/// points x points grid over (lo, hi]: axis[k] = lo + (k + 1) * (hi - lo) / points.
LabelGrid assessment_grid(const ContractParams& params, double lo, double hi, int points);

/// Label 1 region is closed under raising score_low and lowering score_high,
/// and each label forms one 4-connected region.
bool label_grid_island_free(const LabelGrid& grid);

/// Random small allocation problem for checking the greedy solver against enumeration.
struct AllocationInstance {
  std::vector<AigcTask> tasks;
  Topology topology;
};

/// 1..max_tasks tasks, 1..max_servers servers, 1..max_gateways gateways.
/// Labels are drawn only from classes present, so every feasible set is nonempty.
AllocationInstance random_allocation_instance(Rng& rng, int max_tasks, int max_servers, int max_gateways);

/// Identical servers and links, every task at gateway 0 with the same label.
AllocationInstance symmetric_allocation_instance(int tasks, int servers, double compute_time, double prop_delay,
                                                 double bandwidth);

/// Parameters drawn over wide ranges, redrawn until admissible().
ContractParams random_admissible_params(Rng& rng);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle-equivalence and invariant checks behind the `verify` command.
std::vector<CheckResult> run_verification(const ContractParams& params, std::uint64_t seed);

}  // namespace edgecontract
