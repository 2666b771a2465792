#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "edgecontract/netsim.hpp"
#include "edgecontract/perf_model.hpp"

namespace edgecontract {

/// Objective weights for zeta1 * (1 - completion_rate) + zeta2 * mean_response.
struct Weights {
  double completion = 1.0;
  double response = 1.0;

  friend bool operator==(const Weights&, const Weights&) = default;
};

/// Which servers a task may use.
enum class FeasibilityMode {
  /// Only servers whose model class matches the assessed label.
  ByLabel,
  /// Every server; used when no assessment is made.
  Unrestricted,
};

enum class Solver { Greedy, BruteForce };

std::string_view to_string(Solver solver);

struct TaskOutcome {
  std::int64_t task_id = 0;
  int server_id = 0;
  double t_transmit = 0.0;
  double t_compute = 0.0;
  double t_queue = 0.0;
  double t_total = 0.0;
  bool on_time = false;
  double realized_score = 0.0;
  double payment = 0.0;
  double teleop_utility = 0.0;
  double edge_utility = 0.0;

  friend bool operator==(const TaskOutcome&, const TaskOutcome&) = default;
};

struct AllocMetrics {
  double completion_rate = 0.0;
  double mean_response = 0.0;
  double objective = 0.0;
  double mean_teleop_utility = 0.0;
  double mean_edge_utility = 0.0;

  friend bool operator==(const AllocMetrics&, const AllocMetrics&) = default;
};

/// Task id -> server id, exactly one server per task.
using AllocationMatrix = std::map<std::int64_t, int>;

struct Allocation {
  AllocationMatrix assignment;
  /// One outcome per task, in task id order.
  std::vector<TaskOutcome> outcomes;
};

/// Strict: a task finishing exactly at the deadline is late.
inline bool completes_on_time(double t_total, double deadline) { return t_total < deadline; }

/// FIFO backlog ahead of a new task: sum of compute_demand / capacity over `pending`.
double queuing_time(const EdgeServer& server, std::span<const AigcTask* const> pending);

/// Servers a task may be sent to, ascending id.
std::vector<int> feasible_servers(const AigcTask& task, const Topology& topo, FeasibilityMode mode);

/// Replays an assignment: tasks enter their server's queue in id order and
/// wait for the compute time of every earlier task there.
std::vector<TaskOutcome> simulate_assignment(std::span<const AigcTask> tasks, const Topology& topo,
                                             const AllocationMatrix& assignment, double deadline);

/// Earliest-estimated-completion list scheduling. Ties go to the lowest server id.
/// Throws EmptyFeasibleSet.
Allocation allocate_greedy(std::span<const AigcTask> tasks, const Topology& topo, double deadline,
                           const Weights& weights, FeasibilityMode mode = FeasibilityMode::ByLabel);

inline constexpr std::uint64_t kBruteForceLimit = 1'000'000;

/// Exhaustive minimum of the objective. Throws InstanceTooLarge past
/// kBruteForceLimit assignments, EmptyFeasibleSet when a task has no server.
Allocation allocate_bruteforce(std::span<const AigcTask> tasks, const Topology& topo, double deadline,
                               const Weights& weights, FeasibilityMode mode = FeasibilityMode::ByLabel);

Allocation allocate(Solver solver, std::span<const AigcTask> tasks, const Topology& topo, double deadline,
                    const Weights& weights, FeasibilityMode mode = FeasibilityMode::ByLabel);

/// Completion rate, mean response, objective and mean utilities. on_time is
/// recomputed from t_total against the deadline. Throws InvalidParams on empty input.
AllocMetrics completion_metrics(std::span<const TaskOutcome> outcomes, double deadline, const Weights& weights);

}  // namespace edgecontract
