#include "edgecontract/allocator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "edgecontract/errors.hpp"

namespace edgecontract {

namespace {

std::vector<const AigcTask*> by_id(std::span<const AigcTask> tasks) {
  std::vector<const AigcTask*> order;
  order.reserve(tasks.size());
  for (const auto& task : tasks) order.push_back(&task);
  std::stable_sort(order.begin(), order.end(), [](const AigcTask* a, const AigcTask* b) { return a->id < b->id; });
  return order;
}

std::vector<std::vector<int>> feasible_sets(const std::vector<const AigcTask*>& order, const Topology& topo,
                                            FeasibilityMode mode) {
  std::vector<std::vector<int>> sets;
  sets.reserve(order.size());
  for (const AigcTask* task : order) {
    sets.push_back(feasible_servers(*task, topo, mode));
    if (sets.back().empty()) {
      throw EmptyFeasibleSet("no server hosts the model class required by task " + std::to_string(task->id));
    }
  }
  return sets;
}

}  // namespace

std::string_view to_string(Solver solver) { return solver == Solver::Greedy ? "greedy" : "bruteforce"; }

double queuing_time(const EdgeServer& server, std::span<const AigcTask* const> pending) {
  double backlog = 0.0;
  for (const AigcTask* task : pending) backlog += computation_time(*task, server);
  return backlog;
}

std::vector<int> feasible_servers(const AigcTask& task, const Topology& topo, FeasibilityMode mode) {
  std::vector<int> ids;
  if (mode == FeasibilityMode::ByLabel && !task.assessed) {
    throw std::logic_error("task " + std::to_string(task.id) + " has not been assessed");
  }
  for (const auto& server : topo.servers()) {
    if (mode == FeasibilityMode::Unrestricted || server.model_class == required_class(*task.assessed)) {
      ids.push_back(server.id);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<TaskOutcome> simulate_assignment(std::span<const AigcTask> tasks, const Topology& topo,
                                             const AllocationMatrix& assignment, double deadline) {
  std::unordered_map<int, std::vector<const AigcTask*>> queues;
  std::vector<TaskOutcome> outcomes;
  outcomes.reserve(tasks.size());
  for (const AigcTask* task : by_id(tasks)) {
    const auto it = assignment.find(task->id);
    if (it == assignment.end()) {
      throw std::logic_error("task " + std::to_string(task->id) + " has no assigned server");
    }
    const EdgeServer& server = topo.server(it->second);
    auto& queue = queues[server.id];

    TaskOutcome out;
    out.task_id = task->id;
    out.server_id = server.id;
    out.t_transmit = transmission_time(*task, topo.route(task->gateway_id, server.id));
    out.t_compute = computation_time(*task, server);
    out.t_queue = queuing_time(server, queue);
    out.t_total = out.t_transmit + out.t_compute + out.t_queue;
    out.on_time = completes_on_time(out.t_total, deadline);
    out.realized_score = realized_score_on(*task, server.model_class);
    outcomes.push_back(out);
    queue.push_back(task);
  }
  return outcomes;
}

Allocation allocate_greedy(std::span<const AigcTask> tasks, const Topology& topo, double deadline,
                           const Weights& /*weights*/, FeasibilityMode mode) {
  const auto order = by_id(tasks);
  const auto sets = feasible_sets(order, topo, mode);
  std::unordered_map<int, double> backlog;

  Allocation result;
  for (std::size_t n = 0; n < order.size(); ++n) {
    const AigcTask& task = *order[n];
    int chosen = sets[n].front();
    double best = std::numeric_limits<double>::infinity();
    for (int id : sets[n]) {
      const EdgeServer& server = topo.server(id);
      const double estimate =
          transmission_time(task, topo.route(task.gateway_id, id)) + backlog[id] + computation_time(task, server);
      if (estimate < best) {
        best = estimate;
        chosen = id;
      }
    }
    backlog[chosen] += computation_time(task, topo.server(chosen));
    result.assignment[task.id] = chosen;
  }
  result.outcomes = simulate_assignment(tasks, topo, result.assignment, deadline);
  return result;
}

Allocation allocate_bruteforce(std::span<const AigcTask> tasks, const Topology& topo, double deadline,
                               const Weights& weights, FeasibilityMode mode) {
  const auto order = by_id(tasks);
  const auto sets = feasible_sets(order, topo, mode);
  std::uint64_t total = 1;
  for (const auto& set : sets) {
    if (total > kBruteForceLimit / set.size()) {
      throw InstanceTooLarge("brute-force allocation exceeds " + std::to_string(kBruteForceLimit) + " assignments");
    }
    total *= set.size();
  }

  std::vector<std::size_t> digit(order.size(), 0);
  AllocationMatrix current;
  for (std::size_t n = 0; n < order.size(); ++n) current[order[n]->id] = sets[n][0];

  Allocation best;
  double best_objective = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < total; ++k) {
    auto outcomes = simulate_assignment(tasks, topo, current, deadline);
    const double objective = completion_metrics(outcomes, deadline, weights).objective;
    if (objective < best_objective) {
      best_objective = objective;
      best.assignment = current;
      best.outcomes = std::move(outcomes);
    }
    // Odometer step, last task fastest.
    for (std::size_t n = order.size(); n-- > 0;) {
      if (++digit[n] < sets[n].size()) {
        current[order[n]->id] = sets[n][digit[n]];
        break;
      }
      digit[n] = 0;
      current[order[n]->id] = sets[n][0];
    }
  }
  return best;
}

Allocation allocate(Solver solver, std::span<const AigcTask> tasks, const Topology& topo, double deadline,
                    const Weights& weights, FeasibilityMode mode) {
  return solver == Solver::Greedy ? allocate_greedy(tasks, topo, deadline, weights, mode)
                                  : allocate_bruteforce(tasks, topo, deadline, weights, mode);
}

AllocMetrics completion_metrics(std::span<const TaskOutcome> outcomes, double deadline, const Weights& weights) {
  if (outcomes.empty()) throw InvalidParams("completion metrics need at least one outcome");
  const auto count = static_cast<double>(outcomes.size());

  std::size_t on_time = 0;
  std::vector<double> totals;
  totals.reserve(outcomes.size());
  double teleop = 0.0;
  double edge = 0.0;
  for (const auto& out : outcomes) {
    if (completes_on_time(out.t_total, deadline)) ++on_time;
    totals.push_back(out.t_total);
    teleop += out.teleop_utility;
    edge += out.edge_utility;
  }
  // Summing in sorted order makes the mean independent of which task holds which value.
  std::sort(totals.begin(), totals.end());
  const double response_sum = std::accumulate(totals.begin(), totals.end(), 0.0);

  AllocMetrics metrics;
  metrics.completion_rate = static_cast<double>(on_time) / count;
  metrics.mean_response = response_sum / count;
  metrics.objective = weights.completion * (1.0 - metrics.completion_rate) + weights.response * metrics.mean_response;
  metrics.mean_teleop_utility = teleop / count;
  metrics.mean_edge_utility = edge / count;
  return metrics;
}

}  // namespace edgecontract
