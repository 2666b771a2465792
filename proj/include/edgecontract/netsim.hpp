#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "edgecontract/contract.hpp"
#include "edgecontract/perf_model.hpp"
#include "edgecontract/rng.hpp"

namespace edgecontract {

/// Dataset size the server's generative model was trained on.
enum class ModelClass { Small, Large };

std::string_view to_string(ModelClass model_class);

/// Model class serving a difficulty label: 1 -> Small, 2 -> Large.
ModelClass required_class(DifficultyLabel label);

/// Score the task reaches on a model class.
double realized_score_on(const AigcTask& task, ModelClass model_class);

struct EdgeServer {
  int id = 0;
  ModelClass model_class = ModelClass::Large;
  /// Compute units per second.
  double capacity = 1.0;
};

/// Wired gateway -> server link.
struct Link {
  int from_id = 0;  // gateway
  int to_id = 0;    // server
  double prop_delay = 0.0;  // seconds
  double bandwidth = 1.0;   // bits per second
};

/// Counts and sampling ranges for a generated topology.
struct TopologyConfig {
  int num_tasks = 200;
  int num_servers = 30;
  int num_gateways = 5;
  /// Per-task compute time range (s); capacity = compute_demand / draw.
  double compute_time_min = 0.11737;
  double compute_time_max = 0.28326;
  double prop_delay_min = 0.001;
  double prop_delay_max = 0.003;
  double bandwidth_min = 5e6;
  double bandwidth_max = 100e6;
  /// Number of Small servers; negative means round(beta_low * num_servers).
  int small_servers = -1;

  void validate() const;
  [[nodiscard]] int small_server_count(const ContractParams& params) const;

  friend bool operator==(const TopologyConfig&, const TopologyConfig&) = default;
};

/// Immutable gateway/server graph with one route per (gateway, server) pair.
class Topology {
 public:
  Topology() = default;
  /// `routes[g * servers.size() + s]` lists the links from gateway g to server s.
  Topology(int num_gateways, std::vector<EdgeServer> servers, std::vector<std::vector<Link>> routes);

  /// Gateways 0..g-1, servers as given, one direct link per pair.
  static Topology direct(int num_gateways, std::vector<EdgeServer> servers, const std::vector<Link>& links);

  [[nodiscard]] int num_gateways() const { return num_gateways_; }
  [[nodiscard]] const std::vector<EdgeServer>& servers() const { return servers_; }
  [[nodiscard]] const EdgeServer& server(int id) const;
  [[nodiscard]] std::span<const Link> route(int gateway, int server_id) const;
  [[nodiscard]] std::vector<Link> links() const;

 private:
  [[nodiscard]] std::size_t server_index(int id) const;

  int num_gateways_ = 0;
  std::vector<EdgeServer> servers_;
  std::vector<std::vector<Link>> routes_;
};

/// Samples capacities, link delays and bandwidths; servers [0, small) are Small.
/// Throws ConfigError for nonpositive counts.
Topology build_topology(const TopologyConfig& config, const PerfModelConfig& perf, const ContractParams& params,
                        Rng& rng);

/// Sum over the route of 2 * (prop_delay + payload / bandwidth).
double transmission_time(const AigcTask& task, std::span<const Link> route);

/// compute_demand / capacity
double computation_time(const AigcTask& task, const EdgeServer& server);

}  // namespace edgecontract
