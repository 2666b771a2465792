#include "edgecontract/netsim.hpp"

#include <cmath>
#include <string>

#include "edgecontract/errors.hpp"

namespace edgecontract {

std::string_view to_string(ModelClass model_class) {
  return model_class == ModelClass::Small ? "small" : "large";
}

ModelClass required_class(DifficultyLabel label) {
  return label == DifficultyLabel::Low ? ModelClass::Small : ModelClass::Large;
}

double realized_score_on(const AigcTask& task, ModelClass model_class) {
  return model_class == ModelClass::Small ? task.realized.score_low : task.realized.score_high;
}

void TopologyConfig::validate() const {
  if (num_tasks < 1 || num_servers < 1 || num_gateways < 1) {
    throw ConfigError("task, server and gateway counts must be positive");
  }
  if (!(compute_time_min > 0.0 && compute_time_max >= compute_time_min)) {
    throw ConfigError("compute time range must be positive and ordered");
  }
  if (!(prop_delay_min >= 0.0 && prop_delay_max >= prop_delay_min)) {
    throw ConfigError("propagation delay range must be nonnegative and ordered");
  }
  if (!(bandwidth_min > 0.0 && bandwidth_max >= bandwidth_min)) {
    throw ConfigError("bandwidth range must be positive and ordered");
  }
  if (small_servers > num_servers) throw ConfigError("small_servers exceeds num_servers");
}

int TopologyConfig::small_server_count(const ContractParams& params) const {
  if (small_servers >= 0) return small_servers;
  return static_cast<int>(std::lround(params.beta_low * num_servers));
}

Topology::Topology(int num_gateways, std::vector<EdgeServer> servers, std::vector<std::vector<Link>> routes)
    : num_gateways_(num_gateways), servers_(std::move(servers)), routes_(std::move(routes)) {
  if (num_gateways_ < 1 || servers_.empty()) throw ConfigError("topology needs a gateway and a server");
  if (routes_.size() != static_cast<std::size_t>(num_gateways_) * servers_.size()) {
    throw ConfigError("topology needs one route per (gateway, server) pair");
  }
  for (const auto& server : servers_) {
    if (!(server.capacity > 0.0)) throw ConfigError("server capacity must be positive");
  }
  for (const auto& route : routes_) {
    if (route.empty()) throw ConfigError("every (gateway, server) pair needs a link");
    for (const auto& link : route) {
      if (!(link.prop_delay >= 0.0) || !(link.bandwidth > 0.0)) {
        throw ConfigError("links need prop_delay >= 0 and bandwidth > 0");
      }
    }
  }
}

Topology Topology::direct(int num_gateways, std::vector<EdgeServer> servers, const std::vector<Link>& links) {
  std::vector<std::vector<Link>> routes(static_cast<std::size_t>(num_gateways) * servers.size());
  for (const auto& link : links) {
    std::size_t s = servers.size();
    for (std::size_t k = 0; k < servers.size(); ++k) {
      if (servers[k].id == link.to_id) s = k;
    }
    if (link.from_id < 0 || link.from_id >= num_gateways || s == servers.size()) {
      throw ConfigError("link references an unknown node");
    }
    routes[static_cast<std::size_t>(link.from_id) * servers.size() + s] = {link};
  }
  return Topology(num_gateways, std::move(servers), std::move(routes));
}

std::size_t Topology::server_index(int id) const {
  // Generated topologies number servers 0..M-1, so try the direct slot first.
  if (id >= 0 && static_cast<std::size_t>(id) < servers_.size() && servers_[static_cast<std::size_t>(id)].id == id) {
    return static_cast<std::size_t>(id);
  }
  for (std::size_t k = 0; k < servers_.size(); ++k) {
    if (servers_[k].id == id) return k;
  }
  throw ConfigError("unknown server id " + std::to_string(id));
}

const EdgeServer& Topology::server(int id) const { return servers_[server_index(id)]; }

std::span<const Link> Topology::route(int gateway, int server_id) const {
  if (gateway < 0 || gateway >= num_gateways_) throw ConfigError("unknown gateway " + std::to_string(gateway));
  return routes_[static_cast<std::size_t>(gateway) * servers_.size() + server_index(server_id)];
}

std::vector<Link> Topology::links() const {
  std::vector<Link> out;
  for (const auto& route : routes_) out.insert(out.end(), route.begin(), route.end());
  return out;
}

Topology build_topology(const TopologyConfig& config, const PerfModelConfig& perf, const ContractParams& params,
                        Rng& rng) {
  config.validate();
  const int small = config.small_server_count(params);
  std::vector<EdgeServer> servers;
  servers.reserve(static_cast<std::size_t>(config.num_servers));
  for (int m = 0; m < config.num_servers; ++m) {
    const double compute_time = rng.uniform(config.compute_time_min, config.compute_time_max);
    // Zero-demand tasks would give zero capacity; normalize against one unit then.
    const double demand = perf.compute_demand > 0.0 ? perf.compute_demand : 1.0;
    servers.push_back({m, m < small ? ModelClass::Small : ModelClass::Large, demand / compute_time});
  }
  std::vector<std::vector<Link>> routes;
  routes.reserve(static_cast<std::size_t>(config.num_gateways * config.num_servers));
  for (int g = 0; g < config.num_gateways; ++g) {
    for (int m = 0; m < config.num_servers; ++m) {
      Link link{g, m, 0.0, 1.0};
      link.prop_delay = rng.uniform(config.prop_delay_min, config.prop_delay_max);
      link.bandwidth = rng.uniform(config.bandwidth_min, config.bandwidth_max);
      routes.push_back({link});
    }
  }
  return Topology(config.num_gateways, std::move(servers), std::move(routes));
}

double transmission_time(const AigcTask& task, std::span<const Link> route) {
  double total = 0.0;
  for (const Link& link : route) total += 2.0 * (link.prop_delay + task.payload_bits / link.bandwidth);
  return total;
}

double computation_time(const AigcTask& task, const EdgeServer& server) {
  return task.compute_demand / server.capacity;
}

}  // namespace edgecontract
