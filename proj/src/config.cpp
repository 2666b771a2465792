#include "edgecontract/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "edgecontract/errors.hpp"

namespace edgecontract {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ConfigError(key + ": expected a number, got '" + raw + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  Int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + raw + "'");
  }
  return value;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> items;
  std::stringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string resolve(const std::string& raw, const std::filesystem::path& base) {
  const std::string path = trim(raw);
  if (path.empty() || base.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (base / path).lexically_normal().string();
}

using Setter = std::function<void(const std::string& key, const std::string& value)>;
using Section = std::map<std::string, Setter>;

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf, end);
}

ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed scenario config: ") + e.what());
  }

  ScenarioConfig c;
  bool zeta2_given = false;
  auto num = [](double& field) { return [&field](const std::string& k, const std::string& v) { field = parse_double(k, v); }; };
  auto integer = [](int& field) { return [&field](const std::string& k, const std::string& v) { field = parse_int<int>(k, v); }; };

  std::map<std::string, Section> sections;
  sections["contract"] = {
      {"theta_low", num(c.contract.theta_low)},
      {"theta_high", num(c.contract.theta_high)},
      {"beta_low", num(c.contract.beta_low)},
      {"beta_high", num(c.contract.beta_high)},
      {"eta1", num(c.contract.eta1)},
      {"eta2", num(c.contract.eta2)},
      {"eta3", num(c.contract.eta3)},
      {"perf_threshold", num(c.contract.perf_threshold)},
      {"perf_expected", num(c.contract.perf_expected)},
      {"delta_c", num(c.contract.delta_c)},
      {"utility_floor", num(c.contract.utility_floor)},
      {"withheld_utility", [&](const std::string&, const std::string& v) { c.withheld_utility = parse_withheld_utility(trim(v)); }},
  };
  sections["perf"] = {
      {"score_low_easy_min", num(c.perf.score_low_easy.low)},
      {"score_low_easy_max", num(c.perf.score_low_easy.high)},
      {"score_low_hard_min", num(c.perf.score_low_hard.low)},
      {"score_low_hard_max", num(c.perf.score_low_hard.high)},
      {"score_high_min", num(c.perf.score_high.low)},
      {"score_high_max", num(c.perf.score_high.high)},
      {"payload_bits", num(c.perf.payload_bits)},
      {"compute_demand", num(c.perf.compute_demand)},
  };
  sections["topology"] = {
      {"tasks", integer(c.topology.num_tasks)},
      {"servers", integer(c.topology.num_servers)},
      {"gateways", integer(c.topology.num_gateways)},
      {"small_servers", integer(c.topology.small_servers)},
      {"compute_time_min", num(c.topology.compute_time_min)},
      {"compute_time_max", num(c.topology.compute_time_max)},
      {"prop_delay_min", num(c.topology.prop_delay_min)},
      {"prop_delay_max", num(c.topology.prop_delay_max)},
      {"bandwidth_min", num(c.topology.bandwidth_min)},
      {"bandwidth_max", num(c.topology.bandwidth_max)},
  };
  sections["allocator"] = {
      {"deadline", num(c.allocator.deadline)},
      {"zeta1", num(c.allocator.weights.completion)},
      {"zeta2", [&](const std::string& k, const std::string& v) {
         c.allocator.weights.response = parse_double(k, v);
         zeta2_given = true;
       }},
      {"solver", [&](const std::string&, const std::string& v) { c.allocator.solver = parse_solver(trim(v)); }},
  };
  sections["assessor"] = {
      {"human_epsilon", num(c.assessor.human_epsilon)},
      {"human_truth", [&](const std::string&, const std::string& v) { c.assessor.human_truth = parse_human_truth(trim(v)); }},
      {"oracle_rule", [&](const std::string&, const std::string& v) { c.assessor.oracle_rule = parse_oracle_rule(trim(v)); }},
      {"vlm_mode", [&](const std::string&, const std::string& v) { c.assessor.vlm_mode = parse_vlm_mode(trim(v)); }},
      {"vlm_labels", [&](const std::string&, const std::string& v) { c.assessor.vlm_labels = resolve(v, base_dir); }},
      {"vlm_prompt", [&](const std::string&, const std::string& v) { c.assessor.vlm_prompt = resolve(v, base_dir); }},
      {"vlm_endpoint", [&](const std::string&, const std::string& v) { c.assessor.vlm_endpoint = trim(v); }},
      {"vlm_timeout", num(c.assessor.vlm_timeout_s)},
  };
  sections["sweep"] = {
      {"axis", [&](const std::string&, const std::string& v) { c.sweep.axis = parse_sweep_axis(trim(v)); }},
      {"values", [&](const std::string& k, const std::string& v) {
         c.sweep.values.clear();
         for (const auto& item : split_list(v)) c.sweep.values.push_back(parse_int<int>(k, item));
       }},
      {"benchmarks", [&](const std::string&, const std::string& v) {
         c.sweep.benchmarks.clear();
         for (const auto& item : split_list(v)) c.sweep.benchmarks.push_back(parse_benchmark(item));
       }},
      {"repeats", integer(c.repeats)},
      {"seed", [&](const std::string& k, const std::string& v) { c.seed = parse_int<std::uint64_t>(k, v); }},
  };

  for (const auto& [name, body] : tree) {
    const auto section = sections.find(name);
    if (section == sections.end()) throw ConfigError("unknown config section [" + name + "]");
    if (!body.data().empty() && body.empty()) throw ConfigError("key '" + name + "' outside of a section");
    for (const auto& [key, value] : body) {
      const auto setter = section->second.find(key);
      if (setter == section->second.end()) throw ConfigError("unknown key '" + key + "' in [" + name + "]");
      setter->second("[" + name + "] " + key, value.data());
    }
  }
  if (!zeta2_given) c.allocator.weights.response = 1.0 / c.allocator.deadline;
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

std::string format_config(const ScenarioConfig& c) {
  std::ostringstream out;
  auto kv = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
  auto d = [](double x) { return format_double(x); };

  out << "[contract]\n";
  kv("theta_low", d(c.contract.theta_low));
  kv("theta_high", d(c.contract.theta_high));
  kv("beta_low", d(c.contract.beta_low));
  kv("beta_high", d(c.contract.beta_high));
  kv("eta1", d(c.contract.eta1));
  kv("eta2", d(c.contract.eta2));
  kv("eta3", d(c.contract.eta3));
  kv("perf_threshold", d(c.contract.perf_threshold));
  kv("perf_expected", d(c.contract.perf_expected));
  kv("delta_c", d(c.contract.delta_c));
  kv("utility_floor", d(c.contract.utility_floor));
  kv("withheld_utility", std::string(to_string(c.withheld_utility)));

  out << "\n[perf]\n";
  kv("score_low_easy_min", d(c.perf.score_low_easy.low));
  kv("score_low_easy_max", d(c.perf.score_low_easy.high));
  kv("score_low_hard_min", d(c.perf.score_low_hard.low));
  kv("score_low_hard_max", d(c.perf.score_low_hard.high));
  kv("score_high_min", d(c.perf.score_high.low));
  kv("score_high_max", d(c.perf.score_high.high));
  kv("payload_bits", d(c.perf.payload_bits));
  kv("compute_demand", d(c.perf.compute_demand));

  out << "\n[topology]\n";
  kv("tasks", std::to_string(c.topology.num_tasks));
  kv("servers", std::to_string(c.topology.num_servers));
  kv("gateways", std::to_string(c.topology.num_gateways));
  kv("small_servers", std::to_string(c.topology.small_servers));
  kv("compute_time_min", d(c.topology.compute_time_min));
  kv("compute_time_max", d(c.topology.compute_time_max));
  kv("prop_delay_min", d(c.topology.prop_delay_min));
  kv("prop_delay_max", d(c.topology.prop_delay_max));
  kv("bandwidth_min", d(c.topology.bandwidth_min));
  kv("bandwidth_max", d(c.topology.bandwidth_max));

  out << "\n[allocator]\n";
  kv("deadline", d(c.allocator.deadline));
  kv("zeta1", d(c.allocator.weights.completion));
  kv("zeta2", d(c.allocator.weights.response));
  kv("solver", std::string(to_string(c.allocator.solver)));

  out << "\n[assessor]\n";
  kv("human_epsilon", d(c.assessor.human_epsilon));
  kv("human_truth", std::string(to_string(c.assessor.human_truth)));
  kv("oracle_rule", std::string(to_string(c.assessor.oracle_rule)));
  kv("vlm_mode", std::string(to_string(c.assessor.vlm_mode)));
  kv("vlm_labels", c.assessor.vlm_labels);
  kv("vlm_prompt", c.assessor.vlm_prompt);
  kv("vlm_endpoint", c.assessor.vlm_endpoint);
  kv("vlm_timeout", d(c.assessor.vlm_timeout_s));

  out << "\n[sweep]\n";
  kv("axis", std::string(to_string(c.sweep.axis)));
  std::string values;
  for (std::size_t k = 0; k < c.sweep.values.size(); ++k) values += (k ? ", " : "") + std::to_string(c.sweep.values[k]);
  kv("values", values);
  std::string benchmarks;
  for (std::size_t k = 0; k < c.sweep.benchmarks.size(); ++k) {
    benchmarks += (k ? ", " : "") + std::string(to_string(c.sweep.benchmarks[k]));
  }
  kv("benchmarks", benchmarks);
  kv("repeats", std::to_string(c.repeats));
  kv("seed", std::to_string(c.seed));
  return out.str();
}

}  // namespace edgecontract
