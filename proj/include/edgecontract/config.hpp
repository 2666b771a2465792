#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "edgecontract/harness.hpp"

namespace edgecontract {

/// Reads an INI scenario file with sections [contract], [perf], [topology],
/// [allocator], [assessor], [sweep]. Missing keys keep their defaults,
/// unknown keys are rejected. Relative file paths in [assessor] resolve
/// against `base_dir`. Throws ConfigError.
ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

ScenarioConfig load_config(const std::filesystem::path& path);

/// Writes every field in a form parse_config reads back exactly.
std::string format_config(const ScenarioConfig& config);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

}  // namespace edgecontract
