#pragma once

#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "edgecontract/harness.hpp"

namespace edgecontract {

enum class ExportFormat { Csv, Json };

ExportFormat parse_export_format(std::string_view text);

/// One row per (benchmark, sweep_value, repeat).
void write_results_csv(const ScenarioResult& result, std::ostream& out);

/// Mean and stddev per (benchmark, sweep point), plus gains over No_Contract.
void write_aggregate_csv(const ScenarioResult& result, std::ostream& out);

nlohmann::json to_json(const ScenarioResult& result);
ScenarioResult scenario_result_from_json(const nlohmann::json& doc);

/// Writes results.csv or results.json into `dir` (created if needed), always
/// with aggregate.csv next to it. Returns the written paths. Throws IoError.
std::vector<std::filesystem::path> export_results(const ScenarioResult& result, const std::filesystem::path& dir,
                                                  ExportFormat format);

}  // namespace edgecontract
