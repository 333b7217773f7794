#pragma once

#include "h2path/scenarios.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace h2path {

// Writes to a sibling temporary file and renames it into place. Creates parent
// directories as needed. Throws ConfigError on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Table columns, in order: use case, LCOH £/MWh, LCOH £/kg, LCOH free £/MWh,
// annual t, stack life yr, load factor %, then the electrolysis-only load factor,
// cost shares, annual costs and export revenue.
std::string comparison_csv(std::span<const ScenarioResult> rows);

nlohmann::json to_json(const CostReport& cost);
nlohmann::json to_json(const AnnualSummary& summary);
nlohmann::json to_json(const ScenarioResult& result);
nlohmann::json comparison_json(std::span<const ScenarioResult> rows);

std::string sweep_csv(SweepParam param, std::span<const SweepPoint> points);
nlohmann::json sweep_json(const std::string& scenario_id, SweepParam param,
                          std::span<const SweepPoint> points);

} // namespace h2path
