#pragma once

#include "h2path/dispatch.hpp"
#include "h2path/econ.hpp"
#include "h2path/plantmodel.hpp"
#include "h2path/profiles.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace h2path {

struct ScenarioConfig
{
    std::string id;
    PlantSpec plant;
    DispatchRule rule;
    EconParams econ;
    // Free-form pointer to the wind data (file path or synth spec); informational.
    std::string profile_ref;

    bool operator==(const ScenarioConfig&) const = default;
};

// Checks every component plus cross-field consistency. Throws ConfigError.
void validate(const ScenarioConfig& config);

// Ids in reporting order: I, II, III-a, III-b, IV-a, IV-b, V-a, V-b-i, V-b-ii.
const std::vector<std::string>& preset_ids();

// Throws ConfigError for unknown ids.
ScenarioConfig preset(std::string_view id);

// Reference profile used to compare the presets.
inline constexpr double kReferenceCapacityFactor = 0.4883;
inline constexpr std::uint64_t kReferenceSeed = 42;
WindProfile reference_profile();

nlohmann::json to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const nlohmann::json& j);

// Sets a dotted key such as "electrolyser.capex_per_kw" or "econ.p_ppa" from text.
// Unknown keys and unparseable values throw ConfigError. The result is not validated.
void apply_override(ScenarioConfig& config, std::string_view key, std::string_view value);

ScenarioConfig load_scenario(const std::filesystem::path& path);

FlowLedger simulate_year(const ScenarioConfig& config, const WindProfile& profile);

struct ScenarioResult
{
    std::string id;
    AnnualSummary summary;
    CostReport cost;
    // Same flows re-priced with p_ppa = 0, for configurations where a sole investor
    // could own both the wind and the electrolyser.
    std::optional<CostReport> free;
};

// True when the preset reports the free-electricity variant alongside the base case.
bool reports_free_variant(const ScenarioConfig& config);

ScenarioResult evaluate(const ScenarioConfig& config, const FlowLedger& ledger);
ScenarioResult evaluate(const ScenarioConfig& config, const WindProfile& profile);

// Rows come back in the order of ids. jobs = 0 uses every hardware thread.
std::vector<ScenarioResult> run_comparison(const std::vector<std::string>& ids,
                                           const WindProfile& profile, unsigned jobs = 0);

enum class SweepParam
{
    PpaMultiplier,
    PemCapexMultiplier,
    EfficiencyUplift,
    StackLifeHours,
};

std::string_view to_string(SweepParam p);
// Accepts the full ids and the short forms p_ppa, pem_capex, efficiency, stack_life.
SweepParam parse_sweep_param(std::string_view name);

struct SweepSpec
{
    SweepParam param = SweepParam::PpaMultiplier;
    std::vector<double> values;
};

// Throws ConfigError when a value is outside the parameter's legal range.
void validate(const SweepSpec& spec);

// Ranges of the published sensitivity study, one spec per parameter.
std::vector<SweepSpec> reference_sweeps();

// Applies one sweep value to a copy of base.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value);

struct SweepPoint
{
    double value = 0.0;
    double lcoh_per_kg = 0.0;
    double lcoh_per_mwh_hhv = 0.0;
    double mass_t = 0.0;
};

// One parameter at a time. Flows are re-simulated only when the parameter changes them.
std::vector<SweepPoint> sweep(const ScenarioConfig& base, const SweepSpec& spec,
                              const WindProfile& profile, unsigned jobs = 0);

} // namespace h2path
