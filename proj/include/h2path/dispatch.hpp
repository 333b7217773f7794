#pragma once

#include "h2path/plantmodel.hpp"
#include "h2path/profiles.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace h2path {

enum class DispatchVariant
{
    GridOnly,           // electrolyser on grid imports alone
    OffGridDirect,      // islanded wind farm on a private wire
    VirtualPpa,         // wind delivered through the public grid under a PPA
    CurtailmentHarvest, // power above a per-farm export threshold
    BtmGridFirst,       // behind the meter, export takes priority
    BtmPemFirst,        // behind the meter, electrolyser takes priority
};

enum class Backup
{
    None,
    GridBackup,
};

std::string_view to_string(DispatchVariant v);
std::string_view to_string(Backup b);
// Throw ConfigError on unknown names.
DispatchVariant parse_variant(std::string_view name);
Backup parse_backup(std::string_view name);

struct DispatchRule
{
    DispatchVariant variant = DispatchVariant::OffGridDirect;
    Backup backup = Backup::None;
    double curtail_threshold_mw = 0.0;
    int n_farms = 1;

    bool operator==(const DispatchRule&) const = default;
};

struct FlowRecord
{
    std::size_t step = 0;
    double p_wind_mw = 0.0;
    double p_h2_wind_mw = 0.0;
    double p_h2_import_mw = 0.0;
    double p_export_mw = 0.0;
    double p_curtail_mw = 0.0;
    double p_pem_mw = 0.0;
    double p_comp_mw = 0.0;
    double mass_kg = 0.0;
};

// Annual energy totals in MWh, mass in kg.
struct FlowTotals
{
    double wind_mwh = 0.0;
    double wind_to_h2_mwh = 0.0;
    double import_mwh = 0.0;
    double export_mwh = 0.0;
    double curtail_mwh = 0.0;
    double pem_mwh = 0.0;
    double comp_mwh = 0.0;
    double mass_kg = 0.0;
};

struct FlowLedger
{
    double step_hours = kDefaultStepHours;
    std::vector<FlowRecord> records;
    FlowTotals totals;

    double hours() const { return step_hours * static_cast<double>(records.size()); }
};

// Recomputes totals from the records.
FlowTotals accumulate(std::span<const FlowRecord> records, double step_hours);

// Largest hydrogen-side intake (electrolysis plus compression) the plant accepts, MW.
double intake_cap_mw(const PlantSpec& plant);

// Throws ConfigError when the rule cannot run on this plant.
void validate(const DispatchRule& rule, const PlantSpec& plant);

// Resolves one step. farm_mw holds one value per farm (n_farms values for
// CurtailmentHarvest, exactly one otherwise). step_hours scales mass_kg.
FlowRecord dispatch_step(const DispatchRule& rule, std::span<const double> farm_mw,
                         const PlantSpec& plant, double step_hours = kDefaultStepHours,
                         const PhysicalConstants& consts = {});

// One record per profile step. A single-column profile is shared by all farms of a
// CurtailmentHarvest rule. Dispatch failures are rethrown with the step index attached.
FlowLedger simulate_year(const DispatchRule& rule, const PlantSpec& plant,
                         const WindProfile& profile, const PhysicalConstants& consts = {});

// CSV columns step,p_wind,p_h2_wind,p_import,p_export,p_curtail,p_pem,p_comp,mass_kg.
void write_ledger_csv(std::ostream& out, const FlowLedger& ledger);

} // namespace h2path
