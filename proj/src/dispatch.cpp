#include "h2path/dispatch.hpp"

#include "h2path/errors.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

namespace h2path {

namespace {

constexpr std::array<std::pair<DispatchVariant, std::string_view>, 6> kVariantNames{{
    {DispatchVariant::GridOnly, "GridOnly"},
    {DispatchVariant::OffGridDirect, "OffGridDirect"},
    {DispatchVariant::VirtualPpa, "VirtualPPA"},
    {DispatchVariant::CurtailmentHarvest, "CurtailmentHarvest"},
    {DispatchVariant::BtmGridFirst, "BtmGridFirst"},
    {DispatchVariant::BtmPemFirst, "BtmPemFirst"},
}};

bool uses_private_wire(DispatchVariant v)
{
    return v == DispatchVariant::OffGridDirect || v == DispatchVariant::BtmGridFirst ||
           v == DispatchVariant::BtmPemFirst;
}

} // namespace

std::string_view to_string(DispatchVariant v)
{
    for (const auto& [variant, name] : kVariantNames) {
        if (variant == v) {
            return name;
        }
    }
    return "unknown";
}

std::string_view to_string(Backup b)
{
    return b == Backup::GridBackup ? "GridBackup" : "None";
}

DispatchVariant parse_variant(std::string_view name)
{
    for (const auto& [variant, n] : kVariantNames) {
        if (n == name) {
            return variant;
        }
    }
    throw ConfigError("unknown dispatch variant '" + std::string(name) + "'");
}

Backup parse_backup(std::string_view name)
{
    if (name == "None") {
        return Backup::None;
    }
    if (name == "GridBackup") {
        return Backup::GridBackup;
    }
    throw ConfigError("unknown backup policy '" + std::string(name) + "'");
}

FlowTotals accumulate(std::span<const FlowRecord> records, double step_hours)
{
    FlowTotals t;
    for (const auto& r : records) {
        t.wind_mwh += r.p_wind_mw;
        t.wind_to_h2_mwh += r.p_h2_wind_mw;
        t.import_mwh += r.p_h2_import_mw;
        t.export_mwh += r.p_export_mw;
        t.curtail_mwh += r.p_curtail_mw;
        t.pem_mwh += r.p_pem_mw;
        t.comp_mwh += r.p_comp_mw;
        t.mass_kg += r.mass_kg;
    }
    t.wind_mwh *= step_hours;
    t.wind_to_h2_mwh *= step_hours;
    t.import_mwh *= step_hours;
    t.export_mwh *= step_hours;
    t.curtail_mwh *= step_hours;
    t.pem_mwh *= step_hours;
    t.comp_mwh *= step_hours;
    return t;
}

double intake_cap_mw(const PlantSpec& plant)
{
    return plant.electrolyser.rated_mw;
}

void validate(const DispatchRule& rule, const PlantSpec& plant)
{
    if (rule.n_farms < 1) {
        throw ConfigError("dispatch.n_farms must be at least 1");
    }
    if (rule.variant == DispatchVariant::CurtailmentHarvest) {
        if (!(rule.curtail_threshold_mw >= 0.0 &&
              rule.curtail_threshold_mw <= plant.wind.rated_mw)) {
            throw ConfigError("dispatch.curtail_threshold_mw must lie in [0, wind.rated_mw]");
        }
    } else if (rule.n_farms != 1) {
        throw ConfigError("dispatch.n_farms > 1 requires the CurtailmentHarvest variant");
    }
    if (uses_private_wire(rule.variant) && !(plant.grid.wire_capacity_mw > 0.0)) {
        throw ConfigError(std::string("dispatch variant ") + std::string(to_string(rule.variant)) +
                          " requires grid.wire_capacity_mw > 0");
    }
    if (rule.variant == DispatchVariant::OffGridDirect) {
        if (plant.grid.line_capacity_mw != 0.0) {
            throw ConfigError("OffGridDirect requires grid.line_capacity_mw = 0");
        }
        if (rule.backup == Backup::GridBackup) {
            throw ConfigError("OffGridDirect has no grid connection for back-up imports");
        }
    }
    if ((rule.variant == DispatchVariant::BtmGridFirst ||
         rule.variant == DispatchVariant::BtmPemFirst) &&
        !(plant.grid.line_capacity_mw > 0.0)) {
        throw ConfigError("behind-the-meter variants require grid.line_capacity_mw > 0");
    }
}

FlowRecord dispatch_step(const DispatchRule& rule, std::span<const double> farm_mw,
                         const PlantSpec& plant, double step_hours,
                         const PhysicalConstants& consts)
{
    const bool harvest = rule.variant == DispatchVariant::CurtailmentHarvest;
    const std::size_t expected = harvest ? static_cast<std::size_t>(rule.n_farms) : 1;
    if (farm_mw.size() != expected) {
        throw ConfigError(std::string(to_string(rule.variant)) + " expects " +
                          std::to_string(expected) + " farm value(s), got " +
                          std::to_string(farm_mw.size()));
    }

    const double cap = intake_cap_mw(plant);
    const double line = plant.grid.line_capacity_mw;
    const double wire = plant.grid.wire_capacity_mw;

    FlowRecord r;
    r.p_wind_mw = std::accumulate(farm_mw.begin(), farm_mw.end(), 0.0);
    const double p = r.p_wind_mw;

    switch (rule.variant) {
    case DispatchVariant::GridOnly:
        // No wind asset in this configuration.
        r.p_wind_mw = 0.0;
        break;
    case DispatchVariant::OffGridDirect:
        r.p_h2_wind_mw = std::min({p, cap, wire});
        r.p_curtail_mw = p - r.p_h2_wind_mw;
        break;
    case DispatchVariant::VirtualPpa:
        r.p_h2_wind_mw = std::min(p, cap);
        r.p_curtail_mw = p - r.p_h2_wind_mw;
        break;
    case DispatchVariant::CurtailmentHarvest: {
        double available = 0.0;
        for (double farm : farm_mw) {
            const double excess = std::max(farm - rule.curtail_threshold_mw, 0.0);
            available += excess;
            r.p_export_mw += farm - excess;
        }
        r.p_h2_wind_mw = std::min(available, cap);
        r.p_curtail_mw = available - r.p_h2_wind_mw;
        break;
    }
    case DispatchVariant::BtmGridFirst:
        r.p_export_mw = std::min(p, line);
        r.p_h2_wind_mw = std::min({p - r.p_export_mw, cap, wire});
        r.p_curtail_mw = p - r.p_export_mw - r.p_h2_wind_mw;
        break;
    case DispatchVariant::BtmPemFirst:
        r.p_h2_wind_mw = std::min({p, cap, wire});
        r.p_export_mw = std::min(p - r.p_h2_wind_mw, line);
        r.p_curtail_mw = p - r.p_h2_wind_mw - r.p_export_mw;
        break;
    }

    if (rule.variant == DispatchVariant::GridOnly || rule.backup == Backup::GridBackup) {
        r.p_h2_import_mw = cap - r.p_h2_wind_mw;
    }

    const double intake = r.p_h2_wind_mw + r.p_h2_import_mw;
    const PowerSplit split = split_power(intake, plant.electrolyser, plant.compressor, consts);
    if (intake > 0.0 && split.mass_rate_kg_per_h <= 0.0) {
        // Below cut-in: the electrolyser stays off and its wind share is curtailed.
        r.p_curtail_mw += r.p_h2_wind_mw;
        r.p_h2_wind_mw = 0.0;
        r.p_h2_import_mw = 0.0;
        return r;
    }
    r.p_pem_mw = split.p_pem_mw;
    r.p_comp_mw = split.p_comp_mw;
    r.mass_kg = split.mass_rate_kg_per_h * step_hours;
    return r;
}

FlowLedger simulate_year(const DispatchRule& rule, const PlantSpec& plant,
                         const WindProfile& profile, const PhysicalConstants& consts)
{
    validate(rule, plant);
    const bool harvest = rule.variant == DispatchVariant::CurtailmentHarvest;
    const std::size_t farms = profile.farm_count();
    if (farms == 0) {
        throw ConfigError("simulate_year: profile has no farms");
    }
    if (harvest && farms != 1 && farms != static_cast<std::size_t>(rule.n_farms)) {
        throw ConfigError("simulate_year: profile has " + std::to_string(farms) +
                          " farm columns but the rule expects " + std::to_string(rule.n_farms));
    }
    if (!harvest && farms != 1) {
        throw ConfigError("simulate_year: multi-farm profile requires the CurtailmentHarvest variant");
    }
    if (rule.variant != DispatchVariant::GridOnly &&
        profile.rated_mw > plant.wind.rated_mw * (1.0 + 1e-12)) {
        throw ConfigError("simulate_year: profile rating exceeds wind.rated_mw");
    }

    FlowLedger ledger;
    ledger.step_hours = profile.step_hours;
    ledger.records.reserve(profile.steps());
    std::vector<double> step_values(harvest ? static_cast<std::size_t>(rule.n_farms) : 1);
    for (std::size_t t = 0; t < profile.steps(); ++t) {
        for (std::size_t f = 0; f < step_values.size(); ++f) {
            step_values[f] = profile.farms[farms == 1 ? 0 : f][t];
        }
        try {
            FlowRecord r = dispatch_step(rule, step_values, plant, profile.step_hours, consts);
            r.step = t;
            ledger.records.push_back(r);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("step " + std::to_string(t) + ": " + e.what());
        }
    }
    ledger.totals = accumulate(ledger.records, ledger.step_hours);
    return ledger;
}

void write_ledger_csv(std::ostream& out, const FlowLedger& ledger)
{
    out << "step,p_wind,p_h2_wind,p_import,p_export,p_curtail,p_pem,p_comp,mass_kg\n";
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : ledger.records) {
        out << r.step << ',' << r.p_wind_mw << ',' << r.p_h2_wind_mw << ',' << r.p_h2_import_mw
            << ',' << r.p_export_mw << ',' << r.p_curtail_mw << ',' << r.p_pem_mw << ','
            << r.p_comp_mw << ',' << r.mass_kg << '\n';
    }
    out.precision(old_precision);
}

} // namespace h2path
