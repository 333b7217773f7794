#include "h2path/econ.hpp"

#include "h2path/errors.hpp"

#include <cmath>
#include <string>

namespace h2path {

std::string_view to_string(ReplacementMode m)
{
    return m == ReplacementMode::Multi ? "multi" : "single";
}

std::string_view to_string(CompressorCapacityBasis b)
{
    return b == CompressorCapacityBasis::FullLoad ? "full_load" : "realised";
}

std::string_view to_string(CompressorOpexBasis b)
{
    return b == CompressorOpexBasis::AnnualisedCapex ? "annualised_capex" : "full_capex";
}

ReplacementMode parse_replacement_mode(std::string_view name)
{
    if (name == "single") return ReplacementMode::Single;
    if (name == "multi") return ReplacementMode::Multi;
    throw ConfigError("unknown replacement mode '" + std::string(name) + "'");
}

CompressorCapacityBasis parse_capacity_basis(std::string_view name)
{
    if (name == "realised") return CompressorCapacityBasis::Realised;
    if (name == "full_load") return CompressorCapacityBasis::FullLoad;
    throw ConfigError("unknown compressor capacity basis '" + std::string(name) + "'");
}

CompressorOpexBasis parse_opex_basis(std::string_view name)
{
    if (name == "full_capex") return CompressorOpexBasis::FullCapex;
    if (name == "annualised_capex") return CompressorOpexBasis::AnnualisedCapex;
    throw ConfigError("unknown compressor opex basis '" + std::string(name) + "'");
}

void validate(const EconParams& econ)
{
    if (!(econ.discount_rate > 0.0)) {
        throw ConfigError("econ.discount_rate must be positive");
    }
    if (!(econ.p_ppa >= 0.0 && econ.p_import >= 0.0 && econ.p_export >= 0.0)) {
        throw ConfigError("econ prices must be non-negative");
    }
}

double crf(double d, double n)
{
    const double growth = std::pow(1.0 + d, n);
    return d * growth / (growth - 1.0);
}

double pem_annual_cost(const Electrolyser& el, double stack_life_years, double d,
                       ReplacementMode mode)
{
    const double replace_per_kw = el.stack_replace_frac_of_capex * el.capex_per_kw;
    double levelised_replacement = 0.0;
    if (std::isfinite(stack_life_years)) {
        if (mode == ReplacementMode::Single) {
            levelised_replacement = replace_per_kw / std::pow(1.0 + d, stack_life_years);
        } else {
            for (int k = 1; k * stack_life_years < el.lifetime_years; ++k) {
                levelised_replacement += replace_per_kw / std::pow(1.0 + d, k * stack_life_years);
            }
        }
    }
    const double annualised_capex =
        (el.capex_per_kw + levelised_replacement) * crf(d, el.lifetime_years);
    const double opex = el.opex_frac_of_capex_per_year * el.capex_per_kw;
    return el.rated_mw * 1000.0 * (annualised_capex + opex);
}

double comp_annual_cost(const Compressor& comp, double annual_capacity_kg, double d,
                        CompressorOpexBasis opex_basis)
{
    const double capex = comp.capex_per_kg_annual * annual_capacity_kg;
    const double annualised = capex * crf(d, comp.lifetime_years);
    const double opex_base = opex_basis == CompressorOpexBasis::FullCapex ? capex : annualised;
    return annualised + comp.opex_frac_of_capex_per_year * opex_base;
}

double ic_annual_cost(const GridConnection& grid, double d)
{
    const double factor = crf(d, grid.ic_lifetime_years);
    const double line =
        grid.line_cost_share_h2 * grid.line_capacity_mw * 1000.0 * grid.line_cost_per_kw;
    const double wire =
        grid.wire_cost_share_h2 * grid.wire_capacity_mw * 1000.0 * grid.wire_cost_per_kw;
    return (line + wire) * factor;
}

double elec_annual_cost(const FlowTotals& totals, const EconParams& prices)
{
    return totals.wind_to_h2_mwh * 1000.0 * prices.p_ppa +
           totals.import_mwh * 1000.0 * prices.p_import;
}

Lcoh lcoh(double c_total, double annual_mass_kg, const PhysicalConstants& consts)
{
    if (!(annual_mass_kg > 0.0)) {
        throw UndefinedLcohError("LCOH undefined: annual hydrogen production is zero");
    }
    return {c_total / annual_mass_kg,
            c_total / (annual_mass_kg * consts.hhv_kwh_per_kg / 1000.0)};
}

AnnualSummary summarise(const FlowLedger& ledger, const PlantSpec& plant)
{
    AnnualSummary s;
    s.totals = ledger.totals;
    s.mass_t = ledger.totals.mass_kg / 1000.0;
    s.eflh_h = equivalent_full_load_hours(ledger.totals.pem_mwh, plant.electrolyser);
    s.stack_life_yr = stack_life_years(ledger.totals.pem_mwh, plant.electrolyser);
    const double hours = ledger.hours();
    if (hours > 0.0) {
        s.load_factor = (ledger.totals.pem_mwh + ledger.totals.comp_mwh) /
                        (plant.electrolyser.rated_mw * hours);
        s.electrolysis_load_factor = s.eflh_h / hours;
    }
    return s;
}

CostReport evaluate_costs(const PlantSpec& plant, const EconParams& econ,
                          const FlowLedger& ledger, const PhysicalConstants& consts)
{
    const double d = econ.discount_rate;
    const double life = stack_life_years(ledger.totals.pem_mwh, plant.electrolyser);

    double capacity_kg = ledger.totals.mass_kg;
    if (econ.comp_capacity_basis == CompressorCapacityBasis::FullLoad) {
        const PowerSplit full =
            split_power(intake_cap_mw(plant), plant.electrolyser, plant.compressor, consts);
        capacity_kg = full.mass_rate_kg_per_h * ledger.hours();
    }

    CostReport r;
    r.c_pem = pem_annual_cost(plant.electrolyser, life, d, econ.replacement_mode);
    r.c_comp = comp_annual_cost(plant.compressor, capacity_kg, d, econ.comp_opex_basis);
    r.c_ic = ic_annual_cost(plant.grid, d);
    r.c_elec = elec_annual_cost(ledger.totals, econ);
    r.c_total = r.c_pem + r.c_comp + r.c_ic + r.c_elec;
    r.export_revenue = ledger.totals.export_mwh * 1000.0 * econ.p_export;

    const Lcoh unit = lcoh(r.c_total, ledger.totals.mass_kg, consts);
    r.lcoh_per_kg = unit.per_kg;
    r.lcoh_per_mwh_hhv = unit.per_mwh_hhv;
    if (r.c_total > 0.0) {
        r.shares = {r.c_pem / r.c_total, r.c_comp / r.c_total, r.c_ic / r.c_total,
                    r.c_elec / r.c_total};
    }
    return r;
}

} // namespace h2path
