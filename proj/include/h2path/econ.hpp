#pragma once

#include "h2path/dispatch.hpp"
#include "h2path/plantmodel.hpp"

#include <string_view>

namespace h2path {

// Alternative import price (industrial long-run variable cost), £/kWh. Not a default.
inline constexpr double kIndustrialLrvcImportPrice = 0.119;

// How stack replacements enter the annualised electrolyser cost.
enum class ReplacementMode
{
    Single, // one discounted replacement at the stack life
    Multi,  // every replacement falling inside the electrolyser lifetime
};

// Basis for the compressor's capacity in kg/yr.
enum class CompressorCapacityBasis
{
    Realised, // the scenario's annual production
    FullLoad, // production at rated electrolyser power all year
};

// Basis for compressor OPEX.
enum class CompressorOpexBasis
{
    FullCapex,       // fraction of the undiscounted capital cost
    AnnualisedCapex, // fraction of the annualised capital cost
};

std::string_view to_string(ReplacementMode m);
std::string_view to_string(CompressorCapacityBasis b);
std::string_view to_string(CompressorOpexBasis b);
ReplacementMode parse_replacement_mode(std::string_view name);
CompressorCapacityBasis parse_capacity_basis(std::string_view name);
CompressorOpexBasis parse_opex_basis(std::string_view name);

struct EconParams
{
    double discount_rate = 0.03;
    double p_ppa = 0.057;    // £/kWh, wind to hydrogen
    double p_import = 0.184; // £/kWh, grid retail
    double p_export = 0.07;  // £/kWh
    ReplacementMode replacement_mode = ReplacementMode::Single;
    CompressorCapacityBasis comp_capacity_basis = CompressorCapacityBasis::Realised;
    CompressorOpexBasis comp_opex_basis = CompressorOpexBasis::FullCapex;

    bool operator==(const EconParams&) const = default;
};

void validate(const EconParams& econ);

struct CostShares
{
    double pem = 0.0;
    double comp = 0.0;
    double ic = 0.0;
    double elec = 0.0;
};

// Annual costs in £/yr.
struct CostReport
{
    double c_pem = 0.0;
    double c_comp = 0.0;
    double c_ic = 0.0;
    double c_elec = 0.0;
    double c_total = 0.0;
    double lcoh_per_kg = 0.0;
    double lcoh_per_mwh_hhv = 0.0;
    CostShares shares;
    // Exported energy at p_export. Informational; never subtracted from c_total.
    double export_revenue = 0.0;
};

// Physical annual figures behind a cost report.
struct AnnualSummary
{
    double mass_t = 0.0;
    double eflh_h = 0.0;
    double stack_life_yr = 0.0;
    // Hydrogen-side intake (electrolysis + compression) over rated power and year length.
    double load_factor = 0.0;
    // Electrolysis energy only; equals EFLH over year length.
    double electrolysis_load_factor = 0.0;
    FlowTotals totals;
};

// Capital recovery factor d(1+d)^n / ((1+d)^n - 1).
double crf(double d, double n);

double pem_annual_cost(const Electrolyser& el, double stack_life_years, double d,
                       ReplacementMode mode = ReplacementMode::Single);

double comp_annual_cost(const Compressor& comp, double annual_capacity_kg, double d,
                        CompressorOpexBasis opex_basis = CompressorOpexBasis::FullCapex);

double ic_annual_cost(const GridConnection& grid, double d);

double elec_annual_cost(const FlowTotals& totals, const EconParams& prices);

struct Lcoh
{
    double per_kg = 0.0;
    double per_mwh_hhv = 0.0;
};

// Throws UndefinedLcohError when annual_mass_kg is not positive.
Lcoh lcoh(double c_total, double annual_mass_kg, const PhysicalConstants& consts = {});

AnnualSummary summarise(const FlowLedger& ledger, const PlantSpec& plant);

// Full cost decomposition for a simulated year.
CostReport evaluate_costs(const PlantSpec& plant, const EconParams& econ,
                          const FlowLedger& ledger, const PhysicalConstants& consts = {});

} // namespace h2path
