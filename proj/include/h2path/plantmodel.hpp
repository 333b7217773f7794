#pragma once

#include <filesystem>
#include <limits>
#include <utility>
#include <vector>

namespace h2path {

struct PhysicalConstants
{
    double lhv_kwh_per_kg = 33.3;
    double hhv_kwh_per_kg = 39.4;
};

// Electrolyser efficiency (LHV basis) as a piecewise-linear function of load fraction.
class EfficiencyCurve
{
public:
    struct Point
    {
        double load_fraction;
        double efficiency;

        bool operator==(const Point&) const = default;
    };

    EfficiencyCurve() : EfficiencyCurve(constant(kDefaultEfficiency)) {}

    // Throws ConfigError unless load fractions are strictly increasing within
    // [0, 1] and every efficiency lies in (0, 1].
    explicit EfficiencyCurve(std::vector<Point> points);

    static EfficiencyCurve constant(double efficiency);

    const std::vector<Point>& points() const { return points_; }

    // Interpolated efficiency; held flat outside the tabulated range.
    double at(double load_fraction) const;

    // Pointwise multiplication by (1 + uplift), capped at 1.
    EfficiencyCurve uplifted(double uplift) const;

    bool operator==(const EfficiencyCurve&) const = default;

    // Full-load LHV efficiency that reproduces the grid-only benchmark output.
    static constexpr double kDefaultEfficiency = 0.6746;

private:
    std::vector<Point> points_;
};

// CSV with header `load_fraction,efficiency`.
EfficiencyCurve load_efficiency_curve(const std::filesystem::path& path);

struct Electrolyser
{
    double rated_mw = 10.0;
    double lifetime_years = 30.0;
    double capex_per_kw = 1500.0;
    double opex_frac_of_capex_per_year = 0.05;
    double stack_life_hours = 60000.0;
    double stack_replace_frac_of_capex = 0.48;
    EfficiencyCurve curve;
    double min_load_fraction = 0.0;

    bool operator==(const Electrolyser&) const = default;
};

struct Compressor
{
    double capex_per_kg_annual = 2.49;
    double opex_frac_of_capex_per_year = 0.06;
    double energy_kwh_per_kg = 0.399;
    double lifetime_years = 30.0;

    bool operator==(const Compressor&) const = default;
};

struct GridConnection
{
    double line_capacity_mw = 0.0;
    double line_cost_per_kw = 100.0;
    double line_cost_share_h2 = 1.0;
    double wire_capacity_mw = 0.0;
    double wire_cost_per_kw = 15.0;
    double wire_cost_share_h2 = 1.0;
    double ic_lifetime_years = 30.0;

    bool operator==(const GridConnection&) const = default;
};

// Wind cost fields are carried for reporting only; they are not part of the hydrogen cost.
struct WindPlant
{
    double rated_mw = 10.0;
    double lifetime_years = 25.0;
    double capex_per_kw = 1230.0;
    double opex_per_kw_year = 25.4;

    bool operator==(const WindPlant&) const = default;
};

struct PlantSpec
{
    WindPlant wind;
    Electrolyser electrolyser;
    Compressor compressor;
    GridConnection grid;

    bool operator==(const PlantSpec&) const = default;
};

// Throws ConfigError on the first violated invariant.
void validate(const Electrolyser& el);
void validate(const Compressor& comp);
void validate(const GridConnection& grid);
void validate(const WindPlant& wind);

// Efficiency at the given load, zero below the cut-in load.
double efficiency_at(const EfficiencyCurve& curve, double load_fraction,
                     double min_load_fraction = 0.0);

struct PowerSplit
{
    double p_pem_mw = 0.0;
    double p_comp_mw = 0.0;
    double mass_rate_kg_per_h = 0.0;
    int iterations = 0;
};

inline constexpr double kSplitTolerance = 1e-9;
inline constexpr int kMaxSplitIterations = 50;

// Divides a hydrogen-side intake between electrolysis and compression so that the
// compressor draws exactly what the resulting production rate requires.
// Throws ConvergenceError if the substitution does not settle within 50 iterations.
PowerSplit split_power(double p_h2_mw, const Electrolyser& el, const Compressor& comp,
                       const PhysicalConstants& consts = {}, double tol = kSplitTolerance);

// Hydrogen produced in one step, kg.
double hydrogen_mass(double p_pem_mw, double step_hours, double efficiency,
                     const PhysicalConstants& consts = {});

// Equivalent full-load hours from annual electrolysis energy.
double equivalent_full_load_hours(double annual_p_pem_mwh, const Electrolyser& el);

// Stack life in years; +infinity when the electrolyser never runs.
double stack_life_years(double annual_p_pem_mwh, const Electrolyser& el);

inline constexpr double kInfiniteLife = std::numeric_limits<double>::infinity();

} // namespace h2path
