#include "h2path/plantmodel.hpp"

#include "h2path/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace h2path {

EfficiencyCurve::EfficiencyCurve(std::vector<Point> points) : points_(std::move(points))
{
    if (points_.empty()) {
        throw ConfigError("efficiency curve: no points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!(p.load_fraction >= 0.0 && p.load_fraction <= 1.0)) {
            throw ConfigError("efficiency curve: load fraction outside [0, 1]");
        }
        if (!(p.efficiency > 0.0 && p.efficiency <= 1.0)) {
            throw ConfigError("efficiency curve: efficiency outside (0, 1]");
        }
        if (i > 0 && !(p.load_fraction > points_[i - 1].load_fraction)) {
            throw ConfigError("efficiency curve: load fractions must be strictly increasing");
        }
    }
}

EfficiencyCurve EfficiencyCurve::constant(double efficiency)
{
    return EfficiencyCurve({{0.0, efficiency}, {1.0, efficiency}});
}

double EfficiencyCurve::at(double load_fraction) const
{
    if (load_fraction <= points_.front().load_fraction) {
        return points_.front().efficiency;
    }
    if (load_fraction >= points_.back().load_fraction) {
        return points_.back().efficiency;
    }
    const auto upper = std::upper_bound(
        points_.begin(), points_.end(), load_fraction,
        [](double x, const Point& p) { return x < p.load_fraction; });
    const auto lower = upper - 1;
    const double w = (load_fraction - lower->load_fraction) /
                     (upper->load_fraction - lower->load_fraction);
    return lower->efficiency + w * (upper->efficiency - lower->efficiency);
}

EfficiencyCurve EfficiencyCurve::uplifted(double uplift) const
{
    std::vector<Point> out = points_;
    for (auto& p : out) {
        p.efficiency = std::min(1.0, p.efficiency * (1.0 + uplift));
    }
    return EfficiencyCurve(std::move(out));
}

EfficiencyCurve load_efficiency_curve(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("efficiency curve: cannot open " + path.string());
    }
    std::vector<EfficiencyCurve::Point> points;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (header) {
            if (line.rfind("load_fraction,efficiency", 0) != 0) {
                throw ConfigError("efficiency curve: header must be 'load_fraction,efficiency'");
            }
            header = false;
            continue;
        }
        std::stringstream ss(line);
        EfficiencyCurve::Point p{};
        char comma = 0;
        if (!(ss >> p.load_fraction >> comma >> p.efficiency) || comma != ',') {
            throw ConfigError("efficiency curve: cannot parse row '" + line + "'");
        }
        points.push_back(p);
    }
    return EfficiencyCurve(std::move(points));
}

void validate(const Electrolyser& el)
{
    if (!(el.rated_mw > 0.0)) {
        throw ConfigError("electrolyser.rated_mw must be positive");
    }
    if (!(el.lifetime_years >= 1.0)) {
        throw ConfigError("electrolyser.lifetime_years must be at least 1");
    }
    if (!(el.stack_life_hours > 0.0)) {
        throw ConfigError("electrolyser.stack_life_hours must be positive");
    }
    if (!(el.stack_replace_frac_of_capex > 0.0 && el.stack_replace_frac_of_capex <= 1.0)) {
        throw ConfigError("electrolyser.stack_replace_frac_of_capex must lie in (0, 1]");
    }
    if (!(el.capex_per_kw >= 0.0 && el.opex_frac_of_capex_per_year >= 0.0)) {
        throw ConfigError("electrolyser costs must be non-negative");
    }
    if (!(el.min_load_fraction >= 0.0 && el.min_load_fraction < 1.0)) {
        throw ConfigError("electrolyser.min_load_fraction must lie in [0, 1)");
    }
}

void validate(const Compressor& comp)
{
    if (!(comp.energy_kwh_per_kg >= 0.0)) {
        throw ConfigError("compressor.energy_kwh_per_kg must be non-negative");
    }
    if (!(comp.lifetime_years >= 1.0)) {
        throw ConfigError("compressor.lifetime_years must be at least 1");
    }
    if (!(comp.capex_per_kg_annual >= 0.0 && comp.opex_frac_of_capex_per_year >= 0.0)) {
        throw ConfigError("compressor costs must be non-negative");
    }
}

void validate(const GridConnection& grid)
{
    if (!(grid.line_capacity_mw >= 0.0 && grid.wire_capacity_mw >= 0.0)) {
        throw ConfigError("grid capacities must be non-negative");
    }
    auto is_share = [](double s) { return s >= 0.0 && s <= 1.0; };
    if (!is_share(grid.line_cost_share_h2) || !is_share(grid.wire_cost_share_h2)) {
        throw ConfigError("grid cost shares must lie in [0, 1]");
    }
    if (!(grid.line_cost_per_kw >= 0.0 && grid.wire_cost_per_kw >= 0.0)) {
        throw ConfigError("grid costs must be non-negative");
    }
    if (!(grid.ic_lifetime_years >= 1.0)) {
        throw ConfigError("grid.ic_lifetime_years must be at least 1");
    }
}

void validate(const WindPlant& wind)
{
    if (!(wind.rated_mw > 0.0)) {
        throw ConfigError("wind.rated_mw must be positive");
    }
}

double efficiency_at(const EfficiencyCurve& curve, double load_fraction,
                     double min_load_fraction)
{
    if (load_fraction <= 0.0 || load_fraction < min_load_fraction) {
        return 0.0;
    }
    return curve.at(std::min(load_fraction, 1.0));
}

PowerSplit split_power(double p_h2_mw, const Electrolyser& el, const Compressor& comp,
                       const PhysicalConstants& consts, double tol)
{
    PowerSplit split;
    if (p_h2_mw <= 0.0) {
        return split;
    }
    auto mass_rate = [&](double p_pem) {
        const double eta = efficiency_at(el.curve, p_pem / el.rated_mw, el.min_load_fraction);
        return 1000.0 * p_pem * eta / consts.lhv_kwh_per_kg;
    };

    // All power to electrolysis first, then repeatedly deduct the compression load
    // implied by the resulting production.
    double p_pem = p_h2_mw;
    for (int it = 1; it <= kMaxSplitIterations; ++it) {
        const double p_comp = mass_rate(p_pem) * comp.energy_kwh_per_kg / 1000.0;
        const double next = p_h2_mw - p_comp;
        const bool done = std::abs(next - p_pem) <= tol;
        p_pem = next;
        if (done) {
            split.iterations = it;
            split.p_pem_mw = p_pem;
            split.mass_rate_kg_per_h = mass_rate(p_pem);
            split.p_comp_mw = split.mass_rate_kg_per_h * comp.energy_kwh_per_kg / 1000.0;
            return split;
        }
    }
    throw ConvergenceError("split_power: no convergence within " +
                           std::to_string(kMaxSplitIterations) + " iterations at " +
                           std::to_string(p_h2_mw) + " MW");
}

double hydrogen_mass(double p_pem_mw, double step_hours, double efficiency,
                     const PhysicalConstants& consts)
{
    return 1000.0 * p_pem_mw * step_hours * efficiency / consts.lhv_kwh_per_kg;
}

double equivalent_full_load_hours(double annual_p_pem_mwh, const Electrolyser& el)
{
    return annual_p_pem_mwh / el.rated_mw;
}

double stack_life_years(double annual_p_pem_mwh, const Electrolyser& el)
{
    const double eflh = equivalent_full_load_hours(annual_p_pem_mwh, el);
    if (eflh <= 0.0) {
        return kInfiniteLife;
    }
    return el.stack_life_hours / eflh;
}

} // namespace h2path
