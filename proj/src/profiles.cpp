#include "h2path/profiles.hpp"

#include "h2path/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

namespace h2path {

namespace {

// Overshoot above rating tolerated (and clamped) on load, as a fraction of rated power.
constexpr double kClampTolerance = 1e-3;
constexpr int kMaxCalibrationIterations = 100;

// Half-hourly persistence of the latent wind process and its spread in
// capacity-factor units.
constexpr double kPersistence = 0.97;
constexpr double kSpread = 0.5;

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(trim(cell));
    }
    return cells;
}

double parse_number(const std::string& text, std::size_t line_no)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("profile line " + std::to_string(line_no) + ": cannot parse '" + text +
                          "' as a number");
    }
}

std::size_t expected_steps(double step_hours)
{
    return static_cast<std::size_t>(std::llround(kHoursPerYear / step_hours));
}

} // namespace

double WindProfile::capacity_factor() const
{
    if (rated_mw <= 0.0 || steps() == 0) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& farm : farms) {
        for (double v : farm) {
            sum += v;
        }
    }
    return sum / (static_cast<double>(steps() * farm_count()) * rated_mw);
}

void validate_profile(const WindProfile& profile, bool allow_any_length)
{
    if (!(profile.rated_mw > 0.0)) {
        throw ConfigError("profile: rated_mw must be positive");
    }
    if (!(profile.step_hours > 0.0)) {
        throw ConfigError("profile: step_hours must be positive");
    }
    if (profile.farms.empty() || profile.steps() == 0) {
        throw ConfigError("profile: no values");
    }
    for (std::size_t f = 0; f < profile.farms.size(); ++f) {
        const auto& farm = profile.farms[f];
        if (farm.size() != profile.steps()) {
            throw ConfigError("profile: farm columns differ in length");
        }
        for (std::size_t t = 0; t < farm.size(); ++t) {
            if (!(farm[t] >= 0.0 && farm[t] <= profile.rated_mw)) {
                throw ConfigError("profile: value " + std::to_string(farm[t]) + " at step " +
                                  std::to_string(t) + " outside [0, rated_mw]");
            }
        }
    }
    if (!allow_any_length && profile.steps() != expected_steps(profile.step_hours)) {
        throw ConfigError("profile: expected " + std::to_string(expected_steps(profile.step_hours)) +
                          " steps for one year, got " + std::to_string(profile.steps()));
    }
}

WindProfile load_profile(const std::filesystem::path& path, double rated_mw,
                         const LoadOptions& options)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("profile: cannot open " + path.string());
    }
    if (!(rated_mw > 0.0)) {
        throw ConfigError("profile: rated_mw must be positive");
    }

    WindProfile profile;
    profile.rated_mw = rated_mw;

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t columns = 0;
    std::size_t clamped = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (text.front() == '#') {
            const auto eq = text.find("step_hours=");
            if (eq != std::string::npos) {
                profile.step_hours = parse_number(trim(text.substr(eq + 11)), line_no);
            }
            continue;
        }
        const auto cells = split_csv(text);
        if (!have_header) {
            if (cells.size() < 2 || cells[0] != "step_index") {
                throw ConfigError("profile: header must start with 'step_index,power_mw'");
            }
            columns = cells.size() - 1;
            profile.farms.assign(columns, {});
            have_header = true;
            continue;
        }
        if (cells.size() != columns + 1) {
            throw ConfigError("profile line " + std::to_string(line_no) + ": expected " +
                              std::to_string(columns + 1) + " columns");
        }
        for (std::size_t c = 0; c < columns; ++c) {
            double v = parse_number(cells[c + 1], line_no);
            if (v < 0.0) {
                throw ConfigError("profile line " + std::to_string(line_no) + ": negative power " +
                                  cells[c + 1]);
            }
            if (v > rated_mw) {
                if (v > rated_mw * (1.0 + kClampTolerance)) {
                    throw ConfigError("profile line " + std::to_string(line_no) + ": power " +
                                      cells[c + 1] + " exceeds rated " + std::to_string(rated_mw));
                }
                v = rated_mw;
                ++clamped;
            }
            profile.farms[c].push_back(v);
        }
    }
    if (!have_header) {
        throw ConfigError("profile: " + path.string() + " is empty");
    }
    if (clamped > 0) {
        std::cerr << "warning: " << path.string() << ": clamped " << clamped
                  << " value(s) slightly above rated power\n";
    }
    validate_profile(profile, options.allow_any_length);
    return profile;
}

void write_profile(const std::filesystem::path& path, const WindProfile& profile)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("profile: cannot write " + path.string());
    }
    out << "# step_hours=" << profile.step_hours << '\n';
    out << "step_index";
    if (profile.farm_count() == 1) {
        out << ",power_mw";
    } else {
        for (std::size_t f = 0; f < profile.farm_count(); ++f) {
            out << ",power_mw_" << (f + 1);
        }
    }
    out << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t t = 0; t < profile.steps(); ++t) {
        out << t;
        for (const auto& farm : profile.farms) {
            out << ',' << farm[t];
        }
        out << '\n';
    }
}

WindProfile synth_profile(double target_cf, double rated_mw, std::uint64_t seed,
                          std::size_t steps, double step_hours)
{
    if (!(target_cf >= 0.0 && target_cf <= 1.0)) {
        throw ConfigError("synth_profile: target_cf must lie in [0, 1]");
    }
    if (!(rated_mw > 0.0) || steps == 0) {
        throw ConfigError("synth_profile: rated_mw and steps must be positive");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> latent(steps);
    const double innovation = std::sqrt(1.0 - kPersistence * kPersistence);
    latent[0] = noise(rng);
    for (std::size_t t = 1; t < steps; ++t) {
        latent[t] = kPersistence * latent[t - 1] + innovation * noise(rng);
    }

    const auto [min_it, max_it] = std::minmax_element(latent.begin(), latent.end());
    // Offsets at which every sample clamps to zero / to rated power.
    const double all_zero = -kSpread * *max_it;
    const double all_rated = 1.0 - kSpread * *min_it;

    auto level = [&](double offset, double x) {
        return std::clamp(offset + kSpread * x, 0.0, 1.0);
    };
    auto cf_at = [&](double offset, double& slope) {
        double sum = 0.0;
        std::size_t free = 0;
        for (double x : latent) {
            const double u = offset + kSpread * x;
            if (u > 0.0 && u < 1.0) {
                ++free;
            }
            sum += std::clamp(u, 0.0, 1.0);
        }
        slope = static_cast<double>(free) / static_cast<double>(steps);
        return sum / static_cast<double>(steps);
    };

    double offset;
    if (target_cf >= 1.0) {
        offset = all_rated;
    } else if (target_cf <= 0.0) {
        offset = all_zero;
    } else {
        // Safeguarded Newton on the offset: cf(offset) is piecewise linear and nondecreasing.
        double lo = all_zero;
        double hi = all_rated;
        offset = target_cf - 0.5 * kSpread * (*min_it + *max_it);
        offset = std::clamp(offset, lo, hi);
        bool converged = false;
        for (int it = 0; it < kMaxCalibrationIterations; ++it) {
            double slope = 0.0;
            const double err = cf_at(offset, slope) - target_cf;
            if (std::abs(err) <= 1e-13) {
                converged = true;
                break;
            }
            (err > 0.0 ? hi : lo) = offset;
            double next = slope > 0.0 ? offset - err / slope : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
            }
            offset = next;
        }
        double slope = 0.0;
        if (!converged && std::abs(cf_at(offset, slope) - target_cf) > 1e-3 * target_cf) {
            throw ConfigError("synth_profile: capacity factor " + std::to_string(target_cf) +
                              " unreachable after " + std::to_string(kMaxCalibrationIterations) +
                              " iterations");
        }
    }

    WindProfile profile;
    profile.step_hours = step_hours;
    profile.rated_mw = rated_mw;
    profile.farms.assign(1, std::vector<double>(steps));
    for (std::size_t t = 0; t < steps; ++t) {
        profile.farms[0][t] = rated_mw * level(offset, latent[t]);
    }
    return profile;
}

WindProfile scale_to_cf(const WindProfile& profile, double target_cf)
{
    if (!(target_cf > 0.0 && target_cf <= 1.0)) {
        throw ConfigError("scale_to_cf: target_cf must lie in (0, 1]");
    }
    validate_profile(profile, true);
    if (profile.capacity_factor() <= 0.0) {
        throw ConfigError("scale_to_cf: cannot rescale an all-zero profile");
    }

    auto scaled = [&](double k) {
        WindProfile out = profile;
        for (auto& farm : out.farms) {
            for (double& v : farm) {
                v = std::min(profile.rated_mw, v * k);
            }
        }
        return out;
    };

    double k = 1.0;
    WindProfile out = profile;
    for (int it = 0; it < kMaxCalibrationIterations; ++it) {
        const double cf = out.capacity_factor();
        if (std::abs(cf / target_cf - 1.0) <= 1e-12) {
            return out;
        }
        k *= target_cf / cf;
        out = scaled(k);
    }
    if (std::abs(out.capacity_factor() / target_cf - 1.0) > 1e-3) {
        throw ConfigError("scale_to_cf: target capacity factor " + std::to_string(target_cf) +
                          " is infeasible for this profile shape");
    }
    return out;
}

WindProfile constant_profile(double power_mw, double rated_mw, std::size_t steps,
                             double step_hours)
{
    WindProfile profile;
    profile.step_hours = step_hours;
    profile.rated_mw = rated_mw;
    profile.farms.assign(1, std::vector<double>(steps, power_mw));
    return profile;
}

} // namespace h2path
