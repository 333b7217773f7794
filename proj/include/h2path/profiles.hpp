#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace h2path {

inline constexpr double kDefaultStepHours = 0.5;
inline constexpr double kHoursPerYear = 8760.0;
inline constexpr std::size_t kStepsPerYear = 17520;

// Available wind power per time step for one or more farms of equal rating.
// farms[f][t] is the output of farm f at step t, in MW.
struct WindProfile
{
    double step_hours = kDefaultStepHours;
    double rated_mw = 0.0;
    std::vector<std::vector<double>> farms;

    std::size_t steps() const { return farms.empty() ? 0 : farms.front().size(); }
    std::size_t farm_count() const { return farms.size(); }
    std::span<const double> values(std::size_t farm = 0) const { return farms.at(farm); }

    // mean(values) / rated_mw over every farm and step.
    double capacity_factor() const;
};

struct LoadOptions
{
    // Accept any row count instead of exactly one year of steps.
    bool allow_any_length = false;
};

// Checks value bounds and (unless allowed otherwise) the one-year length.
// Throws ConfigError.
void validate_profile(const WindProfile& profile, bool allow_any_length = false);

WindProfile load_profile(const std::filesystem::path& path, double rated_mw,
                         const LoadOptions& options = {});

void write_profile(const std::filesystem::path& path, const WindProfile& profile);

// AR(1) synthetic wind trace calibrated to target_cf. Pure function of its arguments.
WindProfile synth_profile(double target_cf, double rated_mw, std::uint64_t seed,
                          std::size_t steps = kStepsPerYear,
                          double step_hours = kDefaultStepHours);

// Multiplicative rescale with clamping at rated power, repeated until the
// capacity factor hits target_cf.
WindProfile scale_to_cf(const WindProfile& profile, double target_cf);

// Single-farm profile with the same value at every step.
WindProfile constant_profile(double power_mw, double rated_mw,
                             std::size_t steps = kStepsPerYear,
                             double step_hours = kDefaultStepHours);

} // namespace h2path
