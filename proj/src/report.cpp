#include "h2path/report.hpp"

#include "h2path/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

namespace h2path {

using nlohmann::json;

namespace {

std::string fmt(double v)
{
    if (std::isinf(v)) {
        return "inf";
    }
    std::ostringstream ss;
    ss << std::setprecision(10) << v;
    return ss.str();
}

json finite_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

} // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw ConfigError("cannot create directory " + path.parent_path().string() + ": " +
                              ec.message());
        }
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw ConfigError("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw ConfigError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                          ec.message());
    }
}

std::string comparison_csv(std::span<const ScenarioResult> rows)
{
    std::ostringstream out;
    out << "use_case,lcoh_gbp_per_mwh,lcoh_gbp_per_kg,lcoh_free_gbp_per_mwh,annual_h2_t,"
           "stack_life_yr,load_factor_pct,electrolysis_load_factor_pct,share_pem,share_comp,"
           "share_ic,share_elec,c_pem,c_comp,c_ic,c_elec,c_total,export_revenue\n";
    for (const auto& r : rows) {
        const auto& c = r.cost;
        const auto& s = r.summary;
        out << r.id << ',' << fmt(c.lcoh_per_mwh_hhv) << ',' << fmt(c.lcoh_per_kg) << ','
            << (r.free ? fmt(r.free->lcoh_per_mwh_hhv) : "") << ',' << fmt(s.mass_t) << ','
            << fmt(s.stack_life_yr) << ',' << fmt(100.0 * s.load_factor) << ','
            << fmt(100.0 * s.electrolysis_load_factor) << ',' << fmt(c.shares.pem) << ','
            << fmt(c.shares.comp) << ',' << fmt(c.shares.ic) << ',' << fmt(c.shares.elec) << ','
            << fmt(c.c_pem) << ',' << fmt(c.c_comp) << ',' << fmt(c.c_ic) << ','
            << fmt(c.c_elec) << ',' << fmt(c.c_total) << ',' << fmt(c.export_revenue) << '\n';
    }
    return out.str();
}

json to_json(const CostReport& c)
{
    return json{
        {"c_pem", c.c_pem},
        {"c_comp", c.c_comp},
        {"c_ic", c.c_ic},
        {"c_elec", c.c_elec},
        {"c_total", c.c_total},
        {"lcoh_per_kg", c.lcoh_per_kg},
        {"lcoh_per_mwh_hhv", c.lcoh_per_mwh_hhv},
        {"shares",
         {{"pem", c.shares.pem}, {"comp", c.shares.comp}, {"ic", c.shares.ic},
          {"elec", c.shares.elec}}},
        {"export_revenue", c.export_revenue},
    };
}

json to_json(const AnnualSummary& s)
{
    const auto& t = s.totals;
    return json{
        {"mass_t", s.mass_t},
        {"eflh_h", s.eflh_h},
        {"stack_life_yr", finite_or_null(s.stack_life_yr)},
        {"load_factor", s.load_factor},
        {"electrolysis_load_factor", s.electrolysis_load_factor},
        {"energy_mwh",
         {{"wind", t.wind_mwh},
          {"wind_to_h2", t.wind_to_h2_mwh},
          {"import", t.import_mwh},
          {"export", t.export_mwh},
          {"curtail", t.curtail_mwh},
          {"pem", t.pem_mwh},
          {"comp", t.comp_mwh}}},
    };
}

json to_json(const ScenarioResult& r)
{
    json j{{"use_case", r.id}, {"summary", to_json(r.summary)}, {"cost", to_json(r.cost)}};
    j["free"] = r.free ? to_json(*r.free) : json(nullptr);
    return j;
}

json comparison_json(std::span<const ScenarioResult> rows)
{
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back(to_json(r));
    }
    return json{{"rows", arr}};
}

std::string sweep_csv(SweepParam param, std::span<const SweepPoint> points)
{
    std::ostringstream out;
    out << to_string(param) << ",lcoh_gbp_per_mwh,lcoh_gbp_per_kg,annual_h2_t\n";
    for (const auto& p : points) {
        out << fmt(p.value) << ',' << fmt(p.lcoh_per_mwh_hhv) << ',' << fmt(p.lcoh_per_kg) << ','
            << fmt(p.mass_t) << '\n';
    }
    return out.str();
}

json sweep_json(const std::string& scenario_id, SweepParam param,
                std::span<const SweepPoint> points)
{
    json arr = json::array();
    for (const auto& p : points) {
        arr.push_back({{"value", p.value},
                       {"lcoh_per_mwh_hhv", p.lcoh_per_mwh_hhv},
                       {"lcoh_per_kg", p.lcoh_per_kg},
                       {"mass_t", p.mass_t}});
    }
    return json{{"use_case", scenario_id}, {"param", to_string(param)}, {"points", arr}};
}

} // namespace h2path
