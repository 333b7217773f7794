#include "h2path/scenarios.hpp"

#include "h2path/errors.hpp"
#include "h2path/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <string>

namespace h2path {

using nlohmann::json;

namespace {

ScenarioConfig base_config(std::string id)
{
    ScenarioConfig c;
    c.id = std::move(id);
    return c;
}

ScenarioConfig make_preset(std::string_view id)
{
    ScenarioConfig c = base_config(std::string(id));
    auto& grid = c.plant.grid;
    auto& rule = c.rule;

    if (id == "I") {
        rule.variant = DispatchVariant::GridOnly;
        grid.line_capacity_mw = 10.0;
        grid.line_cost_share_h2 = 1.0;
    } else if (id == "II") {
        rule.variant = DispatchVariant::OffGridDirect;
        grid.line_capacity_mw = 0.0;
        grid.wire_capacity_mw = 10.0;
        grid.wire_cost_share_h2 = 1.0;
    } else if (id == "III-a" || id == "III-b") {
        rule.variant = DispatchVariant::VirtualPpa;
        rule.backup = id == "III-b" ? Backup::GridBackup : Backup::None;
        grid.line_capacity_mw = 10.0;
        grid.line_cost_share_h2 = 1.0;
    } else if (id == "IV-a" || id == "IV-b") {
        rule.variant = DispatchVariant::CurtailmentHarvest;
        rule.backup = id == "IV-b" ? Backup::GridBackup : Backup::None;
        rule.curtail_threshold_mw = 8.0;
        rule.n_farms = 5;
        // Each farm's 8 MW export line; its cost sits with the wind developers.
        grid.line_capacity_mw = 8.0;
        grid.line_cost_share_h2 = 0.0;
    } else if (id == "V-a" || id == "V-b-i" || id == "V-b-ii") {
        const bool grid_first = id == "V-a";
        rule.variant = grid_first ? DispatchVariant::BtmGridFirst : DispatchVariant::BtmPemFirst;
        rule.backup = id == "V-b-ii" ? Backup::GridBackup : Backup::None;
        c.plant.electrolyser.rated_mw = 5.0;
        grid.line_capacity_mw = 5.0;
        grid.line_cost_share_h2 = grid_first ? 0.0 : 0.5;
        grid.wire_capacity_mw = 5.0;
        grid.wire_cost_share_h2 = 0.5;
        c.econ.p_export = grid_first ? 0.07 : 0.044;
    } else {
        throw ConfigError("unknown preset '" + std::string(id) + "'");
    }
    return c;
}

// Reads known keys from an object, rejecting anything else.
class ObjectReader
{
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) {
            throw ConfigError("scenario: '" + path_ + "' must be an object");
        }
    }

    void number(const char* key, double& out)
    {
        seen_.emplace_back(key);
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_number()) {
                throw ConfigError("scenario: '" + path_ + "." + key + "' must be a number");
            }
            out = it->get<double>();
        }
    }

    void integer(const char* key, int& out)
    {
        seen_.emplace_back(key);
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_number_integer()) {
                throw ConfigError("scenario: '" + path_ + "." + key + "' must be an integer");
            }
            out = it->get<int>();
        }
    }

    template <typename Parse>
    void text(const char* key, Parse&& parse)
    {
        seen_.emplace_back(key);
        if (auto it = j_.find(key); it != j_.end()) {
            if (!it->is_string()) {
                throw ConfigError("scenario: '" + path_ + "." + key + "' must be a string");
            }
            parse(it->get<std::string>());
        }
    }

    const json* raw(const char* key)
    {
        seen_.emplace_back(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void finish() const
    {
        for (const auto& [key, value] : j_.items()) {
            if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
                throw ConfigError("scenario: unknown key '" + path_ + "." + key + "'");
            }
        }
    }

private:
    const json& j_;
    std::string path_;
    std::vector<std::string> seen_;
};

json curve_to_json(const EfficiencyCurve& curve)
{
    json points = json::array();
    for (const auto& p : curve.points()) {
        points.push_back({p.load_fraction, p.efficiency});
    }
    return points;
}

EfficiencyCurve curve_from_json(const json& j)
{
    if (!j.is_array()) {
        throw ConfigError("scenario: electrolyser.efficiency_curve must be an array of pairs");
    }
    std::vector<EfficiencyCurve::Point> points;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw ConfigError("scenario: efficiency curve points must be [load, efficiency]");
        }
        points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return EfficiencyCurve(std::move(points));
}

double parse_double(std::string_view key, std::string_view text)
{
    try {
        std::size_t used = 0;
        const std::string s(text);
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("override '" + std::string(key) + "': cannot parse '" +
                          std::string(text) + "' as a number");
    }
}

bool near(double a, double b)
{
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

} // namespace

void validate(const ScenarioConfig& config)
{
    if (config.id.empty()) {
        throw ConfigError("scenario id must not be empty");
    }
    validate(config.plant.wind);
    validate(config.plant.electrolyser);
    validate(config.plant.compressor);
    validate(config.plant.grid);
    validate(config.rule, config.plant);
    validate(config.econ);
}

const std::vector<std::string>& preset_ids()
{
    static const std::vector<std::string> ids{"I",    "II",   "III-a", "III-b", "IV-a",
                                              "IV-b", "V-a",  "V-b-i", "V-b-ii"};
    return ids;
}

ScenarioConfig preset(std::string_view id)
{
    ScenarioConfig c = make_preset(id);
    validate(c);
    return c;
}

WindProfile reference_profile()
{
    return synth_profile(kReferenceCapacityFactor, WindPlant{}.rated_mw, kReferenceSeed);
}

json to_json(const ScenarioConfig& c)
{
    const auto& w = c.plant.wind;
    const auto& el = c.plant.electrolyser;
    const auto& comp = c.plant.compressor;
    const auto& g = c.plant.grid;
    return json{
        {"id", c.id},
        {"profile_ref", c.profile_ref},
        {"wind",
         {{"rated_mw", w.rated_mw},
          {"lifetime_years", w.lifetime_years},
          {"capex_per_kw", w.capex_per_kw},
          {"opex_per_kw_year", w.opex_per_kw_year}}},
        {"electrolyser",
         {{"rated_mw", el.rated_mw},
          {"lifetime_years", el.lifetime_years},
          {"capex_per_kw", el.capex_per_kw},
          {"opex_frac_of_capex_per_year", el.opex_frac_of_capex_per_year},
          {"stack_life_hours", el.stack_life_hours},
          {"stack_replace_frac_of_capex", el.stack_replace_frac_of_capex},
          {"efficiency_curve", curve_to_json(el.curve)},
          {"min_load_fraction", el.min_load_fraction}}},
        {"compressor",
         {{"capex_per_kg_annual", comp.capex_per_kg_annual},
          {"opex_frac_of_capex_per_year", comp.opex_frac_of_capex_per_year},
          {"energy_kwh_per_kg", comp.energy_kwh_per_kg},
          {"lifetime_years", comp.lifetime_years}}},
        {"grid",
         {{"line_capacity_mw", g.line_capacity_mw},
          {"line_cost_per_kw", g.line_cost_per_kw},
          {"line_cost_share_h2", g.line_cost_share_h2},
          {"wire_capacity_mw", g.wire_capacity_mw},
          {"wire_cost_per_kw", g.wire_cost_per_kw},
          {"wire_cost_share_h2", g.wire_cost_share_h2},
          {"ic_lifetime_years", g.ic_lifetime_years}}},
        {"dispatch",
         {{"variant", to_string(c.rule.variant)},
          {"backup", to_string(c.rule.backup)},
          {"curtail_threshold_mw", c.rule.curtail_threshold_mw},
          {"n_farms", c.rule.n_farms}}},
        {"econ",
         {{"discount_rate", c.econ.discount_rate},
          {"p_ppa", c.econ.p_ppa},
          {"p_import", c.econ.p_import},
          {"p_export", c.econ.p_export},
          {"replacement_mode", to_string(c.econ.replacement_mode)},
          {"comp_capacity_basis", to_string(c.econ.comp_capacity_basis)},
          {"comp_opex_basis", to_string(c.econ.comp_opex_basis)}}},
    };
}

ScenarioConfig scenario_from_json(const json& j)
{
    ScenarioConfig c;
    ObjectReader top(j, "scenario");
    top.text("id", [&](const std::string& s) { c.id = s; });
    top.text("profile_ref", [&](const std::string& s) { c.profile_ref = s; });

    if (const json* w = top.raw("wind")) {
        ObjectReader r(*w, "wind");
        r.number("rated_mw", c.plant.wind.rated_mw);
        r.number("lifetime_years", c.plant.wind.lifetime_years);
        r.number("capex_per_kw", c.plant.wind.capex_per_kw);
        r.number("opex_per_kw_year", c.plant.wind.opex_per_kw_year);
        r.finish();
    }
    if (const json* e = top.raw("electrolyser")) {
        auto& el = c.plant.electrolyser;
        ObjectReader r(*e, "electrolyser");
        r.number("rated_mw", el.rated_mw);
        r.number("lifetime_years", el.lifetime_years);
        r.number("capex_per_kw", el.capex_per_kw);
        r.number("opex_frac_of_capex_per_year", el.opex_frac_of_capex_per_year);
        r.number("stack_life_hours", el.stack_life_hours);
        r.number("stack_replace_frac_of_capex", el.stack_replace_frac_of_capex);
        r.number("min_load_fraction", el.min_load_fraction);
        if (const json* curve = r.raw("efficiency_curve")) {
            el.curve = curve_from_json(*curve);
        }
        r.finish();
    }
    if (const json* m = top.raw("compressor")) {
        auto& comp = c.plant.compressor;
        ObjectReader r(*m, "compressor");
        r.number("capex_per_kg_annual", comp.capex_per_kg_annual);
        r.number("opex_frac_of_capex_per_year", comp.opex_frac_of_capex_per_year);
        r.number("energy_kwh_per_kg", comp.energy_kwh_per_kg);
        r.number("lifetime_years", comp.lifetime_years);
        r.finish();
    }
    if (const json* g = top.raw("grid")) {
        auto& grid = c.plant.grid;
        ObjectReader r(*g, "grid");
        r.number("line_capacity_mw", grid.line_capacity_mw);
        r.number("line_cost_per_kw", grid.line_cost_per_kw);
        r.number("line_cost_share_h2", grid.line_cost_share_h2);
        r.number("wire_capacity_mw", grid.wire_capacity_mw);
        r.number("wire_cost_per_kw", grid.wire_cost_per_kw);
        r.number("wire_cost_share_h2", grid.wire_cost_share_h2);
        r.number("ic_lifetime_years", grid.ic_lifetime_years);
        r.finish();
    }
    if (const json* d = top.raw("dispatch")) {
        ObjectReader r(*d, "dispatch");
        r.text("variant", [&](const std::string& s) { c.rule.variant = parse_variant(s); });
        r.text("backup", [&](const std::string& s) { c.rule.backup = parse_backup(s); });
        r.number("curtail_threshold_mw", c.rule.curtail_threshold_mw);
        r.integer("n_farms", c.rule.n_farms);
        r.finish();
    }
    if (const json* e = top.raw("econ")) {
        auto& econ = c.econ;
        ObjectReader r(*e, "econ");
        r.number("discount_rate", econ.discount_rate);
        r.number("p_ppa", econ.p_ppa);
        r.number("p_import", econ.p_import);
        r.number("p_export", econ.p_export);
        r.text("replacement_mode",
               [&](const std::string& s) { econ.replacement_mode = parse_replacement_mode(s); });
        r.text("comp_capacity_basis",
               [&](const std::string& s) { econ.comp_capacity_basis = parse_capacity_basis(s); });
        r.text("comp_opex_basis",
               [&](const std::string& s) { econ.comp_opex_basis = parse_opex_basis(s); });
        r.finish();
    }
    top.finish();
    return c;
}

void apply_override(ScenarioConfig& config, std::string_view key, std::string_view value)
{
    // Shorthand for a flat efficiency curve.
    if (key == "electrolyser.efficiency") {
        config.plant.electrolyser.curve = EfficiencyCurve::constant(parse_double(key, value));
        return;
    }

    json j = to_json(config);
    const auto dot = key.find('.');
    json* slot = nullptr;
    if (dot == std::string_view::npos) {
        if (auto it = j.find(std::string(key)); it != j.end() && !it->is_object()) {
            slot = &*it;
        }
    } else {
        auto section = j.find(std::string(key.substr(0, dot)));
        if (section != j.end() && section->is_object()) {
            if (auto it = section->find(std::string(key.substr(dot + 1))); it != section->end()) {
                slot = &*it;
            }
        }
    }
    if (slot == nullptr) {
        throw ConfigError("override: unknown parameter '" + std::string(key) + "'");
    }

    if (slot->is_number_integer()) {
        const double v = parse_double(key, value);
        if (v != std::floor(v)) {
            throw ConfigError("override '" + std::string(key) + "' expects an integer");
        }
        *slot = static_cast<int>(v);
    } else if (slot->is_number()) {
        *slot = parse_double(key, value);
    } else if (slot->is_string()) {
        *slot = std::string(value);
    } else {
        try {
            *slot = json::parse(value);
        } catch (const json::exception&) {
            throw ConfigError("override '" + std::string(key) + "': value is not valid JSON");
        }
    }
    config = scenario_from_json(j);
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("scenario: cannot open " + path.string());
    }
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError("scenario: " + path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

FlowLedger simulate_year(const ScenarioConfig& config, const WindProfile& profile)
{
    return simulate_year(config.rule, config.plant, profile);
}

bool reports_free_variant(const ScenarioConfig& config)
{
    switch (config.rule.variant) {
    case DispatchVariant::OffGridDirect:
    case DispatchVariant::CurtailmentHarvest:
    case DispatchVariant::BtmGridFirst:
    case DispatchVariant::BtmPemFirst:
        return true;
    default:
        return false;
    }
}

ScenarioResult evaluate(const ScenarioConfig& config, const FlowLedger& ledger)
{
    ScenarioResult result;
    result.id = config.id;
    result.summary = summarise(ledger, config.plant);
    result.cost = evaluate_costs(config.plant, config.econ, ledger);
    if (reports_free_variant(config)) {
        EconParams free_econ = config.econ;
        free_econ.p_ppa = 0.0;
        result.free = evaluate_costs(config.plant, free_econ, ledger);
    }
    return result;
}

ScenarioResult evaluate(const ScenarioConfig& config, const WindProfile& profile)
{
    validate(config);
    return evaluate(config, simulate_year(config, profile));
}

std::vector<ScenarioResult> run_comparison(const std::vector<std::string>& ids,
                                           const WindProfile& profile, unsigned jobs)
{
    std::vector<ScenarioConfig> configs;
    configs.reserve(ids.size());
    for (const auto& id : ids) {
        configs.push_back(preset(id));
    }
    return parallel_map<ScenarioResult>(configs.size(), jobs, [&](std::size_t i) {
        return evaluate(configs[i], profile);
    });
}

std::string_view to_string(SweepParam p)
{
    switch (p) {
    case SweepParam::PpaMultiplier: return "p_ppa_multiplier";
    case SweepParam::PemCapexMultiplier: return "pem_capex_multiplier";
    case SweepParam::EfficiencyUplift: return "efficiency_uplift";
    case SweepParam::StackLifeHours: return "stack_life_hours";
    }
    return "unknown";
}

SweepParam parse_sweep_param(std::string_view name)
{
    static const std::map<std::string, SweepParam, std::less<>> names{
        {"p_ppa_multiplier", SweepParam::PpaMultiplier},
        {"p_ppa", SweepParam::PpaMultiplier},
        {"pem_capex_multiplier", SweepParam::PemCapexMultiplier},
        {"pem_capex", SweepParam::PemCapexMultiplier},
        {"efficiency_uplift", SweepParam::EfficiencyUplift},
        {"efficiency", SweepParam::EfficiencyUplift},
        {"stack_life_hours", SweepParam::StackLifeHours},
        {"stack_life", SweepParam::StackLifeHours},
    };
    if (auto it = names.find(name); it != names.end()) {
        return it->second;
    }
    throw ConfigError("unknown sweep parameter '" + std::string(name) + "'");
}

void validate(const SweepSpec& spec)
{
    if (spec.values.empty()) {
        throw ConfigError("sweep: no values");
    }
    for (double v : spec.values) {
        bool ok = false;
        switch (spec.param) {
        case SweepParam::PpaMultiplier:
            ok = v >= 0.0 && v <= 2.0;
            break;
        case SweepParam::PemCapexMultiplier:
            ok = v >= 0.2 - 1e-12 && v <= 1.3 + 1e-12;
            break;
        case SweepParam::EfficiencyUplift:
            ok = near(v, 0.0) || near(v, 0.03) || near(v, 0.05) || near(v, 0.07) || near(v, 0.10);
            break;
        case SweepParam::StackLifeHours:
            ok = v >= 60000.0 && v <= 120000.0;
            break;
        }
        if (!ok) {
            throw ConfigError("sweep: value " + std::to_string(v) + " outside the legal range of " +
                              std::string(to_string(spec.param)));
        }
    }
}

std::vector<SweepSpec> reference_sweeps()
{
    auto steps = [](double first, double last, double step) {
        std::vector<double> v;
        const auto n = static_cast<int>(std::llround((last - first) / step));
        for (int k = 0; k <= n; ++k) {
            v.push_back(first + k * step);
        }
        return v;
    };
    return {
        {SweepParam::PpaMultiplier, steps(0.0, 2.0, 0.1)},
        {SweepParam::PemCapexMultiplier, steps(0.2, 1.3, 0.1)},
        {SweepParam::EfficiencyUplift, {0.03, 0.05, 0.07, 0.10}},
        {SweepParam::StackLifeHours, steps(60000.0, 120000.0, 10000.0)},
    };
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value)
{
    ScenarioConfig c = base;
    switch (param) {
    case SweepParam::PpaMultiplier:
        c.econ.p_ppa = base.econ.p_ppa * value;
        break;
    case SweepParam::PemCapexMultiplier:
        c.plant.electrolyser.capex_per_kw = base.plant.electrolyser.capex_per_kw * value;
        break;
    case SweepParam::EfficiencyUplift:
        c.plant.electrolyser.curve = base.plant.electrolyser.curve.uplifted(value);
        break;
    case SweepParam::StackLifeHours:
        c.plant.electrolyser.stack_life_hours = value;
        break;
    }
    return c;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& base, const SweepSpec& spec,
                              const WindProfile& profile, unsigned jobs)
{
    validate(spec);
    validate(base);
    const bool changes_flows = spec.param == SweepParam::EfficiencyUplift;
    std::optional<FlowLedger> shared;
    if (!changes_flows) {
        shared = simulate_year(base, profile);
    }
    return parallel_map<SweepPoint>(spec.values.size(), jobs, [&](std::size_t i) {
        const double v = spec.values[i];
        const ScenarioConfig c = apply_sweep_value(base, spec.param, v);
        const ScenarioResult r =
            changes_flows ? evaluate(c, simulate_year(c, profile)) : evaluate(c, *shared);
        return SweepPoint{v, r.cost.lcoh_per_kg, r.cost.lcoh_per_mwh_hhv, r.summary.mass_t};
    });
}

} // namespace h2path
