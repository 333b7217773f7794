#include "h2path/cli.hpp"

#include "h2path/errors.hpp"
#include "h2path/parallel.hpp"
#include "h2path/report.hpp"
#include "h2path/scenarios.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace h2path {

namespace {

struct RunConfig
{
    std::string preset;
    std::string presets = "all";
    std::string scenario_file;
    std::string profile = "synth:0.4883,42";
    std::string out_dir;
    std::string run_id;
    std::vector<std::string> overrides;
    std::string curve_file;
    unsigned jobs = 0;
    bool ledger = false;
    bool allow_any_length = false;
    std::string param;
    std::string range;
    std::string values;
    bool reference_sweeps = false;
};

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, sep)) {
        if (!part.empty()) {
            parts.push_back(part);
        }
    }
    return parts;
}

double to_number(const std::string& text, const std::string& what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(what + ": cannot parse '" + text + "' as a number");
}

void apply_overrides(ScenarioConfig& config, const RunConfig& rc)
{
    if (!rc.curve_file.empty()) {
        config.plant.electrolyser.curve = load_efficiency_curve(rc.curve_file);
    }
    for (const auto& kv : rc.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        }
        apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    validate(config);
}

ScenarioConfig single_scenario(const RunConfig& rc)
{
    ScenarioConfig config;
    if (!rc.scenario_file.empty() && !rc.preset.empty()) {
        throw ConfigError("give either --preset or --scenario, not both");
    }
    if (!rc.scenario_file.empty()) {
        config = load_scenario(rc.scenario_file);
        if (config.id.empty()) {
            config.id = std::filesystem::path(rc.scenario_file).stem().string();
        }
    } else if (!rc.preset.empty()) {
        config = preset(rc.preset);
    } else {
        throw ConfigError("one of --preset or --scenario is required");
    }
    apply_overrides(config, rc);
    return config;
}

WindProfile load_profile_source(const std::string& source, double rated_mw, bool any_length)
{
    constexpr std::string_view prefix = "synth:";
    if (source.rfind(prefix, 0) == 0) {
        const auto parts = split(source.substr(prefix.size()), ',');
        if (parts.size() != 2) {
            throw ConfigError("--profile synth expects synth:<cf>,<seed>");
        }
        const double cf = to_number(parts[0], "--profile cf");
        const double seed = to_number(parts[1], "--profile seed");
        if (seed < 0.0 || seed != std::floor(seed)) {
            throw ConfigError("--profile seed must be a non-negative integer");
        }
        return synth_profile(cf, rated_mw, static_cast<std::uint64_t>(seed));
    }
    return load_profile(source, rated_mw, LoadOptions{any_length});
}

std::filesystem::path output_dir(const RunConfig& rc, const std::string& command)
{
    std::string base = rc.out_dir;
    if (base.empty()) {
        const char* env = std::getenv("H2PATH_OUT");
        base = env != nullptr && *env != '\0' ? env : "results";
    }
    return std::filesystem::path(base) / (rc.run_id.empty() ? command : rc.run_id);
}

std::vector<double> parse_sweep_values(const RunConfig& rc, SweepParam param)
{
    std::vector<double> raw;
    if (!rc.range.empty() && !rc.values.empty()) {
        throw ConfigError("give either --range or --values, not both");
    }
    if (!rc.range.empty()) {
        const auto parts = split(rc.range, ':');
        if (parts.size() != 3) {
            throw ConfigError("--range expects start:stop:step");
        }
        const double first = to_number(parts[0], "--range start");
        const double last = to_number(parts[1], "--range stop");
        const double step = to_number(parts[2], "--range step");
        if (!(step > 0.0) || last < first) {
            throw ConfigError("--range needs start <= stop and a positive step");
        }
        const auto n = static_cast<long>(std::floor((last - first) / step + 1e-9));
        for (long k = 0; k <= n; ++k) {
            raw.push_back(first + static_cast<double>(k) * step);
        }
    } else if (!rc.values.empty()) {
        for (const auto& v : split(rc.values, ',')) {
            raw.push_back(to_number(v, "--values"));
        }
    } else {
        throw ConfigError("sweep needs --range or --values");
    }
    // Price and capex ranges are given as relative changes (-0.8 means -80%).
    if (param == SweepParam::PpaMultiplier || param == SweepParam::PemCapexMultiplier) {
        for (double& v : raw) {
            v = 1.0 + v;
        }
    }
    return raw;
}

void print_row(std::ostream& out, const ScenarioResult& r)
{
    out << std::left << std::setw(8) << r.id << std::right << std::fixed << std::setprecision(2)
        << "  LCOH " << std::setw(8) << r.cost.lcoh_per_mwh_hhv << " GBP/MWh  "
        << std::setw(6) << r.cost.lcoh_per_kg << " GBP/kg  free ";
    if (r.free) {
        out << std::setw(8) << r.free->lcoh_per_mwh_hhv;
    } else {
        out << std::setw(8) << "-";
    }
    out << "  H2 " << std::setw(9) << r.summary.mass_t << " t  stack " << std::setw(6)
        << r.summary.stack_life_yr << " yr  LF " << std::setw(6) << 100.0 * r.summary.load_factor
        << " %\n";
    out.unsetf(std::ios::fixed);
}

std::string dump(const nlohmann::json& j)
{
    return j.dump(2) + "\n";
}

void write_ledger(const std::filesystem::path& dir, const ScenarioConfig& config,
                  const FlowLedger& ledger)
{
    std::ostringstream csv;
    write_ledger_csv(csv, ledger);
    write_file_atomic(dir / (config.id + "_ledger.csv"), csv.str());
}

int cmd_run(const RunConfig& rc, std::ostream& out)
{
    const ScenarioConfig config = single_scenario(rc);
    const WindProfile profile =
        load_profile_source(rc.profile, config.plant.wind.rated_mw, rc.allow_any_length);
    const FlowLedger ledger = simulate_year(config, profile);
    const ScenarioResult result = evaluate(config, ledger);

    const auto dir = output_dir(rc, "run");
    const std::vector<ScenarioResult> rows{result};
    write_file_atomic(dir / (config.id + ".csv"), comparison_csv(rows));
    nlohmann::json j = to_json(result);
    j["scenario"] = to_json(config);
    write_file_atomic(dir / (config.id + ".json"), dump(j));
    if (rc.ledger) {
        write_ledger(dir, config, ledger);
    }
    print_row(out, result);
    return kExitOk;
}

int cmd_compare(const RunConfig& rc, std::ostream& out)
{
    std::vector<std::string> ids;
    const std::string list = rc.preset.empty() ? rc.presets : rc.preset;
    if (list == "all") {
        ids = preset_ids();
    } else {
        ids = split(list, ',');
    }
    if (ids.empty()) {
        throw ConfigError("--presets is empty");
    }
    std::vector<ScenarioConfig> configs;
    for (const auto& id : ids) {
        ScenarioConfig c = preset(id);
        apply_overrides(c, rc);
        configs.push_back(std::move(c));
    }
    const double rated = configs.front().plant.wind.rated_mw;
    const WindProfile profile = load_profile_source(rc.profile, rated, rc.allow_any_length);

    struct Row
    {
        ScenarioResult result;
        FlowLedger ledger;
    };
    const auto rows = parallel_map<Row>(configs.size(), rc.jobs, [&](std::size_t i) {
        FlowLedger ledger = simulate_year(configs[i], profile);
        ScenarioResult result = evaluate(configs[i], ledger);
        if (!rc.ledger) {
            ledger.records.clear();
        }
        return Row{std::move(result), std::move(ledger)};
    });

    std::vector<ScenarioResult> results;
    for (const auto& r : rows) {
        results.push_back(r.result);
    }
    const auto dir = output_dir(rc, "compare");
    write_file_atomic(dir / "comparison.csv", comparison_csv(results));
    write_file_atomic(dir / "comparison.json", dump(comparison_json(results)));
    for (std::size_t i = 0; i < results.size(); ++i) {
        write_file_atomic(dir / (results[i].id + ".csv"),
                          comparison_csv(std::span(&results[i], 1)));
        if (rc.ledger) {
            write_ledger(dir, configs[i], rows[i].ledger);
        }
        print_row(out, results[i]);
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out)
{
    const ScenarioConfig config = single_scenario(rc);
    std::vector<SweepSpec> specs;
    if (rc.reference_sweeps) {
        if (!rc.param.empty()) {
            throw ConfigError("give either --param or --reference, not both");
        }
        specs = reference_sweeps();
    } else {
        if (rc.param.empty()) {
            throw ConfigError("sweep needs --param or --reference");
        }
        SweepSpec spec;
        spec.param = parse_sweep_param(rc.param);
        spec.values = parse_sweep_values(rc, spec.param);
        specs.push_back(std::move(spec));
    }
    for (const auto& spec : specs) {
        validate(spec);
    }
    const WindProfile profile =
        load_profile_source(rc.profile, config.plant.wind.rated_mw, rc.allow_any_length);

    const auto dir = output_dir(rc, "sweep");
    for (const auto& spec : specs) {
        const auto points = sweep(config, spec, profile, rc.jobs);
        const std::string name(to_string(spec.param));
        write_file_atomic(dir / ("sweep_" + name + ".csv"), sweep_csv(spec.param, points));
        write_file_atomic(dir / ("sweep_" + name + ".json"),
                          dump(sweep_json(config.id, spec.param, points)));
        out << config.id << " sweep " << name << '\n';
        for (const auto& p : points) {
            out << "  " << std::setw(10) << p.value << "  " << std::fixed << std::setprecision(2)
                << std::setw(8) << p.lcoh_per_mwh_hhv << " GBP/MWh\n";
            out.unsetf(std::ios::fixed);
            out << std::setprecision(6);
        }
    }
    return kExitOk;
}

int cmd_dump_ledger(const RunConfig& rc, std::ostream& out)
{
    const ScenarioConfig config = single_scenario(rc);
    const WindProfile profile =
        load_profile_source(rc.profile, config.plant.wind.rated_mw, rc.allow_any_length);
    const FlowLedger ledger = simulate_year(config, profile);
    const auto dir = output_dir(rc, "dump-ledger");
    write_ledger(dir, config, ledger);
    out << "wrote " << (dir / (config.id + "_ledger.csv")).string() << '\n';
    return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& rc)
{
    cmd->add_option("--profile", rc.profile, "Profile CSV or synth:<cf>,<seed>")
        ->capture_default_str();
    cmd->add_option("--out", rc.out_dir, "Output directory (default $H2PATH_OUT or results)");
    cmd->add_option("--run-id", rc.run_id, "Sub-directory of --out (default: command name)");
    cmd->add_option("--set", rc.overrides, "Parameter override key=value (repeatable)");
    cmd->add_option("--curve", rc.curve_file, "Efficiency curve CSV (load_fraction,efficiency)");
    cmd->add_option("--jobs", rc.jobs, "Worker threads (0 = all cores)");
    cmd->add_flag("--ledger", rc.ledger, "Also write the per-step ledger CSV");
    cmd->add_flag("--allow-any-length", rc.allow_any_length,
                  "Accept profile files that are not exactly one year long");
}

void add_scenario_source(CLI::App* cmd, RunConfig& rc)
{
    cmd->add_option("--preset", rc.preset, "Preset id (I, II, III-a, ..., V-b-ii)");
    cmd->add_option("--scenario", rc.scenario_file, "Scenario JSON file");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Wind-electrolyser hydrogen cost simulator"};
    app.require_subcommand(1);
    RunConfig rc;

    auto* run = app.add_subcommand("run", "Simulate one scenario and report its costs");
    add_scenario_source(run, rc);
    add_common(run, rc);

    auto* compare = app.add_subcommand("compare", "Compare presets side by side");
    compare->add_option("--presets", rc.presets, "'all' or a comma-separated list of ids")
        ->capture_default_str();
    compare->add_option("--preset", rc.preset, "Alias of --presets");
    add_common(compare, rc);

    auto* sweep_cmd = app.add_subcommand("sweep", "One-parameter sensitivity sweep");
    add_scenario_source(sweep_cmd, rc);
    add_common(sweep_cmd, rc);
    sweep_cmd->add_option("--param", rc.param,
                          "p_ppa | pem_capex | efficiency | stack_life (or full ids)");
    sweep_cmd->add_option("--range", rc.range,
                          "start:stop:step; relative change for p_ppa and pem_capex");
    sweep_cmd->add_option("--values", rc.values, "Comma-separated values");
    sweep_cmd->add_flag("--reference", rc.reference_sweeps,
                        "Run all four reference sensitivity sweeps");

    auto* dump_cmd = app.add_subcommand("dump-ledger", "Write the per-step flow ledger");
    add_scenario_source(dump_cmd, rc);
    add_common(dump_cmd, rc);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*run) return cmd_run(rc, out);
        if (*compare) return cmd_compare(rc, out);
        if (*sweep_cmd) return cmd_sweep(rc, out);
        if (*dump_cmd) return cmd_dump_ledger(rc, out);
    } catch (const SimulationError& e) {
        err << "simulation error: " << e.what() << '\n';
        return kExitSimulationError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitConfigError;
}

} // namespace h2path
