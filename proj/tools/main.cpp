// main.cpp: spinbath command-line front end
//
// Exit status: 0 success, 1 bad configuration, 2 numerical failure
// (and 1 from `reproduce` when any criterion fails).

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "spinbath/acceptance.hpp"
#include "spinbath/errors.hpp"

namespace {

using spinbath::cli::ConfigError;
using spinbath::cli::RunConfig;

// Raw flag values; only the ones given on the command line override the config file.
struct Flags {
    double delta{}, alpha{}, temperature{}, tmax{}, tol_abs{}, tol_rel{};
    long long points{};
    std::string bath, output, format, time_unit, rows, delta_grid, temperature_grid, config;
    bool niba{false};
    std::map<std::string, std::map<std::string, CLI::Option*>> given;  // per subcommand
};

void add_run_options(CLI::App* sub, Flags& f) {
    auto& g = f.given[sub->get_name()];
    g["delta"] = sub->add_option("--delta", f.delta, "bare tunneling Delta/omega_c");
    g["alpha"] = sub->add_option("--alpha", f.alpha, "coupling strength");
    g["temperature"] = sub->add_option("--temperature", f.temperature, "T/omega_c");
    g["bath"] = sub->add_option("--bath", f.bath, "spin or boson");
    g["tmax"] = sub->add_option("--tmax", f.tmax, "end of the time grid, in --time-unit (default 20)");
    g["points"] = sub->add_option("--points", f.points, "time grid points (default 400)");
    g["time_unit"] = sub->add_option("--time-unit", f.time_unit,
                                           "scaled (eta*Delta*t), delta (Delta*t) or cutoff (omega_c*t)");
    g["tol_abs"] = sub->add_option("--tol-abs", f.tol_abs, "absolute quadrature tolerance");
    g["tol_rel"] = sub->add_option("--tol-rel", f.tol_rel, "relative quadrature tolerance");
    g["output"] = sub->add_option("--output,-o", f.output, "output file, - for stdout");
    g["format"] = sub->add_option("--format", f.format, "csv or json");
    sub->add_option("--config", f.config, "JSON run file; command-line flags take precedence");
}

nlohmann::json overrides(const Flags& f, const std::string& command) {
    nlohmann::json j = nlohmann::json::object();
    const auto& given = f.given.at(command);
    auto set = [&](const char* key, auto value) {
        auto it = given.find(key);
        if (it != given.end() && it->second->count() > 0) j[key] = value;
    };
    set("delta", f.delta);
    set("alpha", f.alpha);
    set("temperature", f.temperature);
    set("bath", f.bath);
    set("tmax", f.tmax);
    set("points", f.points);
    set("time_unit", f.time_unit);
    set("tol_abs", f.tol_abs);
    set("tol_rel", f.tol_rel);
    set("output", f.output);
    set("format", f.format);
    set("rows", f.rows);
    set("delta_grid", f.delta_grid);
    set("temperature_grid", f.temperature_grid);
    if (f.niba) j["niba"] = true;
    return j;
}

std::string describe(const RunConfig& cfg) {
    std::ostringstream os;
    os << cfg.command << " (bath=" << to_string(cfg.params.bath) << ", delta=" << cfg.params.delta
       << ", alpha=" << cfg.params.alpha << ", T=" << cfg.params.temperature << ")";
    return os.str();
}

int run_one(const RunConfig& cfg) {
    try {
        const auto out = spinbath::cli::compute(cfg);
        spinbath::io::write_table(cfg.output, out.table, out.meta, cfg.format);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "spinbath: " << cfg.command << ": " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "spinbath: " << describe(cfg) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "spinbath: " << describe(cfg) << ": numerical failure: " << e.what() << '\n';
        return 2;
    }
}

int reproduce(const std::vector<int>& ids, const spinbath::acceptance::Options& opts, const std::string& path) {
    std::ofstream file;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file) {
            std::cerr << "spinbath: cannot open report file '" << path << "'\n";
            return 1;
        }
    }
    std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
    out << "# code_version: " << SPINBATH_VERSION << "\n# gamma_scale: " << opts.gamma_scale
        << "\n# tol_scale: " << opts.tol_scale << '\n';
    int failed = 0;
    for (int id : ids) {
        try {
            const auto r = spinbath::acceptance::run_criterion(id, opts);
            spinbath::acceptance::print(out, r);
            failed += !r.passed();
        } catch (const std::exception& e) {
            out << "FAIL  criterion " << id << ": error: " << e.what() << '\n';
            ++failed;
        }
        out.flush();
    }
    out << (failed ? "FAILED: " : "all passed: ") << ids.size() - static_cast<std::size_t>(failed) << "/"
        << ids.size() << " criteria\n";
    return failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-level system in an Ohmic spin or boson bath: dynamics, susceptibility, phase boundaries"};
    app.set_version_flag("--version", std::string(SPINBATH_VERSION));
    app.require_subcommand(1);

    Flags flags;
    const std::map<std::string, std::string> help{
        {"dynamics", "spin-bath P(t): full quadrature and pole approximation"},
        {"tau-x", "<tau_x(t)> at temperature T"},
        {"boson-dynamics", "boson-bath P(t) at temperature T beside the spin-bath P(t)"},
        {"niba", "NIBA P(t) for the spin or boson bath"},
        {"shiba-table", "static susceptibility, Shiba ratio and sum rule"},
        {"phase-diagram", "alpha_c over a delta grid, or versus temperature with NIBA boundaries"},
        {"ground-energy", "renormalized tunneling and ground-state energy"},
    };
    for (const auto& name : spinbath::cli::kCommands) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        add_run_options(sub, flags);
        if (name == "shiba-table")
            flags.given[name]["rows"] = sub->add_option("--rows", flags.rows, "table1 for the 13 reference rows");
        if (name == "phase-diagram") {
            flags.given[name]["delta_grid"] = sub->add_option("--delta-grid", flags.delta_grid, "start:stop:count");
            flags.given[name]["temperature_grid"] =
                sub->add_option("--temperature-grid", flags.temperature_grid, "start:stop:count");
            sub->add_flag("--niba", flags.niba, "add spin and boson NIBA boundaries (slow)");
        }
    }

    std::vector<int> ids;
    spinbath::acceptance::Options ropts;
    std::string report;
    CLI::App* rep = app.add_subcommand("reproduce", "run the acceptance criteria and print the report");
    rep->add_option("--criterion,-c", ids, "criteria to run (default: all)")
        ->check(CLI::Range(1, spinbath::acceptance::kCriterionCount));
    rep->add_option("--gamma-scale", ropts.gamma_scale, "multiply gamma in the susceptibility table run");
    rep->add_option("--tol-scale", ropts.tol_scale, "multiply the susceptibility table tolerances");
    rep->add_option("--output,-o", report, "report file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (rep->parsed()) {
        if (ids.empty())
            for (int i = 1; i <= spinbath::acceptance::kCriterionCount; ++i) ids.push_back(i);
        return reproduce(ids, ropts, report);
    }

    RunConfig base;
    base.command = app.get_subcommands().front()->get_name();
    std::vector<RunConfig> runs;
    try {
        runs = flags.config.empty() ? std::vector<RunConfig>{base} : spinbath::cli::load_config(flags.config, base);
        const nlohmann::json cli = overrides(flags, base.command);
        for (auto& cfg : runs) {
            spinbath::cli::apply_json(cli, cfg);
            if (cfg.command != base.command)
                throw ConfigError("config run names command '" + cfg.command + "' but '" + base.command +
                                  "' was invoked");
        }
    } catch (const ConfigError& e) {
        std::cerr << "spinbath: " << e.what() << '\n';
        return 1;
    }
    int status = 0;
    for (const auto& cfg : runs) status = std::max(status, run_one(cfg));
    return status;
}
