// run_config.cpp: Grid parsing, validation and JSON config loading

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "spinbath/series.hpp"

namespace spinbath::cli {

namespace {

double parse_number(const std::string& s, const std::string& what) {
    double x = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(x))
        throw ConfigError(what + ": '" + s + "' is not a number");
    return x;
}

template <class T>
T get(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

} // namespace

std::vector<double> Grid::points() const { return linear_grid(start, stop, count); }

Grid parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos)
        throw ConfigError("grid '" + text + "' must read start:stop:count");
    Grid g;
    g.start = parse_number(text.substr(0, a), "grid start");
    g.stop = parse_number(text.substr(a + 1, b - a - 1), "grid stop");
    const double n = parse_number(text.substr(b + 1), "grid count");
    if (n < 1 || n != std::floor(n)) throw ConfigError("grid count must be a positive integer");
    g.count = static_cast<std::size_t>(n);
    if (g.count > 1 && !(g.stop > g.start))
        throw ConfigError("grid '" + text + "' is not strictly increasing");
    return g;
}

TimeUnit parse_time_unit(const std::string& name) {
    if (name == "scaled") return TimeUnit::Scaled;
    if (name == "delta") return TimeUnit::Delta;
    if (name == "cutoff") return TimeUnit::Cutoff;
    throw ConfigError("time unit must be scaled, delta or cutoff, got '" + name + "'");
}

std::string to_string(TimeUnit unit) {
    switch (unit) {
    case TimeUnit::Scaled: return "scaled";
    case TimeUnit::Delta: return "delta";
    case TimeUnit::Cutoff: return "cutoff";
    }
    return "?";
}

TimeUnit RunConfig::unit() const {
    if (time_unit) return *time_unit;
    return command == "niba" ? TimeUnit::Delta : TimeUnit::Scaled;
}

num::QuadratureSpec RunConfig::series_spec() const {
    num::QuadratureSpec s = num::QuadratureSpec::series();
    if (tol_abs) s.abs_tol = *tol_abs;
    if (tol_rel) s.rel_tol = *tol_rel;
    return s;
}

num::QuadratureSpec RunConfig::scalar_spec() const {
    num::QuadratureSpec s;
    if (tol_abs) s.abs_tol = *tol_abs;
    if (tol_rel) s.rel_tol = *tol_rel;
    return s;
}

void RunConfig::validate() const {
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        throw ConfigError("unknown command '" + command + "'");
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(tmax > 0.0) || !std::isfinite(tmax)) throw ConfigError("tmax must be positive");
    if (points < 2) throw ConfigError("points must be at least 2");
    if (tol_abs && !(*tol_abs > 0.0)) throw ConfigError("tol-abs must be positive");
    if (tol_rel && !(*tol_rel > 0.0)) throw ConfigError("tol-rel must be positive");
    if (!rows.empty() && rows != "table1") throw ConfigError("rows must be 'table1'");
    if (command == "phase-diagram" && !delta_grid && !temperature_grid)
        throw ConfigError("phase-diagram needs --delta-grid or --temperature-grid");
    if (temperature_grid && temperature_grid->start < 0.0)
        throw ConfigError("temperature grid must be non-negative");
    if (delta_grid && !(delta_grid->start > 0.0)) throw ConfigError("delta grid must be positive");
}

void apply_json(const nlohmann::json& obj, RunConfig& cfg) {
    if (!obj.is_object()) throw ConfigError("config run must be a JSON object");
    for (const auto& [key, v] : obj.items()) {
        if (key == "runs") continue;
        if (key == "command") cfg.command = get<std::string>(v, key);
        else if (key == "delta") cfg.params.delta = get<double>(v, key);
        else if (key == "alpha") cfg.params.alpha = get<double>(v, key);
        else if (key == "temperature") cfg.params.temperature = get<double>(v, key);
        else if (key == "bath") {
            try {
                cfg.params.bath = parse_bath_kind(get<std::string>(v, key));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "time_unit") cfg.time_unit = parse_time_unit(get<std::string>(v, key));
        else if (key == "tmax") cfg.tmax = get<double>(v, key);
        else if (key == "points") {
            const auto n = get<long long>(v, key);
            if (n < 0) throw ConfigError("points must be non-negative");
            cfg.points = static_cast<std::size_t>(n);
        } else if (key == "tol_abs") cfg.tol_abs = get<double>(v, key);
        else if (key == "tol_rel") cfg.tol_rel = get<double>(v, key);
        else if (key == "output") cfg.output = get<std::string>(v, key);
        else if (key == "format") {
            try {
                cfg.format = io::parse_format(get<std::string>(v, key));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "rows") cfg.rows = get<std::string>(v, key);
        else if (key == "delta_grid") cfg.delta_grid = parse_grid(get<std::string>(v, key));
        else if (key == "temperature_grid") cfg.temperature_grid = parse_grid(get<std::string>(v, key));
        else if (key == "niba") cfg.niba = get<bool>(v, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

std::vector<RunConfig> load_config(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    RunConfig shared = base;
    apply_json(doc, shared);
    if (!doc.contains("runs")) return {shared};
    if (!doc["runs"].is_array() || doc["runs"].empty())
        throw ConfigError("config 'runs' must be a non-empty array");
    std::vector<RunConfig> runs;
    for (const auto& r : doc["runs"]) {
        RunConfig cfg = shared;
        apply_json(r, cfg);
        runs.push_back(std::move(cfg));
    }
    return runs;
}

} // namespace spinbath::cli
