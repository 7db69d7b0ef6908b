// run_config.hpp: Command configuration for the spinbath front end

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinbath/io.hpp"
#include "spinbath/model.hpp"
#include "spinbath/numerics.hpp"

namespace spinbath::cli {

// Bad user input; maps to exit status 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TimeUnit { Scaled, Delta, Cutoff };  // eta_delta t, delta t, omega_c t

struct Grid {
    double start{0.0};
    double stop{0.0};
    std::size_t count{0};

    std::vector<double> points() const;
};

// "start:stop:count", count >= 1; stop > start unless count == 1.
Grid parse_grid(const std::string& text);

inline const std::vector<std::string> kCommands{
    "dynamics", "tau-x", "boson-dynamics", "niba", "shiba-table", "phase-diagram", "ground-energy",
};

struct RunConfig {
    std::string command;
    ModelParams params;
    std::optional<TimeUnit> time_unit;  // unset: command default
    double tmax{20.0};
    std::size_t points{400};
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
    std::string output{"-"};
    io::Format format{io::Format::Csv};
    std::string rows;                 // shiba-table: "table1" or empty for a single row
    std::optional<Grid> delta_grid;   // phase-diagram inset
    std::optional<Grid> temperature_grid;
    bool niba{false};                 // phase-diagram: add NIBA boundaries per temperature

    TimeUnit unit() const;
    num::QuadratureSpec series_spec() const;
    num::QuadratureSpec scalar_spec() const;
    void validate() const;
};

TimeUnit parse_time_unit(const std::string& name);
std::string to_string(TimeUnit unit);

// Copies recognised keys of a JSON object onto cfg; unknown keys are an error.
void apply_json(const nlohmann::json& obj, RunConfig& cfg);

// A config file holds one run object, or {"runs": [...]} sharing the top-level keys.
std::vector<RunConfig> load_config(const std::string& path, const RunConfig& base);

} // namespace spinbath::cli
