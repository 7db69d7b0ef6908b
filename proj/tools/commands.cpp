// commands.cpp: Table builders behind each front-end command

#include "commands.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spinbath/correlation.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/niba.hpp"
#include "spinbath/renorm.hpp"
#include "spinbath/series.hpp"

namespace spinbath::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string str(double x) { return io::format_double(x); }

io::Metadata base_metadata(const RunConfig& cfg, const num::QuadratureSpec& spec) {
    return {
        {"command", cfg.command},
        {"code_version", SPINBATH_VERSION},
        {"bath", to_string(cfg.params.bath)},
        {"delta", str(cfg.params.delta)},
        {"alpha", str(cfg.params.alpha)},
        {"temperature", str(cfg.params.temperature)},
        {"tol_abs", str(spec.abs_tol)},
        {"tol_rel", str(spec.rel_tol)},
    };
}

// Grid in the requested unit plus the physical times it maps to.
struct TimeAxis {
    std::vector<double> shown;
    std::vector<double> t;
};

TimeAxis time_axis(const RunConfig& cfg, double eta_delta) {
    TimeAxis axis;
    axis.shown = linear_grid(0.0, cfg.tmax, cfg.points);
    double unit = 1.0;
    if (cfg.unit() == TimeUnit::Scaled) unit = eta_delta;
    if (cfg.unit() == TimeUnit::Delta) unit = cfg.params.delta;
    if (!(unit > 0.0)) throw DomainError("time axis: eta_delta = 0 (localized), use --time-unit cutoff");
    for (double s : axis.shown) axis.t.push_back(s / unit);
    return axis;
}

void add_time_metadata(Output& out, const RunConfig& cfg) {
    out.meta.emplace_back("time_unit", to_string(cfg.unit()));
    out.meta.emplace_back("tmax", str(cfg.tmax));
    out.meta.emplace_back("points", std::to_string(cfg.points));
}

RenormalizedSystem spin_system(const RunConfig& cfg) {
    RenormalizedSystem sys = solve_eta_spin(cfg.params.delta, cfg.params.alpha);
    if (sys.localized) throw DomainError("spin bath is localized (eta = 0) at this coupling");
    return sys;
}

Output dynamics(const RunConfig& cfg) {
    if (cfg.params.bath != BathKind::Spin) throw ConfigError("dynamics is the spin bath; use boson-dynamics");
    const num::QuadratureSpec spec = cfg.series_spec();
    const RenormalizedSystem sys = spin_system(cfg);
    const TimeAxis axis = time_axis(cfg, sys.effective_tunneling);
    const auto full = population_series(sys, axis.t, spec).series.value;
    const PoleData pole = pole_data(sys);

    Output out{{{"t", "P_full", "P_wwa"}, {}}, base_metadata(cfg, spec)};
    add_time_metadata(out, cfg);
    out.meta.emplace_back("eta", str(sys.eta));
    out.meta.emplace_back("omega0", pole.exists ? str(pole.omega0) : "none");
    out.meta.emplace_back("gamma_wwa", str(pole.gamma_wwa));
    for (std::size_t i = 0; i < axis.t.size(); ++i)
        out.table.rows.push_back({axis.shown[i], full[i], pole.exists ? wwa_population(axis.t[i], pole) : kNaN});
    return out;
}

Output tau_x(const RunConfig& cfg) {
    const num::QuadratureSpec spec = cfg.series_spec();
    const RenormalizedSystem sys = spin_system(cfg);
    const double temp = cfg.params.temperature;
    const TimeAxis axis = time_axis(cfg, sys.effective_tunneling);
    const auto values = parallel_map(axis.t.size(), [&](std::size_t i) {
        return tau_x_expectation(axis.t[i], temp, sys, spec);
    });

    Output out{{{"t", "tau_x"}, {}}, base_metadata(cfg, spec)};
    add_time_metadata(out, cfg);
    out.meta.emplace_back("eta", str(sys.eta));
    out.meta.emplace_back("tau_x_long_time", str(tau_x_long_time(temp, sys)));
    for (std::size_t i = 0; i < axis.t.size(); ++i) out.table.rows.push_back({axis.shown[i], values[i]});
    return out;
}

Output boson_dynamics(const RunConfig& cfg) {
    const num::QuadratureSpec spec = cfg.series_spec();
    const double temp = cfg.params.temperature;
    const RenormalizedSystem boson = solve_eta_boson(cfg.params.delta, cfg.params.alpha, temp);
    if (boson.localized) throw DomainError("boson bath is localized (eta_B = 0) at this coupling");
    const RenormalizedSystem spin = spin_system(cfg);
    const TimeAxis axis = time_axis(cfg, boson.effective_tunneling);
    const auto pb = parallel_map(axis.t.size(), [&](std::size_t i) {
        return population_boson(axis.t[i], temp, boson, spec);
    });
    const auto ps = population_series(spin, axis.t, spec).series.value;

    Output out{{{"t", "P_boson", "P_spin"}, {}}, base_metadata(cfg, spec)};
    add_time_metadata(out, cfg);
    out.meta.emplace_back("eta_boson", str(boson.eta));
    out.meta.emplace_back("eta_spin", str(spin.eta));
    for (std::size_t i = 0; i < axis.t.size(); ++i) out.table.rows.push_back({axis.shown[i], pb[i], ps[i]});
    return out;
}

Output niba(const RunConfig& cfg) {
    if (cfg.unit() == TimeUnit::Scaled) throw ConfigError("niba has no eta; use --time-unit delta or cutoff");
    const TimeAxis axis = time_axis(cfg, 0.0);
    const NibaKernel kernel{cfg.params.bath, cfg.params.alpha, cfg.params.temperature};
    const NibaOptions opts;
    const TimeSeries series = niba_population(axis.t, cfg.params.delta, kernel, opts);

    io::Metadata meta = base_metadata(cfg, cfg.series_spec());
    meta.resize(6);  // NIBA tolerance replaces the quadrature tolerances
    Output out{{{"t", "P_niba"}, {}}, meta};
    add_time_metadata(out, cfg);
    out.meta.emplace_back("volterra_step", str(opts.step));
    out.meta.emplace_back("volterra_tol", str(opts.tol));
    for (std::size_t i = 0; i < axis.t.size(); ++i) out.table.rows.push_back({axis.shown[i], series.value[i]});
    return out;
}

Output shiba(const RunConfig& cfg) {
    ShibaOptions so;
    so.spec = cfg.scalar_spec();
    const std::vector<TableRow> rows = cfg.rows == "table1"
                                           ? reference_table_rows()
                                           : std::vector<TableRow>{{cfg.params.delta, cfg.params.alpha}};
    io::Metadata meta{{"command", cfg.command},
                      {"code_version", SPINBATH_VERSION},
                      {"bath", "spin"},
                      {"rows", cfg.rows.empty() ? "single" : cfg.rows},
                      {"tol_abs", str(so.spec.abs_tol)},
                      {"tol_rel", str(so.spec.rel_tol)}};
    Output out{{{"delta", "alpha", "chi0_half", "c_over_j", "ratio", "sum_rule"}, {}}, meta};
    for (const auto& r : shiba_table(rows, so))
        out.table.rows.push_back({r.delta, r.alpha, r.chi0_half, r.c_over_j_limit, r.ratio, r.sum_rule});
    return out;
}

Output phase_diagram(const RunConfig& cfg) {
    if (cfg.delta_grid && cfg.temperature_grid)
        throw ConfigError("phase-diagram takes --delta-grid or --temperature-grid, not both");
    io::Metadata meta{{"command", cfg.command}, {"code_version", SPINBATH_VERSION}};
    if (cfg.delta_grid) {
        const auto deltas = cfg.delta_grid->points();
        const auto ac = parallel_map(deltas.size(), [&](std::size_t i) { return critical_coupling(deltas[i]); });
        meta.emplace_back("bath", "spin");
        meta.emplace_back("alpha_c_tol", str(1e-10));
        Output out{{{"delta", "alpha_c"}, {}}, meta};
        for (std::size_t i = 0; i < deltas.size(); ++i) out.table.rows.push_back({deltas[i], ac[i]});
        return out;
    }
    const auto temps = cfg.temperature_grid->points();
    const double delta = cfg.params.delta;
    const double ac = critical_coupling(delta);
    meta.emplace_back("delta", str(delta));
    Output out{{{"temperature", "alpha_c"}, {}}, meta};
    std::vector<double> spin, boson;
    if (cfg.niba) {
        const NibaBoundaryOptions bo;
        meta.emplace_back("niba_lobe_depth", str(bo.lobe_depth));
        meta.emplace_back("niba_horizon_scale", str(bo.horizon_scale));
        meta.emplace_back("niba_step", str(bo.step));
        meta.emplace_back("niba_alpha_tol", str(bo.alpha_tol));
        out.meta = meta;
        out.table.columns = {"temperature", "alpha_c", "alpha_niba_spin", "alpha_niba_boson"};
        spin = parallel_map(temps.size(), [&](std::size_t i) {
            return niba_boundary(BathKind::Spin, temps[i], delta, bo);
        });
        boson = parallel_map(temps.size(), [&](std::size_t i) {
            return niba_boundary(BathKind::Boson, temps[i], delta, bo);
        });
    }
    for (std::size_t i = 0; i < temps.size(); ++i) {
        std::vector<double> row{temps[i], ac};
        if (cfg.niba) {
            row.push_back(spin[i]);
            row.push_back(boson[i]);
        }
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

Output ground_energy(const RunConfig& cfg) {
    const RenormalizedSystem sys = solve_eta_spin(cfg.params.delta, cfg.params.alpha);
    const double e0 = ground_state_energy(cfg.params.delta, cfg.params.alpha).value;
    Output out{{{"delta", "alpha", "eta", "eta_delta", "e0"}, {}}, base_metadata(cfg, cfg.scalar_spec())};
    out.meta.emplace_back("localized", sys.localized ? "true" : "false");
    out.table.rows.push_back({cfg.params.delta, cfg.params.alpha, sys.eta, sys.effective_tunneling, e0});
    return out;
}

} // namespace

Output compute(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.command == "dynamics") return dynamics(cfg);
    if (cfg.command == "tau-x") return tau_x(cfg);
    if (cfg.command == "boson-dynamics") return boson_dynamics(cfg);
    if (cfg.command == "niba") return niba(cfg);
    if (cfg.command == "shiba-table") return shiba(cfg);
    if (cfg.command == "phase-diagram") return phase_diagram(cfg);
    return ground_energy(cfg);
}

} // namespace spinbath::cli
