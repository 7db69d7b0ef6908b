// correlation.cpp: C(omega), chi'', chi0 and the Shiba/sum-rule report

#include "spinbath/correlation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinbath/dynamics.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/series.hpp"

namespace spinbath {

using std::numbers::pi;

double spectral_weight_c(double omega, const RenormalizedSystem& sys) {
    if (!(omega >= 0.0 && omega < 1.0)) {
        std::ostringstream os;
        os << "spectral_weight_c: omega = " << omega << " outside [0, 1)";
        throw DomainError(os.str());
    }
    return SelfEnergy::of(sys).spectral_weight(omega) / pi;
}

double correlation_function(double t, const RenormalizedSystem& sys,
                            const num::QuadratureSpec& spec) {
    return population_difference(t, sys, spec);
}

double susceptibility_im(double omega, const RenormalizedSystem& sys) {
    if (!(std::abs(omega) < 1.0)) throw DomainError("susceptibility_im: |omega| >= 1");
    if (omega == 0.0) return 0.0;
    const double c = spectral_weight_c(std::abs(omega), sys);
    return omega > 0.0 ? pi * c : -pi * c;
}

double static_susceptibility(const SelfEnergy& se, const num::QuadratureSpec& spec) {
    const SpectralTransform transform(se);
    auto f = [&](double w) { return w == 0.0 ? 0.0 : se.spectral_weight(w) / w; };
    return 2.0 / pi *
           num::integrate_adaptive(f, 0.0, 1.0, spec.with_breakpoints(transform.breakpoints())).value;
}

double static_susceptibility(const RenormalizedSystem& sys, const num::QuadratureSpec& spec) {
    return static_susceptibility(SelfEnergy::of(sys), spec);
}

double shiba_limit(const SelfEnergy& se) {
    const double gap = std::abs(se.eta_delta() + se.r(0.0));
    const double top = std::min(1e-4 * gap, 1e-4);
    const std::array<double, 3> xs{top, 0.1 * top, 0.01 * top};
    std::array<double, 3> ys{};
    for (std::size_t i = 0; i < xs.size(); ++i)
        ys[i] = se.spectral_weight(xs[i]) / pi / spectral_density(xs[i], se.alpha());
    const std::array<num::Function, 3> basis{
        [](double) { return 1.0; }, [](double w) { return w; },
        [](double w) { return w * std::log(w); }};
    const double limit = num::extrapolate_to_zero(xs, ys, basis);
    if (!std::isfinite(limit)) {
        std::ostringstream os;
        os << "shiba_limit: extrapolation failed; samples";
        for (std::size_t i = 0; i < xs.size(); ++i) os << " (" << xs[i] << ", " << ys[i] << ")";
        throw IterationError(os.str(), ys.back());
    }
    return limit;
}

ShibaReport shiba_check(double delta, double alpha, const ShibaOptions& opts) {
    const RenormalizedSystem sys = solve_eta_spin(delta, alpha);
    const SelfEnergy se = SelfEnergy::of(sys).scaled_gamma(opts.gamma_scale);
    ShibaReport rep;
    rep.delta = delta;
    rep.alpha = alpha;
    rep.in_coherent_regime = alpha < critical_coupling(delta);
    rep.chi0_half = 0.5 * static_susceptibility(se, opts.spec);
    rep.c_over_j_limit = shiba_limit(se);
    rep.ratio = rep.c_over_j_limit / (rep.chi0_half * rep.chi0_half);
    rep.sum_rule = SpectralTransform(se).cosine(0.0, opts.spec);
    return rep;
}

const std::vector<TableRow>& reference_table_rows() {
    static const std::vector<TableRow> rows{
        {0.01, 0.1}, {0.01, 0.3}, {0.05, 0.01}, {0.05, 0.2}, {0.05, 0.3},
        {0.05, 0.4}, {0.1, 0.1},  {0.1, 0.2},   {0.1, 0.3},  {0.1, 0.4},
        {0.1, 0.5},  {0.2, 0.5},  {0.3, 0.5}};
    return rows;
}

std::vector<ShibaReport> shiba_table(const std::vector<TableRow>& rows, const ShibaOptions& opts) {
    std::vector<ShibaReport> out(rows.size());
    parallel_map(rows.size(), [&](std::size_t i) {
        out[i] = shiba_check(rows[i].delta, rows[i].alpha, opts);
        return 0.0;
    });
    return out;
}

} // namespace spinbath
