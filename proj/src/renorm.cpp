// renorm.cpp: Fixed-point solvers for eta and the ground-state energy

#include "spinbath/renorm.hpp"

#include <cmath>
#include <limits>

#include "spinbath/errors.hpp"
#include "spinbath/numerics.hpp"

namespace spinbath {

namespace {

constexpr double kExponentCeiling = 50.0;
constexpr double kLocalizedBelow = 1e-280;

struct ExponentOverflow {};

RenormalizedSystem make_result(const ModelParams& p, const num::FixedPointResult& fp) {
    RenormalizedSystem sys;
    sys.params = p;
    sys.iterations = fp.iterations;
    if (fp.x < kLocalizedBelow) {
        sys.eta = 0.0;
        sys.localized = true;
    } else {
        sys.eta = fp.x;
        sys.residual = fp.residual;
    }
    sys.effective_tunneling = sys.eta * p.delta;
    return sys;
}

num::FixedPointOptions eta_options(double tol) {
    num::FixedPointOptions opts;
    opts.tol = tol;
    opts.relative = true;
    opts.lo = std::numeric_limits<double>::min();
    opts.hi = 1.0;
    return opts;
}

} // namespace

double eta_exponent_spin(double eps, double alpha) {
    return alpha * (std::log1p(1.0 / eps) - 1.0 / (1.0 + eps));
}

double eta_exponent_boson(double eps, double alpha, double temperature) {
    const double zero_t = eta_exponent_spin(eps, alpha);
    if (temperature == 0.0 || alpha == 0.0) return zero_t;
    num::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-12;
    if (eps < 1.0) spec.breakpoints = {eps};
    auto integrand = [&](double x) {
        return thermal_weight(x, temperature) / ((x + eps) * (x + eps));
    };
    return zero_t + alpha * num::integrate_adaptive(integrand, 0.0, 1.0, spec).value;
}

RenormalizedSystem solve_eta_spin(double delta, double alpha, double tol) {
    ModelParams p{BathKind::Spin, delta, alpha, 0.0};
    p.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (alpha == 0.0) return {p, 1.0, delta, 0.0, 0, false};
    auto F = [&](double eta) {
        if (eta <= 0.0) return 0.0;
        return std::exp(-eta_exponent_spin(eta * delta, alpha));
    };
    return make_result(p, num::fixed_point(F, 1.0, eta_options(tol)));
}

RenormalizedSystem solve_eta_boson(double delta, double alpha, double temperature, double tol) {
    if (temperature == 0.0) {
        RenormalizedSystem sys = solve_eta_spin(delta, alpha, tol);
        sys.params.bath = BathKind::Boson;
        return sys;
    }
    ModelParams p{BathKind::Boson, delta, alpha, temperature};
    p.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (alpha == 0.0) return {p, 1.0, delta, 0.0, 0, false};
    auto F = [&](double eta) {
        if (eta <= 0.0) throw ExponentOverflow{};
        const double e = eta_exponent_boson(eta * delta, alpha, temperature);
        if (e > kExponentCeiling) throw ExponentOverflow{};
        return std::exp(-e);
    };
    try {
        return make_result(p, num::fixed_point(F, 1.0, eta_options(tol)));
    } catch (const ExponentOverflow&) {
        RenormalizedSystem sys;
        sys.params = p;
        sys.eta = 0.0;
        sys.effective_tunneling = 0.0;
        sys.localized = true;
        return sys;
    }
}

RenormalizedSystem solve_eta(const ModelParams& params, double tol) {
    params.validate();
    if (params.bath == BathKind::Spin) return solve_eta_spin(params.delta, params.alpha, tol);
    return solve_eta_boson(params.delta, params.alpha, params.temperature, tol);
}

double renormalized_frequency(double omega, double g2, double eta_delta) {
    const double s = omega + eta_delta;
    return (omega * s + g2) / std::sqrt(s * s + g2);
}

GroundEnergy ground_state_energy(double delta, double alpha, double tol) {
    const RenormalizedSystem sys = solve_eta_spin(delta, alpha, tol);
    const double eps = sys.effective_tunneling;
    return {-0.5 * eps - 0.5 * alpha / (1.0 + eps)};
}

} // namespace spinbath
