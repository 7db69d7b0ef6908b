// spectral.cpp: Closed-form and principal-value self-energies

#include "spinbath/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spinbath/errors.hpp"

namespace spinbath {

using std::numbers::pi;

namespace {

void require_below_cutoff(double omega, const char* who) {
    if (!(omega >= 0.0 && omega < 1.0)) {
        std::ostringstream os;
        os << who << ": omega = " << omega << " outside [0, 1)";
        throw DomainError(os.str());
    }
}

// Thermal part (1/pi) PV int_0^1 gamma_spin(x) 2n(x) / (x - omega) dx, 0 < omega < 1.
double thermal_shift(double omega, double alpha, double eps, double temperature,
                     const num::QuadratureSpec& spec) {
    auto f = [&](double x) {
        return 2.0 * alpha * pi * eps * eps / ((x + eps) * (x + eps)) * thermal_weight(x, temperature);
    };
    num::QuadratureSpec s = spec;
    s.breakpoints.clear();
    if (eps < 1.0 && std::abs(eps - omega) > 1e-3 * eps) s.breakpoints.push_back(eps);
    return num::integrate_principal_value(f, 0.0, 1.0, omega, s).value / pi;
}

} // namespace

double r_spin(double omega, double alpha, double eta_delta) {
    require_below_cutoff(omega, "r_spin");
    const double eps = eta_delta;
    if (omega == 0.0) return -2.0 * alpha * eps / (1.0 + eps);
    const double s = omega + eps;
    const double log_term = std::log(omega * (1.0 + eps) / (eps * (1.0 - omega)));
    return -2.0 * alpha * eps * eps / s * (1.0 / (1.0 + eps) - omega / s * log_term);
}

double gamma_spin(double omega, double alpha, double eta_delta) {
    if (!(omega >= 0.0 && omega <= 1.0)) return 0.0;
    const double s = omega + eta_delta;
    return 2.0 * alpha * pi * omega * eta_delta * eta_delta / (s * s);
}

double r_boson(double omega, double alpha, double eta_delta, double temperature,
               const num::QuadratureSpec& spec) {
    require_below_cutoff(omega, "r_boson");
    const double zero_t = r_spin(omega, alpha, eta_delta);
    if (temperature == 0.0 || alpha == 0.0) return zero_t;
    if (omega == 0.0) throw DomainError("r_boson: logarithmic divergence at omega = 0 for T > 0");
    return zero_t - thermal_shift(omega, alpha, eta_delta, temperature, spec);
}

double gamma_boson(double omega, double alpha, double eta_delta, double temperature) {
    if (!(omega >= 0.0 && omega <= 1.0)) return 0.0;
    const double s = omega + eta_delta;
    // omega coth(omega / 2T) = omega + omega 2n(omega)
    return 2.0 * alpha * pi * eta_delta * eta_delta / (s * s) *
           (omega + thermal_weight(omega, temperature));
}

SelfEnergy SelfEnergy::spin(double alpha, double eta_delta) {
    return SelfEnergy(BathKind::Spin, alpha, eta_delta, 0.0);
}

SelfEnergy SelfEnergy::boson(double alpha, double eta_delta, double temperature) {
    return SelfEnergy(BathKind::Boson, alpha, eta_delta, temperature);
}

SelfEnergy SelfEnergy::of(const RenormalizedSystem& sys) {
    if (sys.localized || !(sys.effective_tunneling > 0.0))
        throw DomainError("self-energy: system is localized (eta = 0)");
    if (sys.params.bath == BathKind::Spin)
        return spin(sys.params.alpha, sys.effective_tunneling);
    return boson(sys.params.alpha, sys.effective_tunneling, sys.params.temperature);
}

double SelfEnergy::r(double omega) const {
    if (bath_ == BathKind::Spin) return r_spin(omega, alpha_, eta_delta_);
    return r_boson(omega, alpha_, eta_delta_, temperature_);
}

double SelfEnergy::gamma(double omega) const {
    const double g = bath_ == BathKind::Spin ? gamma_spin(omega, alpha_, eta_delta_)
                                             : gamma_boson(omega, alpha_, eta_delta_, temperature_);
    return gamma_scale_ * g;
}

double SelfEnergy::spectral_weight(double omega) const {
    if (!(omega >= 0.0 && omega < 1.0)) return 0.0;
    if (omega == 0.0 && bath_ == BathKind::Boson && temperature_ > 0.0) return 0.0;
    const double g = gamma(omega);
    if (g == 0.0) return 0.0;
    const double d = omega - eta_delta_ - r(omega);
    return g / (d * d + g * g);
}

SelfEnergy SelfEnergy::scaled_gamma(double factor) const {
    SelfEnergy copy = *this;
    copy.gamma_scale_ *= factor;
    return copy;
}

BoundState bound_state_below_band(const SelfEnergy& se) {
    if (se.bath() != BathKind::Boson || se.temperature() == 0.0 || se.alpha() == 0.0) return {};
    const double alpha = se.alpha();
    const double eps = se.eta_delta();
    const double temp = se.temperature();
    const num::QuadratureSpec spec{1e-13, 1e-11, 2000, {}};
    // Below the band R(omega) = -(1/pi) int gamma_B(x) / (x - omega) dx.
    auto r_below = [&](double w) {
        auto f = [&](double x) { return gamma_boson(x, alpha, eps, temp) / (x - w); };
        return -num::integrate_adaptive(f, 0.0, 1.0, spec).value / pi;
    };
    auto g = [&](double w) { return w - eps - r_below(w); };
    double lo = -eps;
    while (g(lo) > 0.0) lo *= 2.0;
    double hi = lo / 2.0;
    while (g(hi) < 0.0) hi /= 2.0;
    BoundState b;
    b.exists = true;
    b.omega = num::find_root_bracketed(g, lo, hi, 1e-15, 1e-13);
    auto dr = [&](double x) {
        return gamma_boson(x, alpha, eps, temp) / ((x - b.omega) * (x - b.omega));
    };
    const double slope = -num::integrate_adaptive(dr, 0.0, 1.0, spec).value / pi;
    b.weight = 1.0 / (1.0 - slope);
    return b;
}

} // namespace spinbath
