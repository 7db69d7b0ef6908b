// dynamics.cpp: P(t), the pole approximation, alpha_c and tau_x

#include "spinbath/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spinbath/errors.hpp"

namespace spinbath {

using std::numbers::pi;

namespace {

std::vector<double> clean_breakpoints(std::vector<double> pts) {
    std::vector<double> out;
    std::sort(pts.begin(), pts.end());
    for (double p : pts) {
        if (!(p > 1e-14 && p < 1.0 - 1e-12)) continue;
        if (!out.empty() && p - out.back() <= 1e-12 * p) continue;
        out.push_back(p);
    }
    return out;
}

double thermal_tanh(double omega, double temperature) {
    if (temperature == 0.0) return omega > 0.0 ? 1.0 : (omega < 0.0 ? -1.0 : 0.0);
    return std::tanh(omega / (2.0 * temperature));
}

// (tanh(a) - tanh(b)) / (omega - eps) with a = omega/2T, b = eps/2T, written
// with decaying exponentials only so large arguments cannot overflow.
double tanh_difference_quotient(double omega, double eps, double temperature) {
    if (temperature == 0.0) return 0.0;
    const double a = omega / (2.0 * temperature);
    const double b = eps / (2.0 * temperature);
    const double u = a - b;
    const double ratio = u == 0.0 ? 2.0 : -std::expm1(-2.0 * u) / u;
    const double ea = std::exp(-2.0 * a);
    const double eb = std::exp(-2.0 * b);
    return 2.0 * eb * ratio / (2.0 * temperature * (1.0 + ea) * (1.0 + eb));
}

void require_bath(const RenormalizedSystem& sys, BathKind kind, const char* who) {
    if (sys.params.bath != kind) {
        std::ostringstream os;
        os << who << ": expected a " << to_string(kind) << "-bath system";
        throw std::invalid_argument(os.str());
    }
}

double free_population(double t, const RenormalizedSystem& sys) {
    return std::cos(sys.params.delta * t);
}

} // namespace

SpectralTransform::SpectralTransform(SelfEnergy se) : se_(std::move(se)) {
    const double eps = se_.eta_delta();
    double center = eps;
    if (se_.bath() == BathKind::Spin) {
        const PoleData pole = pole_data(se_);
        if (pole.exists) center = pole.omega0;
    }
    const double width = std::max(std::abs(se_.gamma(center)), 1e-12 * eps);
    std::vector<double> pts{eps, 0.1 * eps, center};
    for (double k : {1.0, 3.0, 10.0, 100.0}) {
        pts.push_back(center - k * width);
        pts.push_back(center + k * width);
    }
    breaks_ = clean_breakpoints(std::move(pts));
}

double SpectralTransform::transform(double t, num::Oscillation kind,
                                    const num::QuadratureSpec& spec) const {
    num::QuadratureSpec s = spec.with_breakpoints(breaks_);
    s.abs_tol *= pi;
    auto weight = [this](double w) { return se_.spectral_weight(w); };
    if (t == 0.0) {
        if (kind == num::Oscillation::Sine) return 0.0;
        return num::integrate_adaptive(weight, 0.0, 1.0, s).value / pi;
    }
    if (se_.eta_delta() * t <= kOscillatorySwitch) {
        auto f = [&](double w) {
            const double phase = w * t;
            return weight(w) * (kind == num::Oscillation::Cosine ? std::cos(phase) : std::sin(phase));
        };
        try {
            return num::integrate_adaptive(f, 0.0, 1.0, s).value / pi;
        } catch (const IntegrationError&) {
            // Narrow peak times many periods can defeat the extrapolation; retry with the Filon rule.
        }
    }
    return num::integrate_oscillatory(weight, 0.0, 1.0, t, kind, s).value / pi;
}

double SpectralTransform::cosine(double t, const num::QuadratureSpec& spec) const {
    return transform(t, num::Oscillation::Cosine, spec);
}

double SpectralTransform::sine(double t, const num::QuadratureSpec& spec) const {
    return transform(t, num::Oscillation::Sine, spec);
}

PoleData pole_data(const SelfEnergy& se) {
    const double eps = se.eta_delta();
    PoleData pole;
    pole.gamma_wwa = se.gamma(eps);
    if (se.alpha() == 0.0) {
        pole.omega0 = eps;
        pole.exists = true;
        return pole;
    }
    const double start = (se.bath() == BathKind::Boson && se.temperature() > 0.0) ? 1e-12 * eps : 0.0;
    auto g = [&](double w) { return se.pole_function(w); };
    if (g(start) >= 0.0) return pole;
    // The level-shift log makes g fall again near the cutoff, so take the
    // first sign change rather than any bracket on (0, 1).
    const double step = eps / 64.0;
    double lo = start;
    for (double hi = start + step; hi < 1.0; lo = hi, hi += step) {
        if (g(hi) > 0.0) {
            pole.omega0 = num::find_root_bracketed(g, lo, hi, 1e-15, 1e-13);
            pole.exists = true;
            return pole;
        }
    }
    return pole;
}

PoleData pole_data(const RenormalizedSystem& sys) {
    return pole_data(SelfEnergy::of(sys));
}

double wwa_population(double t, const PoleData& pole) {
    if (!pole.exists) throw DomainError("wwa_population: no real pole (incoherent regime)");
    return std::cos(pole.omega0 * t) * std::exp(-pole.gamma_wwa * t);
}

double population_difference(double t, const RenormalizedSystem& sys,
                             const num::QuadratureSpec& spec) {
    require_bath(sys, BathKind::Spin, "population_difference");
    if (t < 0.0) throw std::invalid_argument("population_difference: t must be >= 0");
    if (sys.params.alpha == 0.0) return free_population(t, sys);
    return SpectralTransform(SelfEnergy::of(sys)).cosine(t, spec);
}

double population_boson(double t, double temperature, const RenormalizedSystem& sys_b,
                        const num::QuadratureSpec& spec) {
    require_bath(sys_b, BathKind::Boson, "population_boson");
    if (sys_b.params.temperature != temperature)
        throw std::invalid_argument("population_boson: system was solved at another temperature");
    if (t < 0.0) throw std::invalid_argument("population_boson: t must be >= 0");
    if (sys_b.params.alpha == 0.0) return free_population(t, sys_b);
    return SpectralTransform(SelfEnergy::of(sys_b)).cosine(t, spec);
}

std::string to_string(DynamicsMethod m) {
    switch (m) {
    case DynamicsMethod::FullQuadrature: return "full";
    case DynamicsMethod::WWA: return "wwa";
    case DynamicsMethod::NIBA: return "niba";
    }
    return "unknown";
}

std::vector<double> default_time_grid(const RenormalizedSystem& sys, std::size_t points,
                                      double scaled_tmax) {
    if (!(sys.effective_tunneling > 0.0))
        throw DomainError("default_time_grid: eta_delta = 0 (localized)");
    return linear_grid(0.0, scaled_tmax / sys.effective_tunneling, points);
}

DynamicsResult population_series(const RenormalizedSystem& sys, const std::vector<double>& times,
                                 const num::QuadratureSpec& spec) {
    DynamicsResult r;
    r.method = DynamicsMethod::FullQuadrature;
    r.series.method = to_string(r.method);
    r.series.params = sys.params;
    r.series.abs_tol = spec.abs_tol;
    r.series.rel_tol = spec.rel_tol;
    r.series.t = times;
    if (sys.params.alpha == 0.0) {
        for (double t : times) r.series.value.push_back(free_population(t, sys));
        return r;
    }
    const SpectralTransform transform(SelfEnergy::of(sys));
    r.series.value = parallel_map(times.size(), [&](std::size_t i) {
        if (times[i] < 0.0) throw std::invalid_argument("population_series: negative time");
        return transform.cosine(times[i], spec);
    });
    return r;
}

DynamicsResult wwa_series(const RenormalizedSystem& sys, const std::vector<double>& times) {
    DynamicsResult r;
    r.method = DynamicsMethod::WWA;
    r.series.method = to_string(r.method);
    r.series.params = sys.params;
    r.series.t = times;
    const PoleData pole = pole_data(sys);
    for (double t : times) r.series.value.push_back(wwa_population(t, pole));
    return r;
}

double critical_coupling(double delta, double tol) {
    if (!(delta > 0.0)) throw std::invalid_argument("critical_coupling: delta must be > 0");
    auto h = [&](double a) { return a - 0.5 * (1.0 + solve_eta_spin(delta, a).effective_tunneling); };
    const double hi = std::max(0.7, 0.5 * (1.0 + delta) + 0.01);
    return num::find_root_bracketed(h, 0.4, hi, tol);
}

std::string to_string(Regime r) {
    return r == Regime::Coherent ? "coherent" : "incoherent";
}

PhasePoint classify_dynamics(double delta, double alpha, double temperature) {
    PhasePoint p;
    p.alpha = alpha;
    p.delta = delta;
    p.temperature = temperature;
    p.alpha_c = critical_coupling(delta);
    p.classification = alpha < p.alpha_c ? Regime::Coherent : Regime::Incoherent;
    return p;
}

namespace {

struct TauXTerms {
    double eps, delta, eta, alpha, temperature, gamma;
    std::vector<double> breaks;

    double v2(double w) const {
        const double s = w + eps;
        return 2.0 * alpha * w * eps * eps / (s * s);
    }
    double vv(double w) const {
        const double s = w + eps;
        return 2.0 * alpha * w * eps / (s * s);
    }

    // int_0^1 f(omega) trig(omega t) d omega
    double osc(const num::Function& f, double t, num::Oscillation kind,
               const num::QuadratureSpec& spec) const {
        num::QuadratureSpec s = spec.with_breakpoints(breaks);
        if (t == 0.0) {
            if (kind == num::Oscillation::Sine) return 0.0;
            return num::integrate_adaptive(f, 0.0, 1.0, s).value;
        }
        return num::integrate_oscillatory(f, 0.0, 1.0, t, kind, s).value;
    }

    // int_0^1 f(omega) cos((omega - eps) t) and sin((omega - eps) t)
    double shifted_cos(const num::Function& f, double t, const num::QuadratureSpec& spec) const {
        return std::cos(eps * t) * osc(f, t, num::Oscillation::Cosine, spec) +
               std::sin(eps * t) * osc(f, t, num::Oscillation::Sine, spec);
    }
    double shifted_sin(const num::Function& f, double t, const num::QuadratureSpec& spec) const {
        return std::cos(eps * t) * osc(f, t, num::Oscillation::Sine, spec) -
               std::sin(eps * t) * osc(f, t, num::Oscillation::Cosine, spec);
    }

    double term1(double t) const {
        return eta * thermal_tanh(eps, temperature) * -std::expm1(-2.0 * gamma * t);
    }
    double term2(double t, const num::QuadratureSpec& spec) const {
        auto f = [&](double w) { return vv(w) * thermal_tanh(w, temperature); };
        return -std::sin(eps * t) / delta * osc(f, t, num::Oscillation::Sine, spec);
    }
    double term3_static(const num::QuadratureSpec& spec) const {
        if (temperature == 0.0) return 0.0;
        auto f = [&](double w) { return v2(w) * tanh_difference_quotient(w, eps, temperature); };
        return num::integrate_adaptive(f, 0.0, 1.0, spec.with_breakpoints(breaks)).value / delta;
    }
    double term3(double t, const num::QuadratureSpec& spec) const {
        if (temperature == 0.0 || t == 0.0) return 0.0;
        auto f = [&](double w) { return v2(w) * tanh_difference_quotient(w, eps, temperature); };
        return term3_static(spec) - shifted_cos(f, t, spec) / delta;
    }
    double term4(double t, const num::QuadratureSpec& spec) const {
        if (t == 0.0) return 0.0;
        const double g2 = 4.0 * gamma * gamma;
        auto odd = [&](double w) {
            const double x = w - eps;
            return v2(w) * x / (x * x + g2);
        };
        auto even = [&](double w) {
            const double x = w - eps;
            return v2(w) / (x * x + g2);
        };
        const double decay = std::exp(-2.0 * gamma * t);
        const num::QuadratureSpec s = spec.with_breakpoints(breaks);
        const double a = decay * num::integrate_adaptive(odd, 0.0, 1.0, s).value;
        const double b = -shifted_cos(odd, t, spec);
        const double c = 2.0 * gamma * shifted_sin(even, t, spec);
        return thermal_tanh(eps, temperature) * (a + b + c) / delta;
    }
};

TauXTerms tau_x_terms(double temperature, const RenormalizedSystem& sys) {
    require_bath(sys, BathKind::Spin, "tau_x_expectation");
    if (temperature < 0.0) throw std::invalid_argument("tau_x: temperature must be >= 0");
    const double eps = sys.effective_tunneling;
    if (!(eps > 0.0)) throw DomainError("tau_x: system is localized (eta = 0)");
    TauXTerms terms{eps, sys.params.delta, sys.eta, sys.params.alpha, temperature,
                    0.5 * sys.params.alpha * pi * eps, {}};
    std::vector<double> pts{eps, 0.1 * eps};
    for (double k : {1.0, 3.0, 10.0, 100.0}) {
        pts.push_back(eps - 2.0 * k * terms.gamma);
        pts.push_back(eps + 2.0 * k * terms.gamma);
    }
    terms.breaks = clean_breakpoints(std::move(pts));
    return terms;
}

template <typename F>
double labelled(int term, F&& f) {
    try {
        return f();
    } catch (const IntegrationError& e) {
        throw IntegrationError("tau_x term " + std::to_string(term) + ": " + e.what(), e.achieved);
    }
}

} // namespace

double tau_x_expectation(double t, double temperature, const RenormalizedSystem& sys,
                         const num::QuadratureSpec& spec) {
    if (t < 0.0) throw std::invalid_argument("tau_x_expectation: t must be >= 0");
    if (sys.params.alpha == 0.0) return 0.0;
    const TauXTerms terms = tau_x_terms(temperature, sys);
    return terms.term1(t) + labelled(2, [&] { return terms.term2(t, spec); }) +
           labelled(3, [&] { return terms.term3(t, spec); }) +
           labelled(4, [&] { return terms.term4(t, spec); });
}

double tau_x_long_time(double temperature, const RenormalizedSystem& sys,
                       const num::QuadratureSpec& spec) {
    if (sys.params.alpha == 0.0) return 0.0;
    const TauXTerms terms = tau_x_terms(temperature, sys);
    return terms.eta * thermal_tanh(terms.eps, temperature) +
           labelled(3, [&] { return terms.term3_static(spec); });
}

CoherenceElements coherence_elements(double t, double temperature, const RenormalizedSystem& sys,
                                     const num::QuadratureSpec& spec) {
    require_bath(sys, BathKind::Spin, "coherence_elements");
    if (t < 0.0) throw std::invalid_argument("coherence_elements: t must be >= 0");
    CoherenceElements c;
    if (sys.params.alpha == 0.0) {
        c.diag_diff = free_population(t, sys);
        c.offdiag_diff = -std::sin(sys.params.delta * t);
        return c;
    }
    const SpectralTransform transform(SelfEnergy::of(sys));
    const double eps = sys.effective_tunneling;
    const double gamma = transform.self_energy().gamma(eps);
    c.diag_diff = transform.cosine(t, spec);
    c.offdiag_sum = thermal_tanh(eps, temperature) * -std::expm1(-2.0 * gamma * t);
    c.offdiag_diff = -transform.sine(t, spec);
    return c;
}

} // namespace spinbath
