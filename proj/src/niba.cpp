// niba.cpp: NIBA phases, kernel, Volterra dynamics and the lobe boundary

#include "spinbath/niba.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <gsl/gsl_sf_expint.h>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

constexpr double kEulerGamma = std::numbers::egamma;

const num::QuadratureSpec kPhaseSpec{1e-12, 1e-10, 2000, {}};

// coth(w/2T)/w - 2T/w^2: smooth on [0, 1].
double bose_remainder(double w, double temperature) {
    const double x = w / temperature;
    if (x < 1e-2) {
        const double x2 = x * x;
        return (1.0 / 6.0 - x2 / 360.0 + x2 * x2 / 15120.0) / temperature;
    }
    return (1.0 + 2.0 / std::expm1(x)) / w - 2.0 * temperature / (w * w);
}

double bose_remainder_integral(double temperature) {
    auto r = [temperature](double w) { return bose_remainder(w, temperature); };
    return num::integrate_adaptive(r, 0.0, 1.0, kPhaseSpec).value;
}

// Q2 / (2 alpha) for the boson bath at T > 0; coth/w = 2T/w^2 + remainder and
// the first piece integrates in closed form. plain = int_0^1 remainder.
double boson_q2_unit(double t, double temperature, double plain) {
    const double singular = 2.0 * temperature * (std::cos(t) - 1.0 + t * gsl_sf_Si(t));
    auto r = [temperature](double w) { return bose_remainder(w, temperature); };
    const double cosine =
        num::integrate_oscillatory(r, 0.0, 1.0, t, num::Oscillation::Cosine, kPhaseSpec).value;
    return singular + plain - cosine;
}

} // namespace

double sine_integral(double t) {
    return t == 0.0 ? 0.0 : gsl_sf_Si(t);
}

double cosine_integral_entire(double t) {
    t = std::abs(t);
    if (t < 1.0) {
        // sum_k (-1)^{k+1} t^{2k} / (2k (2k)!)
        double term = 1.0;  // t^{2k} / (2k)!
        double sum = 0.0;
        const double t2 = t * t;
        for (int k = 1; k <= 12; ++k) {
            term *= t2 / ((2.0 * k - 1.0) * (2.0 * k));
            const double add = term / (2.0 * k);
            sum += (k % 2 == 1) ? add : -add;
        }
        return sum;
    }
    return kEulerGamma + std::log(t) - gsl_sf_Ci(t);
}

double q1_from_density(double t, const std::function<double(double)>& density) {
    if (t == 0.0) return 0.0;
    auto f = [&](double w) { return w == 0.0 ? 0.0 : density(w) / (w * w); };
    return num::integrate_oscillatory(f, 0.0, 1.0, t, num::Oscillation::Sine, kPhaseSpec).value;
}

double NibaKernel::q1(double t) const {
    if (t < 0.0) throw std::invalid_argument("q1: t must be >= 0");
    if (t == 0.0 || alpha == 0.0) return 0.0;
    if (bath == BathKind::Boson || temperature == 0.0) return 2.0 * alpha * sine_integral(t);
    const double temp = temperature;
    auto f = [temp](double w) {
        if (w == 0.0) return 1.0 / (2.0 * temp);
        return std::tanh(w / (2.0 * temp)) / w;
    };
    return 2.0 * alpha *
           num::integrate_oscillatory(f, 0.0, 1.0, t, num::Oscillation::Sine, kPhaseSpec).value;
}

double NibaKernel::q2(double t) const {
    if (t < 0.0) throw std::invalid_argument("q2: t must be >= 0");
    if (t == 0.0 || alpha == 0.0) return 0.0;
    if (bath == BathKind::Spin || temperature == 0.0)
        return 2.0 * alpha * cosine_integral_entire(t);
    return 2.0 * alpha *
           boson_q2_unit(t, temperature, bose_remainder_integral(temperature));
}

double NibaKernel::kernel(double t, double delta) const {
    return delta * delta * std::cos(q1(t)) * std::exp(-q2(t));
}

double niba_kernel(double t, double delta, const NibaKernel& k) {
    return k.kernel(t, delta);
}

NibaPhaseTable NibaPhaseTable::build(BathKind bath, double temperature, double step,
                                     std::size_t count) {
    if (!(step > 0.0)) throw std::invalid_argument("NibaPhaseTable: step must be > 0");
    NibaPhaseTable table;
    table.bath = bath;
    table.temperature = temperature;
    table.step = step;
    const NibaKernel unit{bath, 1.0, temperature};
    table.q1_unit = parallel_map(count, [&](std::size_t n) { return unit.q1(step * n); });
    if (bath == BathKind::Boson && temperature > 0.0) {
        const double plain = bose_remainder_integral(temperature);
        table.q2_unit = parallel_map(count, [&](std::size_t n) {
            return n == 0 ? 0.0 : 2.0 * boson_q2_unit(step * n, temperature, plain);
        });
    } else {
        table.q2_unit = parallel_map(count, [&](std::size_t n) { return unit.q2(step * n); });
    }
    return table;
}

std::vector<double> NibaPhaseTable::kernel(double delta, double alpha, std::size_t count) const {
    if (count > q1_unit.size()) throw std::invalid_argument("NibaPhaseTable: table too short");
    std::vector<double> k(count);
    for (std::size_t n = 0; n < count; ++n)
        k[n] = delta * delta * std::cos(alpha * q1_unit[n]) * std::exp(-alpha * q2_unit[n]);
    return k;
}

TimeSeries niba_population(const std::vector<double>& times, double delta, const NibaKernel& k,
                           const NibaOptions& opts) {
    ModelParams params{k.bath, delta, k.alpha, k.temperature};
    params.validate();
    if (times.empty() || times.front() != 0.0)
        throw std::invalid_argument("niba_population: grid must start at t = 0");
    TimeSeries out;
    out.method = "niba";
    out.params = params;
    out.abs_tol = opts.tol;
    out.t = times;
    if (times.size() == 1) {
        out.value = {1.0};
        return out;
    }
    const double spacing = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double expected = spacing * static_cast<double>(i);
        if (!(spacing > 0.0) || std::abs(times[i] - expected) > 1e-9 * std::max(1.0, expected))
            throw std::invalid_argument("niba_population: grid must be uniform and increasing");
    }
    const auto per_output = static_cast<std::size_t>(std::ceil(spacing / opts.step - 1e-9));
    const double h = spacing / static_cast<double>(per_output);
    const std::size_t coarse_n = (times.size() - 1) * per_output + 1;
    const std::size_t fine_n = 2 * (coarse_n - 1) + 1;

    const NibaPhaseTable table = NibaPhaseTable::build(k.bath, k.temperature, 0.5 * h, fine_n);
    const std::vector<double> fine_kernel = table.kernel(delta, k.alpha, fine_n);
    std::vector<double> coarse_kernel(coarse_n);
    for (std::size_t n = 0; n < coarse_n; ++n) coarse_kernel[n] = fine_kernel[2 * n];

    const std::vector<double> coarse = num::solve_volterra(coarse_kernel, h);
    const std::vector<double> fine = num::solve_volterra(fine_kernel, 0.5 * h);

    double estimate = 0.0;
    out.value.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double pc = coarse[i * per_output];
        const double pf = fine[2 * i * per_output];
        out.value[i] = num::richardson(pc, pf, 2);
        estimate = std::max(estimate, std::abs(pf - pc) / 3.0);
    }
    if (estimate > opts.tol) {
        std::ostringstream os;
        os << "niba_population: step " << h << " not converged, Richardson estimate " << estimate
           << " > " << opts.tol;
        throw IterationError(os.str(), estimate);
    }
    return out;
}

double niba_effective_tunneling(double delta, double alpha) {
    const double a = std::min(alpha, 0.5);
    return delta * std::pow(delta, a / (1.0 - a));
}

LobeProbe niba_lobe(double delta, double alpha, const NibaPhaseTable& table,
                    const NibaBoundaryOptions& opts) {
    LobeProbe probe;
    probe.horizon = opts.horizon_scale / niba_effective_tunneling(delta, alpha);
    const auto count = static_cast<std::size_t>(std::ceil(probe.horizon / table.step)) + 1;
    const std::vector<double> kernel = table.kernel(delta, alpha, count);
    double previous = 1.0;
    std::size_t stop_at = count;
    auto stop = [&](std::size_t n, double p) {
        if (n > 0 && p > previous) {
            stop_at = n - 1;
            return true;
        }
        previous = p;
        if (p < -opts.lobe_depth) {
            stop_at = n;
            return true;
        }
        return false;
    };
    const std::vector<double> p = num::solve_volterra(kernel, table.step, stop);
    const std::size_t at = std::min(stop_at, p.size() - 1);
    probe.first_minimum = p[at];
    probe.t_minimum = table.step * static_cast<double>(at);
    probe.lobe = probe.first_minimum < -opts.lobe_depth;
    return probe;
}

double niba_boundary(BathKind bath, double temperature, double delta,
                     const NibaBoundaryOptions& opts) {
    ModelParams{bath, delta, 0.0, temperature}.validate();
    const double longest = opts.horizon_scale / niba_effective_tunneling(delta, 0.5);
    const auto count = static_cast<std::size_t>(std::ceil(longest / opts.step)) + 2;
    const NibaPhaseTable table = NibaPhaseTable::build(bath, temperature, opts.step, count);

    double lo = opts.alpha_lo;
    double hi = opts.alpha_hi;
    const LobeProbe at_lo = niba_lobe(delta, lo, table, opts);
    const LobeProbe at_hi = niba_lobe(delta, hi, table, opts);
    if (!at_lo.lobe || at_hi.lobe) {
        std::ostringstream os;
        os << "niba_boundary: lobe criterion does not change sign on [" << lo << ", " << hi
           << "] (first minimum " << at_lo.first_minimum << " at alpha = " << lo << ", "
           << at_hi.first_minimum << " at alpha = " << hi << ", horizon " << at_hi.horizon << ")";
        throw IterationError(os.str(), lo);
    }
    while (hi - lo > opts.alpha_tol) {
        const double mid = 0.5 * (lo + hi);
        (niba_lobe(delta, mid, table, opts).lobe ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace spinbath
