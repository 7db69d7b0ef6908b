// niba.hpp: Noninteracting-blip reference dynamics: bath phases Q1, Q2, the
// memory kernel, the Volterra solution for P(t) and the lobe-based boundary

#pragma once

#include <functional>
#include <vector>

#include "spinbath/model.hpp"
#include "spinbath/numerics.hpp"
#include "spinbath/series.hpp"

namespace spinbath {

double sine_integral(double t);            // Si(t)
double cosine_integral_entire(double t);   // Cin(t) = int_0^t (1 - cos u) / u du

struct NibaKernel {
    BathKind bath{BathKind::Spin};
    double alpha{0.0};
    double temperature{0.0};

    // Spin: int_0^1 sin(wt) tanh(w/2T) 2 alpha / w dw. Boson: 2 alpha Si(t).
    double q1(double t) const;
    // Spin: 2 alpha Cin(t). Boson: int_0^1 (1 - cos wt) coth(w/2T) 2 alpha / w dw.
    double q2(double t) const;
    // delta^2 cos(Q1) exp(-Q2)
    double kernel(double t, double delta) const;
};

// Q1 for an arbitrary spectral density J on [0, 1]: int J(w) sin(wt) / w^2 dw.
double q1_from_density(double t, const std::function<double(double)>& density);

double niba_kernel(double t, double delta, const NibaKernel& k);

struct NibaOptions {
    double step{0.05};  // internal Volterra step, refined to divide the output spacing
    double tol{1e-6};   // bound on |P_h - P_{h/2}| / 3 at the output points
};

// P(t) on a uniform grid starting at 0. Solves at h and h/2 and returns the
// Richardson combination; throws IterationError when the estimate exceeds tol.
TimeSeries niba_population(const std::vector<double>& times, double delta, const NibaKernel& k,
                           const NibaOptions& opts = {});

// Q1/alpha and Q2/alpha on t_n = n h, n < count. Both phases are linear in
// alpha, so one table serves every coupling at fixed bath and T.
struct NibaPhaseTable {
    BathKind bath{BathKind::Spin};
    double temperature{0.0};
    double step{0.0};
    std::vector<double> q1_unit;
    std::vector<double> q2_unit;

    static NibaPhaseTable build(BathKind bath, double temperature, double step, std::size_t count);
    std::vector<double> kernel(double delta, double alpha, std::size_t count) const;
};

struct NibaBoundaryOptions {
    double lobe_depth{0.01};       // a lobe counts once P < -lobe_depth
    double horizon_scale{50.0};    // t_max = horizon_scale / delta_eff
    double step{0.1};
    double alpha_lo{0.05};
    double alpha_hi{1.2};
    double alpha_tol{1e-3};
};

// delta (delta)^{a/(1-a)}, a = min(alpha, 1/2): the renormalized tunneling
// setting the NIBA time scale, frozen at its alpha = 1/2 value beyond.
double niba_effective_tunneling(double delta, double alpha);

struct LobeProbe {
    bool lobe{false};
    double first_minimum{1.0};  // P at the first local minimum (or at the horizon)
    double t_minimum{0.0};
    double horizon{0.0};
};

LobeProbe niba_lobe(double delta, double alpha, const NibaPhaseTable& table,
                    const NibaBoundaryOptions& opts = {});

// Coupling at which the NIBA P(t) stops developing a negative lobe below
// -lobe_depth within the horizon, by bisection.
double niba_boundary(BathKind bath, double temperature, double delta,
                     const NibaBoundaryOptions& opts = {});

} // namespace spinbath
