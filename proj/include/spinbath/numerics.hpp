// numerics.hpp: Quadrature, root finding, fixed points, extrapolation and the
// Volterra product-integration stepper shared by the physics modules.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace spinbath::num {

struct QuadratureSpec {
    double abs_tol{1e-10};
    double rel_tol{1e-8};
    std::size_t max_subdivisions{2000};
    std::vector<double> breakpoints;  // strictly inside (a, b); unsorted is fine

    void validate(double a, double b) const;

    // Default tolerances for time-series points.
    static QuadratureSpec series() { return {1e-6, 1e-8, 2000, {}}; }
    QuadratureSpec with_breakpoints(std::vector<double> points) const;
    QuadratureSpec scaled(double factor) const;  // both tolerances times factor
};

struct QuadResult {
    double value{0.0};
    double error{0.0};
};

using Function = std::function<double(double)>;

// Adaptive Gauss-Kronrod with extrapolation; handles integrable endpoint
// singularities. Throws IntegrationError when the error target is missed.
QuadResult integrate_adaptive(const Function& f, double a, double b,
                              const QuadratureSpec& spec = {});

// Cauchy principal value of int_a^b f(x) / (x - pole) dx, a < pole < b.
QuadResult integrate_principal_value(const Function& f, double a, double b, double pole,
                                     const QuadratureSpec& spec = {});

enum class Oscillation { Cosine, Sine };

// Filon-type (Clenshaw-Curtis moment) rule for int_a^b f(x) w(omega x) dx with
// w = cos or sin, applied independently on each breakpoint panel.
QuadResult integrate_oscillatory(const Function& f, double a, double b, double omega,
                                 Oscillation kind, const QuadratureSpec& spec = {});

// Brent's method. Requires g(lo) and g(hi) of opposite sign (a zero at either
// end is returned directly). Throws IterationError otherwise.
double find_root_bracketed(const Function& g, double lo, double hi,
                           double abs_tol, double rel_tol = 0.0);

struct FixedPointOptions {
    double damping{0.5};   // x <- (1 - damping) x + damping F(x)
    double tol{1e-10};
    bool relative{false};  // converge on |x - F(x)| <= tol * |x|
    int max_iter{10000};
    // Bracket for the G(x) = x - F(x) root-finding fallback.
    double lo{0.0};
    double hi{1.0};
};

struct FixedPointResult {
    double x{0.0};
    double residual{0.0};  // |x - F(x)| at the returned x
    int iterations{0};
    bool bracketed{false};  // true when the fallback produced x
};

// Damped iteration; falls back to a bracketed root of x - F(x) when the
// iteration cycles or runs out of steps.
FixedPointResult fixed_point(const Function& F, double x0, const FixedPointOptions& opts = {});

// Richardson step for two estimates with step ratio 2 and leading error order p.
double richardson(double coarse, double fine, int order);

// Value at x = 0 of the function sum_k c_k basis_k(x) passing through the
// samples (xs, ys); basis[0] is taken to be the constant. Needs xs.size() == basis.size().
double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys,
                           std::span<const Function> basis);

// One step of the trapezoidal product-integration scheme for
//   dP/dt = -int_0^t K(t - s) P(s) ds
// on a uniform grid. history holds P_0..P_n, kernel K_0..K_{n+1} (at least),
// derivative is dP/dt at t_n. Returns P_{n+1} and dP/dt at t_{n+1}.
struct VolterraState {
    double value;
    double derivative;
};
VolterraState volterra_step(std::span<const double> history, std::span<const double> kernel,
                            double h, double derivative);

// Full solution with P_0 = 1 on kernel.size() grid points. Same scheme as
// volterra_step; the history sums are accumulated with FFT block convolutions.
std::vector<double> solve_volterra(std::span<const double> kernel, double h);

// Stops early once stop(n, P_n) returns true; the returned series ends at n.
std::vector<double> solve_volterra(std::span<const double> kernel, double h,
                                   const std::function<bool(std::size_t, double)>& stop);

} // namespace spinbath::num
