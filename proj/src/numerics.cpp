// numerics.cpp: GSL-backed quadrature and root finding, fixed points,
// extrapolation, and the Volterra product-integration solver.

#include "spinbath/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_roots.h>

#include "spinbath/errors.hpp"
#include "spinbath/fft.hpp"

namespace spinbath::num {

namespace {

void silence_gsl() {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

// Carries a C++ callable through GSL's C callback; exceptions are parked and
// rethrown once control is back on the C++ side.
struct Thunk {
    const Function* f;
    std::exception_ptr error;

    static double call(double x, void* params) {
        auto* self = static_cast<Thunk*>(params);
        if (self->error) return 0.0;
        try {
            return (*self->f)(x);
        } catch (...) {
            self->error = std::current_exception();
            return 0.0;
        }
    }

    gsl_function as_gsl() { return gsl_function{&Thunk::call, this}; }

    void rethrow() const {
        if (error) std::rethrow_exception(error);
    }
};

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

struct QawoTableDeleter {
    void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};

Workspace make_workspace(std::size_t n) {
    Workspace w(gsl_integration_workspace_alloc(std::max<std::size_t>(n, 16)));
    if (!w) throw std::bad_alloc();
    return w;
}

double target(const QuadratureSpec& spec, double value) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

std::vector<double> panel_edges(double a, double b, const QuadratureSpec& spec) {
    std::vector<double> edges{a};
    std::vector<double> inner = spec.breakpoints;
    std::sort(inner.begin(), inner.end());
    for (double p : inner) {
        if (p > edges.back() && p < b) edges.push_back(p);
    }
    edges.push_back(b);
    return edges;
}

[[noreturn]] void fail(const char* routine, int status, double a, double b, double err,
                       double tol) {
    std::ostringstream os;
    os << routine << " on [" << a << ", " << b << "]: " << gsl_strerror(status)
       << " (error estimate " << err << ", target " << tol << ")";
    throw IntegrationError(os.str(), err);
}

QuadResult finish(const char* routine, int status, double a, double b, QuadResult r,
                  const QuadratureSpec& spec) {
    if (!std::isfinite(r.value)) fail(routine, GSL_EBADFUNC, a, b, r.error, target(spec, 0.0));
    if (status != GSL_SUCCESS && r.error > target(spec, r.value))
        fail(routine, status, a, b, r.error, target(spec, r.value));
    return r;
}

} // namespace

void QuadratureSpec::validate(double a, double b) const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions == 0) throw std::invalid_argument("QuadratureSpec: max_subdivisions is 0");
    for (double p : breakpoints) {
        if (!(p > std::min(a, b) && p < std::max(a, b)))
            throw std::invalid_argument("QuadratureSpec: breakpoint outside the open interval");
    }
}

QuadratureSpec QuadratureSpec::with_breakpoints(std::vector<double> points) const {
    QuadratureSpec s = *this;
    s.breakpoints = std::move(points);
    return s;
}

QuadratureSpec QuadratureSpec::scaled(double factor) const {
    QuadratureSpec s = *this;
    s.abs_tol *= factor;
    s.rel_tol *= factor;
    return s;
}

QuadResult integrate_adaptive(const Function& f, double a, double b, const QuadratureSpec& spec) {
    silence_gsl();
    spec.validate(a, b);
    if (a == b) return {};
    if (a > b) {
        QuadResult r = integrate_adaptive(f, b, a, spec);
        return {-r.value, r.error};
    }
    std::vector<double> pts = panel_edges(a, b, spec);
    auto ws = make_workspace(std::max(spec.max_subdivisions, pts.size() + 1));
    Thunk thunk{&f, nullptr};
    gsl_function F = thunk.as_gsl();
    QuadResult r;
    int status = gsl_integration_qagp(&F, pts.data(), pts.size(), spec.abs_tol, spec.rel_tol,
                                      ws->limit, ws.get(), &r.value, &r.error);
    thunk.rethrow();
    return finish("adaptive quadrature", status, a, b, r, spec);
}

QuadResult integrate_principal_value(const Function& f, double a, double b, double pole,
                                     const QuadratureSpec& spec) {
    silence_gsl();
    spec.validate(a, b);
    if (!(pole > a && pole < b))
        throw DomainError("principal value: pole must lie strictly inside (a, b)");
    std::vector<double> edges = panel_edges(a, b, spec);
    edges.erase(std::remove(edges.begin() + 1, edges.end() - 1, pole), edges.end() - 1);

    QuadratureSpec panel_spec = spec;
    panel_spec.breakpoints.clear();
    panel_spec.abs_tol = spec.abs_tol / static_cast<double>(edges.size() - 1);

    QuadResult total;
    auto ws = make_workspace(spec.max_subdivisions);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        QuadResult r;
        if (pole > lo && pole < hi) {
            Thunk thunk{&f, nullptr};
            gsl_function F = thunk.as_gsl();
            int status = gsl_integration_qawc(&F, lo, hi, pole, panel_spec.abs_tol,
                                              panel_spec.rel_tol, ws->limit, ws.get(), &r.value,
                                              &r.error);
            thunk.rethrow();
            r = finish("principal-value quadrature", status, lo, hi, r, panel_spec);
        } else {
            r = integrate_adaptive([&](double x) { return f(x) / (x - pole); }, lo, hi, panel_spec);
        }
        total.value += r.value;
        total.error += r.error;
    }
    return total;
}

QuadResult integrate_oscillatory(const Function& f, double a, double b, double omega,
                                 Oscillation kind, const QuadratureSpec& spec) {
    silence_gsl();
    spec.validate(a, b);
    if (a == b) return {};
    if (a > b) {
        QuadResult r = integrate_oscillatory(f, b, a, omega, kind, spec);
        return {-r.value, r.error};
    }
    if (omega == 0.0) {
        if (kind == Oscillation::Sine) return {};
        return integrate_adaptive(f, a, b, spec);
    }
    const std::vector<double> edges = panel_edges(a, b, spec);
    const auto panels = static_cast<double>(edges.size() - 1);
    const enum gsl_integration_qawo_enum weight =
        kind == Oscillation::Cosine ? GSL_INTEG_COSINE : GSL_INTEG_SINE;

    auto ws = make_workspace(spec.max_subdivisions);

    QuadResult total;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        Thunk thunk{&f, nullptr};
        gsl_function F = thunk.as_gsl();
        QuadResult r;
        int status = GSL_ETABLE;
        // Moment tables are costly to build, so start shallow and deepen on demand.
        for (std::size_t levels : {12u, 48u}) {
            std::unique_ptr<gsl_integration_qawo_table, QawoTableDeleter> table(
                gsl_integration_qawo_table_alloc(omega, hi - lo, weight, levels));
            if (!table) throw std::bad_alloc();
            status = gsl_integration_qawo(&F, lo, spec.abs_tol / panels, spec.rel_tol, ws->limit,
                                          ws.get(), table.get(), &r.value, &r.error);
            if (status != GSL_ETABLE || thunk.error) break;
        }
        thunk.rethrow();
        QuadratureSpec panel_spec = spec;
        panel_spec.abs_tol = spec.abs_tol / panels;
        r = finish("oscillatory quadrature", status, lo, hi, r, panel_spec);
        total.value += r.value;
        total.error += r.error;
    }
    return total;
}

double find_root_bracketed(const Function& g, double lo, double hi, double abs_tol,
                           double rel_tol) {
    silence_gsl();
    if (lo > hi) std::swap(lo, hi);
    const double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (!std::isfinite(glo) || !std::isfinite(ghi) || std::signbit(glo) == std::signbit(ghi)) {
        std::ostringstream os;
        os << "root finder: no sign change on [" << lo << ", " << hi << "] (g = " << glo << ", "
           << ghi << ")";
        throw IterationError(os.str(), lo);
    }

    struct SolverDeleter {
        void operator()(gsl_root_fsolver* s) const { gsl_root_fsolver_free(s); }
    };
    std::unique_ptr<gsl_root_fsolver, SolverDeleter> solver(
        gsl_root_fsolver_alloc(gsl_root_fsolver_brent));
    Thunk thunk{&g, nullptr};
    gsl_function F = thunk.as_gsl();
    gsl_root_fsolver_set(solver.get(), &F, lo, hi);

    double root = 0.5 * (lo + hi);
    for (int iter = 0; iter < 1000; ++iter) {
        int status = gsl_root_fsolver_iterate(solver.get());
        thunk.rethrow();
        if (status != GSL_SUCCESS) break;
        root = gsl_root_fsolver_root(solver.get());
        const double a = gsl_root_fsolver_x_lower(solver.get());
        const double b = gsl_root_fsolver_x_upper(solver.get());
        if (gsl_root_test_interval(a, b, abs_tol, rel_tol) == GSL_SUCCESS) return root;
    }
    throw IterationError("root finder: Brent iteration did not converge", root);
}

FixedPointResult fixed_point(const Function& F, double x0, const FixedPointOptions& opts) {
    if (!(opts.damping > 0.0 && opts.damping <= 1.0))
        throw std::invalid_argument("fixed_point: damping must lie in (0, 1]");
    auto converged = [&](double res, double x) {
        return res <= (opts.relative ? opts.tol * std::abs(x) : opts.tol);
    };

    double x = x0;
    double previous = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int it = 0; it < opts.max_iter; ++it) {
        const double fx = F(x);
        if (!std::isfinite(fx)) break;
        const double res = std::abs(x - fx);
        if (converged(res, x)) return {x, res, it, false};
        // A residual that stops shrinking means a cycle or a marginal map.
        stalled = res >= previous ? stalled + 1 : 0;
        if (stalled >= 20) break;
        previous = res;
        x = (1.0 - opts.damping) * x + opts.damping * fx;
    }

    auto G = [&](double y) { return y - F(y); };
    const double abs_tol = opts.relative ? 0.0 : 1e-2 * opts.tol;
    const double rel_tol = opts.relative ? 1e-2 * opts.tol : 0.0;
    double root = 0.0;
    try {
        root = find_root_bracketed(G, opts.lo, opts.hi, abs_tol, rel_tol);
    } catch (const IterationError& e) {
        throw IterationError(std::string("fixed_point: iteration failed and ") + e.what(), x);
    }
    return {root, std::abs(G(root)), opts.max_iter, true};
}

double richardson(double coarse, double fine, int order) {
    const double factor = std::ldexp(1.0, order);
    return (factor * fine - coarse) / (factor - 1.0);
}

double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys,
                           std::span<const Function> basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    if (xs.size() != ys.size() || static_cast<Eigen::Index>(xs.size()) != n || n == 0)
        throw std::invalid_argument("extrapolate_to_zero: need one sample per basis function");
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y(i) = ys[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < n; ++k)
            A(i, k) = basis[static_cast<std::size_t>(k)](xs[static_cast<std::size_t>(i)]);
    }
    // Column scaling keeps the tiny-x columns from being swamped.
    Eigen::VectorXd scale = A.cwiseAbs().colwise().maxCoeff().transpose();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (scale(k) == 0.0) throw std::invalid_argument("extrapolate_to_zero: degenerate basis");
        A.col(k) /= scale(k);
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    return c(0) / scale(0);
}

VolterraState volterra_step(std::span<const double> history, std::span<const double> kernel,
                            double h, double derivative) {
    const std::size_t n = history.size() - 1;
    if (history.empty() || kernel.size() < n + 2)
        throw std::invalid_argument("volterra_step: kernel must cover t_0..t_{n+1}");
    // A_{n+1} = K_{n+1} P_0 / 2 + sum_{j=1}^{n} K_{n+1-j} P_j
    double acc = 0.5 * kernel[n + 1] * history[0];
    for (std::size_t j = 1; j <= n; ++j) acc += kernel[n + 1 - j] * history[j];
    const double next =
        (history[n] + 0.5 * h * derivative - 0.5 * h * h * acc) / (1.0 + 0.25 * h * h * kernel[0]);
    return {next, -h * acc - 0.5 * h * kernel[0] * next};
}

namespace {

// Divide-and-conquer evaluation of the trapezoidal scheme: the history sum
// A_n = sum_{j<n} K_{n-j} w_j P_j is split so that a finished left half adds
// its contribution to the right half with one FFT convolution.
class VolterraSolver {
public:
    VolterraSolver(std::span<const double> kernel, double h,
                   const std::function<bool(std::size_t, double)>* stop)
        : kernel_(kernel), h_(h), stop_(stop), p_(kernel.size(), 0.0), q_(kernel.size(), 0.0),
          acc_(kernel.size(), 0.0) {}

    std::vector<double> run() {
        if (!kernel_.empty()) solve(0, kernel_.size());
        p_.resize(done_);
        return std::move(p_);
    }

private:
    static constexpr std::size_t kDirect = 64;

    bool solve(std::size_t lo, std::size_t hi) {
        if (hi - lo <= kDirect) return direct(lo, hi);
        const std::size_t mid = lo + (hi - lo) / 2;
        if (!solve(lo, mid)) return false;
        // acc[n] += sum_{j in [lo, mid)} K_{n-j} q_j for n in [mid, hi)
        const std::size_t left = mid - lo;
        const std::size_t span = hi - lo - 1;  // K_1 .. K_{hi-lo-1}
        std::vector<double> c =
            fft::convolve(std::span<const double>(q_).subspan(lo, left), kernel_.subspan(1, span));
        for (std::size_t n = mid; n < hi; ++n) acc_[n] += c[n - lo - 1];
        return solve(mid, hi);
    }

    bool direct(std::size_t lo, std::size_t hi) {
        const double denom = 1.0 + 0.25 * h_ * h_ * kernel_[0];
        for (std::size_t n = lo; n < hi; ++n) {
            if (n == 0) {
                p_[0] = 1.0;
                derivative_ = 0.0;
            } else {
                double a = acc_[n];
                for (std::size_t j = lo; j < n; ++j) a += kernel_[n - j] * q_[j];
                p_[n] = (p_[n - 1] + 0.5 * h_ * derivative_ - 0.5 * h_ * h_ * a) / denom;
                derivative_ = -h_ * a - 0.5 * h_ * kernel_[0] * p_[n];
            }
            q_[n] = n == 0 ? 0.5 * p_[n] : p_[n];
            done_ = n + 1;
            if (stop_ && (*stop_)(n, p_[n])) return false;
        }
        return true;
    }

    std::span<const double> kernel_;
    double h_;
    const std::function<bool(std::size_t, double)>* stop_;
    std::vector<double> p_, q_, acc_;
    double derivative_{0.0};
    std::size_t done_{0};
};

} // namespace

std::vector<double> solve_volterra(std::span<const double> kernel, double h) {
    return VolterraSolver(kernel, h, nullptr).run();
}

std::vector<double> solve_volterra(std::span<const double> kernel, double h,
                                   const std::function<bool(std::size_t, double)>& stop) {
    return VolterraSolver(kernel, h, &stop).run();
}

} // namespace spinbath::num
