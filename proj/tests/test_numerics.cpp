#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spinbath/errors.hpp"
#include "spinbath/fft.hpp"
#include "spinbath/numerics.hpp"

using namespace spinbath;
using doctest::Approx;

TEST_SUITE("numerics") {

TEST_CASE("adaptive quadrature of polynomial and log-endpoint integrands") {
    CHECK(num::integrate_adaptive([](double x) { return x; }, 0.0, 1.0).value == Approx(0.5).epsilon(1e-14));
    const auto r = num::integrate_adaptive([](double x) { return std::log1p(-x) * x; }, 0.0, 1.0);
    CHECK(std::abs(r.value + 0.75) < 1e-9);
    CHECK(std::abs(r.value + 0.75) <= std::max(r.error, 1e-14) * 10.0);
}

TEST_CASE("oscillatory rule on cos(100 x)") {
    const auto r = num::integrate_oscillatory([](double) { return 1.0; }, 0.0, 1.0, 100.0,
                                              num::Oscillation::Cosine);
    CHECK(std::abs(r.value - std::sin(100.0) / 100.0) < 1e-12);
    const auto s = num::integrate_oscillatory([](double x) { return x; }, 0.0, 1.0, 50.0,
                                              num::Oscillation::Sine);
    // int_0^1 x sin(50x) dx = sin(50)/2500 - cos(50)/50
    CHECK(std::abs(s.value - (std::sin(50.0) / 2500.0 - std::cos(50.0) / 50.0)) < 1e-12);
}

TEST_CASE("principal value against the logarithmic antiderivative") {
    // PV int_0^1 x / (x - 0.3) dx = 1 + 0.3 ln(0.7 / 0.3)
    const auto r = num::integrate_principal_value([](double x) { return x; }, 0.0, 1.0, 0.3);
    CHECK(r.value == Approx(1.25418935811616109).epsilon(1e-12));
}

TEST_CASE("breakpoints and determinism") {
    num::QuadratureSpec spec;
    spec.breakpoints = {0.5, 0.25};
    auto f = [](double x) { return std::abs(x - 0.5) + std::abs(x - 0.25); };
    const double a = num::integrate_adaptive(f, 0.0, 1.0, spec).value;
    const double b = num::integrate_adaptive(f, 0.0, 1.0, spec).value;
    CHECK(a == b);
    CHECK(a == Approx(0.25 + 0.3125).epsilon(1e-13));
}

TEST_CASE("non-integrable endpoint raises IntegrationError") {
    CHECK_THROWS_AS(num::integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0), IntegrationError);
}

TEST_CASE("spec validation") {
    num::QuadratureSpec bad;
    bad.abs_tol = -1.0;
    CHECK_THROWS(bad.validate(0.0, 1.0));
    CHECK_THROWS(num::QuadratureSpec{}.with_breakpoints({1.5}).validate(0.0, 1.0));
    CHECK_NOTHROW(num::QuadratureSpec{}.with_breakpoints({0.5}).validate(0.0, 1.0));
    const auto scaled = num::QuadratureSpec{}.scaled(10.0);
    CHECK(scaled.abs_tol == Approx(1e-9).scale(0.0).epsilon(1e-14));
    CHECK(scaled.rel_tol == Approx(1e-7).scale(0.0).epsilon(1e-14));
}

TEST_CASE("bracketed roots") {
    CHECK(num::find_root_bracketed([](double x) { return x - 0.3; }, 0.0, 1.0, 1e-14) == Approx(0.3).epsilon(1e-13));
    CHECK(num::find_root_bracketed([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-14) ==
          Approx(std::numbers::pi / 2).epsilon(1e-13));
    CHECK_THROWS_AS(num::find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                    IterationError);
}

TEST_CASE("fixed point: Dottie number and a constant map") {
    const auto d = num::fixed_point([](double x) { return std::cos(x); }, 1.0);
    CHECK(d.x == Approx(0.739085133215160642).epsilon(1e-9));
    CHECK(d.residual <= 1e-10);

    num::FixedPointOptions one;
    one.damping = 1.0;
    const auto c = num::fixed_point([](double) { return 0.5; }, 0.9, one);
    CHECK(c.x == 0.5);
    CHECK(c.iterations == 1);
}

TEST_CASE("fixed point falls back to bracketing on a 2-cycle") {
    // Undamped F(x) = 1 - x cycles between x0 and 1 - x0; root at 1/2.
    num::FixedPointOptions opts;
    opts.damping = 1.0;
    opts.max_iter = 200;
    const auto r = num::fixed_point([](double x) { return 1.0 - x; }, 0.2, opts);
    CHECK(r.x == Approx(0.5).epsilon(1e-9));
    CHECK(r.bracketed);
}

TEST_CASE("Richardson and extrapolation to zero") {
    auto f = [](double h) { return 1.0 + 3.0 * h * h; };
    CHECK(num::richardson(f(0.1), f(0.05), 2) == Approx(1.0).epsilon(1e-14));

    const std::vector<double> xs{1e-2, 1e-3, 1e-4};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.0 + 3.0 * x + 5.0 * x * std::log(x));
    const std::vector<num::Function> basis{[](double) { return 1.0; }, [](double x) { return x; },
                                           [](double x) { return x * std::log(x); }};
    CHECK(num::extrapolate_to_zero(xs, ys, basis) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Volterra solver: constant kernel and stepper agreement") {
    const double c = 0.25, h = 0.01;
    const std::size_t n = 2001;
    const std::vector<double> kernel(n, c);
    const auto p = num::solve_volterra(kernel, h);
    REQUIRE(p.size() == n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(p[i] - std::cos(0.5 * h * static_cast<double>(i))));
    CHECK(worst < 1e-4);  // O(h^2) before extrapolation

    std::vector<double> history{1.0};
    double deriv = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto s = num::volterra_step(history, kernel, h, deriv);
        history.push_back(s.value);
        deriv = s.derivative;
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(history[i] - p[i]));
    CHECK(diff < 1e-12);
}

TEST_CASE("Volterra solver: exponential kernel, second order and Richardson") {
    // K = d^2 exp(-t): P(s) = (s + 1) / (s^2 + s + d^2).
    const double d = 0.3;
    const double disc = std::sqrt(1.0 - 4.0 * d * d);
    const double r1 = (-1.0 + disc) / 2.0, r2 = (-1.0 - disc) / 2.0;
    auto exact = [&](double t) {
        return (r1 + 1.0) / (r1 - r2) * std::exp(r1 * t) + (r2 + 1.0) / (r2 - r1) * std::exp(r2 * t);
    };
    auto solve = [&](double h, std::size_t n) {
        std::vector<double> k(n);
        for (std::size_t i = 0; i < n; ++i) k[i] = d * d * std::exp(-h * static_cast<double>(i));
        return num::solve_volterra(k, h);
    };
    const double h = 0.04, t_end = 20.0;
    const auto n = static_cast<std::size_t>(t_end / h) + 1;
    const auto coarse = solve(h, n);
    const auto fine = solve(h / 2, 2 * n - 1);
    double e_coarse = 0.0, e_fine = 0.0, e_rich = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = h * static_cast<double>(i);
        e_coarse = std::max(e_coarse, std::abs(coarse[i] - exact(t)));
        e_fine = std::max(e_fine, std::abs(fine[2 * i] - exact(t)));
        e_rich = std::max(e_rich, std::abs(num::richardson(coarse[i], fine[2 * i], 2) - exact(t)));
    }
    CHECK(e_coarse / e_fine == Approx(4.0).epsilon(0.05));
    CHECK(e_rich < 1e-7);
}

TEST_CASE("early stop returns the truncated series") {
    const std::vector<double> kernel(1000, 1.0);
    const auto p = num::solve_volterra(kernel, 0.01, [](std::size_t, double v) { return v < 0.0; });
    REQUIRE(!p.empty());
    CHECK(p.back() < 0.0);
    CHECK(p.size() < kernel.size());
    CHECK(p[p.size() - 2] >= 0.0);
}

TEST_CASE("FFT convolution matches direct sums") {
    for (std::size_t n : {5u, 300u, 2000u}) {
        std::vector<double> a(n), b(n + 7);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::sin(0.3 * static_cast<double>(i));
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::cos(0.17 * static_cast<double>(i)) / (1.0 + i);
        const auto c = fft::convolve(a, b);
        REQUIRE(c.size() == a.size() + b.size() - 1);
        double worst = 0.0;
        for (std::size_t k = 0; k < c.size(); k += 37) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (k >= i && k - i < b.size()) s += a[i] * b[k - i];
            worst = std::max(worst, std::abs(s - c[k]));
        }
        CHECK(worst < 1e-10);
    }
}

}
