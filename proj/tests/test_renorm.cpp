#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinbath/dynamics.hpp"
#include "spinbath/numerics.hpp"
#include "spinbath/renorm.hpp"

using namespace spinbath;
using doctest::Approx;

TEST_SUITE("renorm") {

TEST_CASE("no coupling leaves the tunneling bare") {
    for (double d : {1e-4, 0.1, 0.7}) CHECK(solve_eta_spin(d, 0.0).eta == 1.0);
    CHECK(solve_eta_boson(0.1, 0.0, 1.0).eta == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("scaling-limit closed form at small delta") {
    const double d = 1e-3, a = 0.3;
    const double closed = std::pow(std::numbers::e * d, a / (1.0 - a));
    CHECK(std::abs(solve_eta_spin(d, a).eta / closed - 1.0) < 1e-2);
}

TEST_CASE("self-consistency residual") {
    const auto s = solve_eta_spin(0.1, 0.1);
    CHECK(s.residual <= 1e-10);
    CHECK(std::exp(-eta_exponent_spin(s.effective_tunneling, 0.1)) == Approx(s.eta).epsilon(1e-10));
    CHECK(s.effective_tunneling == Approx(0.1 * s.eta).epsilon(1e-15));
    CHECK_FALSE(s.localized);
}

TEST_CASE("at the critical coupling the pole condition 1/2 (1 + eta delta) = alpha_c holds") {
    const double ac = critical_coupling(0.1);
    const auto s = solve_eta_spin(0.1, ac);
    CHECK(0.5 * (1.0 + s.effective_tunneling) == Approx(ac).epsilon(1e-9));
    CHECK(ac == Approx(0.5121).epsilon(2e-4));
}

TEST_CASE("strong coupling localizes") {
    const auto s = solve_eta_spin(0.1, 1.5);
    CHECK(s.localized);
    CHECK(s.eta == 0.0);
}

TEST_CASE("boson bath renormalization") {
    const auto spin = solve_eta_spin(0.1, 0.1);
    const auto zero = solve_eta_boson(0.1, 0.1, 0.0);
    CHECK(zero.eta == spin.eta);
    CHECK(zero.effective_tunneling == spin.effective_tunneling);
    const auto warm = solve_eta_boson(0.1, 0.1, 0.05);
    CHECK(warm.eta < spin.eta);
    CHECK(warm.residual <= 1e-10 * warm.eta);
    // exponent = spin exponent + alpha int thermal_weight / (x + eps)^2
    const double eps = warm.effective_tunneling;
    const double extra = num::integrate_adaptive(
        [&](double x) { return 0.1 * thermal_weight(x, 0.05) / ((x + eps) * (x + eps)); }, 0.0, 1.0,
        {1e-14, 1e-12, 2000, {eps}}).value;
    CHECK(eta_exponent_boson(eps, 0.1, 0.05) == Approx(eta_exponent_spin(eps, 0.1) + extra).epsilon(1e-10));
    CHECK(solve_eta_boson(0.1, 0.1, 0.1).eta < warm.eta);
}

TEST_CASE("dispatch on the bath kind") {
    ModelParams p{BathKind::Boson, 0.1, 0.1, 0.05};
    CHECK(solve_eta(p).eta == solve_eta_boson(0.1, 0.1, 0.05).eta);
    p.bath = BathKind::Spin;
    CHECK(solve_eta(p).eta == solve_eta_spin(0.1, 0.1).eta);
}

TEST_CASE("renormalized mode frequency") {
    CHECK(renormalized_frequency(0.5, 0.0, 0.1) == Approx(0.5).epsilon(1e-15));
    CHECK(renormalized_frequency(0.5, 0.01, 0.1) == Approx(0.31 / std::sqrt(0.37)).epsilon(1e-14));
    CHECK(renormalized_frequency(1e-12, 0.01, 0.1) == Approx(0.01 / std::sqrt(0.02)).epsilon(1e-9));
}

TEST_CASE("ground-state energy") {
    CHECK(ground_state_energy(0.1, 0.0).value == Approx(-0.05).epsilon(1e-15));
    CHECK(ground_state_energy(1e-9, 0.3).value == Approx(-0.15).epsilon(1e-6));
    const auto s = solve_eta_spin(0.1, 0.1);
    const double eps = s.effective_tunneling;
    // -eps/2 - (alpha/2) int_0^1 (x^2 + 2 x eps) / (x + eps)^2 dx
    const double integral = num::integrate_adaptive(
        [&](double x) { return (x * x + 2.0 * x * eps) / ((x + eps) * (x + eps)); }, 0.0, 1.0).value;
    CHECK(ground_state_energy(0.1, 0.1).value == Approx(-0.5 * eps - 0.05 * integral).epsilon(1e-12));
}

}

TEST_SUITE("reference_gaps") {

TEST_CASE("eta delta near 0.0242 at delta 0.1, alpha 0.5") {
    // Quoted for alpha = 0.5; the consistent statement at alpha = alpha_c is tested above.
    CHECK(std::abs(solve_eta_spin(0.1, 0.5).effective_tunneling - 0.0242) < 1e-4);
}

}
