#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinbath/errors.hpp"
#include "spinbath/numerics.hpp"
#include "spinbath/spectral.hpp"

using namespace spinbath;
using doctest::Approx;
using std::numbers::pi;

namespace {

// PV int_0^1 g(x) / (x - w) dx by subtracting g(w); no Cauchy-weight rule involved.
double pv_subtracted(const num::Function& g, double w) {
    const double gw = g(w);
    num::QuadratureSpec spec{1e-13, 1e-12, 4000, {w}};
    const double rest = num::integrate_adaptive(
        [&](double x) { return x == w ? 0.0 : (g(x) - gw) / (x - w); }, 0.0, 1.0, spec).value;
    return rest + gw * std::log((1.0 - w) / w);
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("level shift of the spin bath") {
    CHECK(r_spin(0.0, 0.1, 0.1) == Approx(-0.02 / 1.1).epsilon(1e-14));
    CHECK(r_spin(0.1, 0.1, 0.1) == Approx(-0.0080875556135983346).epsilon(1e-12));
    CHECK(r_spin(0.5, 0.0, 0.1) == 0.0);
    CHECK(r_spin(1e-300, 0.1, 0.1) == Approx(r_spin(0.0, 0.1, 0.1)).epsilon(1e-12));
    CHECK_THROWS_AS(r_spin(1.0, 0.1, 0.1), DomainError);
}

TEST_CASE("decay rate of the spin bath") {
    CHECK(gamma_spin(0.1, 0.1, 0.1) == Approx(0.5 * 0.1 * pi * 0.1).epsilon(1e-14));
    CHECK(gamma_spin(0.0, 0.1, 0.1) == 0.0);
    CHECK(gamma_spin(0.5, 0.1, 0.1) == Approx(2.0 * 0.1 * pi * 0.5 * 0.01 / 0.36).epsilon(1e-14));
    CHECK(gamma_spin(1.2, 0.1, 0.1) == 0.0);
}

TEST_CASE("Kramers-Kronig: R is the Hilbert transform of gamma") {
    const double a = 0.2, eps = 0.07;
    auto g = [&](double x) { return gamma_spin(x, a, eps); };
    for (double w : {0.003, 0.05, 0.07, 0.2, 0.45, 0.8, 0.97}) {
        const double kk = -pv_subtracted(g, w) / pi;
        CHECK(kk == Approx(r_spin(w, a, eps)).epsilon(1e-9));
    }
}

TEST_CASE("boson self-energy") {
    CHECK(r_boson(0.3, 0.1, 0.0565, 0.0) == r_spin(0.3, 0.1, 0.0565));
    CHECK(gamma_boson(0.3, 0.1, 0.0565, 0.0) == gamma_spin(0.3, 0.1, 0.0565));
    CHECK(r_boson(0.3, 0.0, 0.0565, 0.1) == 0.0);
    CHECK(gamma_boson(0.3, 0.0, 0.0565, 0.1) == 0.0);

    const double a = 0.1, eps = 0.0565, t = 0.1, w = 0.3;
    auto thermal = [&](double x) { return gamma_spin(x, a, eps) * thermal_weight(x, t) / x; };
    const double oracle = r_spin(w, a, eps) - pv_subtracted(thermal, w) / pi;
    CHECK(r_boson(w, a, eps, t) == Approx(oracle).epsilon(1e-9));
    CHECK_THROWS_AS(r_boson(0.0, a, eps, t), DomainError);

    CHECK(gamma_boson(1e-9, 0.1, 0.1, 0.05) == Approx(4.0 * 0.1 * pi * 0.05).epsilon(1e-6));
    CHECK(gamma_boson(0.2, 0.1, 0.1, 0.05) ==
          Approx(gamma_spin(0.2, 0.1, 0.1) / std::tanh(0.2 / 0.1)).epsilon(1e-14));
}

TEST_CASE("self-energy object") {
    const auto se = SelfEnergy::spin(0.1, 0.085);
    CHECK(se.bath() == BathKind::Spin);
    CHECK(se.pole_function(0.2) == Approx(0.2 - 0.085 - r_spin(0.2, 0.1, 0.085)));
    CHECK(se.spectral_weight(-0.1) == 0.0);
    CHECK(se.spectral_weight(1.0) == 0.0);
    CHECK(se.spectral_weight(0.085) > 0.0);
    const auto flipped = se.scaled_gamma(-1.0);
    CHECK(flipped.gamma(0.3) == -se.gamma(0.3));
    CHECK(flipped.r(0.3) == se.r(0.3));
    CHECK(flipped.gamma_scale() == -1.0);

    RenormalizedSystem loc;
    loc.params = {BathKind::Spin, 0.1, 1.5, 0.0};
    loc.eta = 0.0;
    loc.localized = true;
    CHECK_THROWS_AS(SelfEnergy::of(loc), DomainError);
}

TEST_CASE("boson weight below the band completes the sum rule") {
    const double a = 0.1, t = 0.1;
    const auto sys = solve_eta_boson(0.1, a, t);
    const auto se = SelfEnergy::of(sys);
    const auto bound = bound_state_below_band(se);
    REQUIRE(bound.exists);
    CHECK(bound.omega < 0.0);
    // below the band R_B(w) = -(1/pi) int_0^1 gamma_B(x) / (x - w) dx has no singularity
    const double eps = sys.effective_tunneling;
    const double r_below = -num::integrate_adaptive(
        [&](double x) { return gamma_boson(x, a, eps, t) / (x - bound.omega); }, 0.0, 1.0,
        {1e-13, 1e-11, 2000, {eps}}).value / pi;
    CHECK(bound.omega - eps - r_below == Approx(0.0).scale(1e-3).epsilon(1e-8));
    const double band = num::integrate_adaptive([&](double w) { return se.spectral_weight(w); }, 0.0, 1.0,
                                                {1e-12, 1e-10, 4000, {sys.effective_tunneling}}).value / pi;
    CHECK(band + bound.weight == Approx(1.0).epsilon(1e-6));
    CHECK_FALSE(bound_state_below_band(SelfEnergy::spin(a, 0.085)).exists);
}

}
