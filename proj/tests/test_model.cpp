#include <doctest.h>

#include <cmath>

#include "spinbath/errors.hpp"
#include "spinbath/model.hpp"

using namespace spinbath;
using doctest::Approx;

TEST_SUITE("model") {

TEST_CASE("Ohmic spectral density with a sharp cutoff") {
    CHECK(spectral_density(0.5, 0.1) == Approx(0.1));
    CHECK(spectral_density(1.5, 0.1) == 0.0);
    CHECK(spectral_density(0.0, 0.3) == 0.0);
}

TEST_CASE("thermal weight") {
    CHECK(thermal_weight(0.3, 0.0) == 0.0);
    CHECK(thermal_weight(0.0, 0.2) == Approx(0.4));
    const double w = 0.3, t = 0.2;
    CHECK(thermal_weight(w, t) == Approx(2.0 * w / std::expm1(w / t)).epsilon(1e-14));
    // continuous at omega -> 0
    CHECK(thermal_weight(1e-9, t) == Approx(0.4).epsilon(1e-8));
}

TEST_CASE("continuum limit of mode sums") {
    CHECK(continuum_sum([](double, double g2) { return g2; }, 0.5) == Approx(0.5).epsilon(1e-13));
    CHECK(continuum_sum([](double, double) { return 0.0; }, 0.3) == 0.0);
    // alpha int_0^1 x / (x + 0.1)^2 dx = alpha (ln 11 - 10/11)
    const double e = continuum_sum([](double w, double g2) { return 0.5 * g2 / ((w + 0.1) * (w + 0.1)); }, 0.1);
    CHECK(e == Approx(0.14888043637074615).epsilon(1e-12));
}

TEST_CASE("non-integrable summand is diagnosed") {
    CHECK_THROWS_AS(continuum_sum([](double w, double g2) { return g2 / (w * w); }, 0.1), IntegrationError);
}

TEST_CASE("discrete bath converges to the continuum") {
    auto f = [](double w, double g2) { return g2 * std::cos(3.0 * w) / (w + 0.1); };
    const double cont = continuum_sum(f, 0.2);
    const double disc = discrete_sum(f, discrete_bath(1000, 0.2));
    CHECK(std::abs(disc / cont - 1.0) < 1e-3);
    const auto bath = discrete_bath(4, 0.5);
    REQUIRE(bath.size() == 4);
    CHECK(bath[0].omega == Approx(0.125));
    CHECK(bath[3].g2 == Approx(2.0 * 0.5 * 0.875 / 4.0));
}

TEST_CASE("parameter validation and bath names") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.delta = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.alpha = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.temperature = std::nan("");
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK(parse_bath_kind("boson") == BathKind::Boson);
    CHECK(to_string(parse_bath_kind("spin")) == "spin");
    CHECK_THROWS_AS(parse_bath_kind("phonon"), std::invalid_argument);
}

}
