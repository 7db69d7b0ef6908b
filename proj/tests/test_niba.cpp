#include <doctest.h>

#include <cmath>

#include "spinbath/errors.hpp"
#include "spinbath/niba.hpp"
#include "spinbath/numerics.hpp"
#include "spinbath/series.hpp"

using namespace spinbath;
using doctest::Approx;

TEST_SUITE("niba") {

TEST_CASE("special functions") {
    CHECK(sine_integral(1.0) == Approx(0.94608307036718301).epsilon(1e-14));
    CHECK(sine_integral(0.0) == 0.0);
    // Cin(t) = gamma + ln t - Ci(t), Ci(10) = -0.045456433004455373
    CHECK(cosine_integral_entire(10.0) == Approx(0.5772156649015329 + std::log(10.0) + 0.045456433004455373).epsilon(1e-13));
    // Cin(t) = t^2/4 - t^4/96 + ...
    CHECK(cosine_integral_entire(1e-3) == Approx(2.5e-7 - 1e-12 / 96.0).scale(0.0).epsilon(1e-12));
    // continuity across the series / closed-form switch
    CHECK(cosine_integral_entire(1.0 - 1e-12) == Approx(cosine_integral_entire(1.0)).epsilon(1e-11));
}

TEST_CASE("bath phases") {
    const NibaKernel spin{BathKind::Spin, 0.1, 0.0};
    const NibaKernel boson{BathKind::Boson, 0.1, 0.0};
    CHECK(spin.q1(0.0) == 0.0);
    CHECK(spin.q2(0.0) == 0.0);
    CHECK(boson.q1(1.0) == Approx(0.2 * 0.94608307036718301).epsilon(1e-12));
    CHECK(spin.q2(10.0) == Approx(0.58505143818000682).epsilon(1e-12));
    for (double t : {0.3, 2.0, 40.0, 300.0}) {
        CHECK(boson.q2(t) == Approx(spin.q2(t)).epsilon(1e-10));
        CHECK(boson.q1(t) == Approx(spin.q1(t)).epsilon(1e-12));
    }
}

TEST_CASE("thermal phases against direct quadrature") {
    const double a = 0.2, temp = 0.05, t = 3.0;
    const NibaKernel spin{BathKind::Spin, a, temp};
    const NibaKernel boson{BathKind::Boson, a, temp};
    const double q1 = num::integrate_adaptive(
        [&](double w) { return w == 0.0 ? 0.0 : std::sin(w * t) * std::tanh(w / (2.0 * temp)) * 2.0 * a / w; },
        0.0, 1.0, {1e-14, 1e-12, 2000, {}}).value;
    CHECK(spin.q1(t) == Approx(q1).epsilon(1e-9));
    const double q2 = num::integrate_adaptive(
        [&](double w) { return w == 0.0 ? 0.0 : (1.0 - std::cos(w * t)) / std::tanh(w / (2.0 * temp)) * 2.0 * a / w; },
        0.0, 1.0, {1e-14, 1e-12, 2000, {}}).value;
    CHECK(boson.q2(t) == Approx(q2).epsilon(1e-9));
    // a tanh-weighted density reproduces the spin-bath Q1
    auto j_eff = [&](double w) { return 2.0 * a * w * std::tanh(w / (2.0 * temp)); };
    for (double s : {0.5, 3.0, 80.0}) CHECK(q1_from_density(s, j_eff) == Approx(spin.q1(s)).epsilon(1e-8));
}

TEST_CASE("kernel") {
    const NibaKernel k{BathKind::Spin, 0.1, 0.0};
    CHECK(k.kernel(0.0, 0.1) == Approx(0.01));
    const NibaKernel none{BathKind::Spin, 0.0, 0.0};
    for (double t : {0.0, 5.0, 100.0}) CHECK(none.kernel(t, 0.1) == Approx(0.01).epsilon(1e-15));
    CHECK(k.kernel(5.0, 0.1) == Approx(0.0059204526983687177).epsilon(1e-12));
    CHECK(niba_kernel(5.0, 0.1, k) == k.kernel(5.0, 0.1));
}

TEST_CASE("population: free limit and zero-temperature equivalence") {
    const auto grid = linear_grid(0.0, 200.0, 401);
    NibaOptions fine;
    fine.step = 0.01;
    const auto free_series = niba_population(grid, 0.1, NibaKernel{BathKind::Spin, 0.0, 0.0}, fine);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(free_series.value[i] - std::cos(0.1 * grid[i])));
    CHECK(worst < 1e-6);

    const auto spin = niba_population(grid, 0.1, NibaKernel{BathKind::Spin, 0.2, 0.0});
    const auto boson = niba_population(grid, 0.1, NibaKernel{BathKind::Boson, 0.2, 0.0});
    worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(spin.value[i] - boson.value[i]));
    CHECK(worst < 1e-8);
    CHECK(spin.method == "niba");
}

TEST_CASE("population rejects bad grids and unreachable tolerances") {
    CHECK_THROWS(niba_population({0.0, 1.0, 3.0}, 0.1, NibaKernel{}));
    CHECK_THROWS(niba_population({0.5, 1.0}, 0.1, NibaKernel{}));
    NibaOptions strict;
    strict.step = 0.5;
    strict.tol = 1e-15;
    CHECK_THROWS_AS(niba_population(linear_grid(0.0, 100.0, 11), 0.5, NibaKernel{BathKind::Spin, 0.1, 0.0}, strict),
                    IterationError);
}

TEST_CASE("phase table is linear in alpha") {
    const auto table = NibaPhaseTable::build(BathKind::Boson, 0.05, 0.1, 200);
    const auto k = table.kernel(0.1, 0.3, 200);
    const NibaKernel direct{BathKind::Boson, 0.3, 0.05};
    for (std::size_t i : {0u, 17u, 199u}) CHECK(k[i] == Approx(direct.kernel(0.1 * i, 0.1)).epsilon(1e-9));
}

TEST_CASE("effective tunneling and lobe probe") {
    CHECK(niba_effective_tunneling(0.05, 0.0) == Approx(0.05));
    CHECK(niba_effective_tunneling(0.05, 0.8) == Approx(niba_effective_tunneling(0.05, 0.5)));
    const NibaBoundaryOptions opts;
    const auto table = NibaPhaseTable::build(BathKind::Spin, 0.0, opts.step, 50001);
    CHECK(niba_lobe(0.05, 0.2, table, opts).lobe);
}

}

TEST_SUITE("reference_gaps") {

TEST_CASE("spin-bath NIBA boundary near 0.75 at T = 0, delta = 0.05") {
    CHECK(std::abs(niba_boundary(BathKind::Spin, 0.0, 0.05) - 0.75) < 0.05);
}

}
