// correlation.hpp: Equilibrium correlation spectrum, susceptibility and the
// Shiba relation / sum-rule report

#pragma once

#include <iosfwd>
#include <vector>

#include "spinbath/numerics.hpp"
#include "spinbath/renorm.hpp"
#include "spinbath/spectral.hpp"

namespace spinbath {

// C(omega) = S(omega) / pi on [0, 1); DomainError outside.
double spectral_weight_c(double omega, const RenormalizedSystem& sys);

// C(t) = int_0^1 C(omega) cos(omega t) d omega.
double correlation_function(double t, const RenormalizedSystem& sys,
                            const num::QuadratureSpec& spec = num::QuadratureSpec::series());

// chi''(omega), odd in omega, |omega| < 1.
double susceptibility_im(double omega, const RenormalizedSystem& sys);

// chi0 = (2/pi) int_0^1 chi''(omega) / omega d omega.
double static_susceptibility(const RenormalizedSystem& sys, const num::QuadratureSpec& spec = {});
double static_susceptibility(const SelfEnergy& se, const num::QuadratureSpec& spec = {});

struct ShibaReport {
    double delta{0.0};
    double alpha{0.0};
    double chi0_half{0.0};
    double c_over_j_limit{0.0};
    double ratio{0.0};     // c_over_j_limit / chi0_half^2
    double sum_rule{0.0};  // int_0^1 C(omega) d omega = C(t = 0)
    bool in_coherent_regime{true};
};

struct ShibaOptions {
    num::QuadratureSpec spec{};
    double gamma_scale{1.0};  // != 1 only for sensitivity runs
};

// Low-frequency limit of C(omega) / J(omega), extrapolated to 0 from a
// three-point frequency ladder placed below the low-frequency gap.
double shiba_limit(const SelfEnergy& se);

ShibaReport shiba_check(double delta, double alpha, const ShibaOptions& opts = {});

struct TableRow {
    double delta;
    double alpha;
};

// The thirteen (delta, alpha) pairs of the reference susceptibility table.
const std::vector<TableRow>& reference_table_rows();

std::vector<ShibaReport> shiba_table(const std::vector<TableRow>& rows,
                                     const ShibaOptions& opts = {});

} // namespace spinbath
