// renorm.hpp: Self-consistent tunneling renormalization and ground-state energy

#pragma once

#include "spinbath/model.hpp"

namespace spinbath {

struct RenormalizedSystem {
    ModelParams params;
    double eta{1.0};                  // renormalization factor, 0 when localized
    double effective_tunneling{0.0};  // eta * delta
    double residual{0.0};             // |eta - F(eta)| at the returned eta
    int iterations{0};
    bool localized{false};            // only eta = 0 solves the self-consistency
};

inline constexpr double kDefaultEtaTol = 1e-10;

// eta = exp(-alpha ln[(1 + eta delta)/(eta delta)] + alpha/(1 + eta delta)).
// tol bounds |eta - F(eta)| relative to eta, so tiny eta keep full precision.
RenormalizedSystem solve_eta_spin(double delta, double alpha, double tol = kDefaultEtaTol);

// The exponent of the map above as a function of eps = eta delta.
double eta_exponent_spin(double eps, double alpha);

// Boson bath: the exponent carries coth(omega / 2T). T = 0 returns
// solve_eta_spin unchanged. An exponent above 50 is reported as eta = 0.
RenormalizedSystem solve_eta_boson(double delta, double alpha, double temperature,
                                   double tol = kDefaultEtaTol);

double eta_exponent_boson(double eps, double alpha, double temperature);

// Dispatch on params.bath.
RenormalizedSystem solve_eta(const ModelParams& params, double tol = kDefaultEtaTol);

// [w (w + eta delta) + g^2] / sqrt((w + eta delta)^2 + g^2)
double renormalized_frequency(double omega, double g2, double eta_delta);

struct GroundEnergy {
    double value{0.0};
};

// -eta delta / 2 - (alpha / 2) / (1 + eta delta), spin bath.
GroundEnergy ground_state_energy(double delta, double alpha, double tol = kDefaultEtaTol);

} // namespace spinbath
