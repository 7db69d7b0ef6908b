// model.hpp: Model parameters, Ohmic spectral density and the bath continuum mapping
//
// Units: the bath cutoff is the energy unit (omega_c = 1), hbar = k_B = 1.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "spinbath/numerics.hpp"

namespace spinbath {

enum class BathKind { Spin, Boson };

std::string to_string(BathKind kind);
BathKind parse_bath_kind(const std::string& name);  // "spin" | "boson"

struct ModelParams {
    BathKind bath{BathKind::Spin};
    double delta{0.1};        // bare tunneling Delta / omega_c, > 0
    double alpha{0.0};        // dimensionless coupling, >= 0
    double temperature{0.0};  // T / omega_c, >= 0 (ignored by spin-bath formulas)

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// J(omega) = 2 alpha omega for 0 <= omega < 1, zero otherwise.
double spectral_density(double omega, double alpha);

// omega * 2 n(omega) with n the Bose factor at temperature T; equals 2T at
// omega = 0 and vanishes identically at T = 0.
double thermal_weight(double omega, double temperature);

// Mode summand f(omega_l, g_l^2), linear in g_l^2.
using ModeFunction = std::function<double(double omega, double g2)>;

// Continuum limit of sum_l f(omega_l, g_l^2) for the constant density of
// states rho0 -> infinity: sum_l -> rho0 int d omega, g_l^2 -> 2 alpha omega / rho0.
// Only the term linear in g^2 survives, so the result is int_0^1 f(omega, 2 alpha omega).
// Throws IntegrationError if f is not integrable at omega = 0.
double continuum_sum(const ModeFunction& f, double alpha,
                     const num::QuadratureSpec& spec = {});

struct BathMode {
    double omega;
    double g2;
};

// Midpoint discretisation with N modes: omega_l = (l - 1/2)/N, g_l^2 = 2 alpha omega_l / N.
std::vector<BathMode> discrete_bath(std::size_t modes, double alpha);

double discrete_sum(const ModeFunction& f, const std::vector<BathMode>& bath);

} // namespace spinbath
