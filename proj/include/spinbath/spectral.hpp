// spectral.hpp: Second-order self-energy: level shift R(omega) and decay rate gamma(omega)

#pragma once

#include "spinbath/model.hpp"
#include "spinbath/numerics.hpp"
#include "spinbath/renorm.hpp"

namespace spinbath {

// Spin bath, 0 <= omega < 1. Throws DomainError at or beyond the cutoff.
double r_spin(double omega, double alpha, double eta_delta);

// Spin bath, 2 alpha pi omega eps^2 / (omega + eps)^2 on [0, 1], zero outside.
double gamma_spin(double omega, double alpha, double eta_delta);

// Boson bath: r_spin minus the thermal principal-value part
//   (1/pi) PV int_0^1 gamma_spin(x) 2n(x) / (x - omega) dx.
// Diverges logarithmically as omega -> 0 when T > 0 (DomainError at omega = 0).
double r_boson(double omega, double alpha, double eta_delta, double temperature,
               const num::QuadratureSpec& spec = {1e-10, 1e-10, 2000, {}});

// gamma_spin * coth(omega / 2T); finite limit 4 alpha pi T at omega = 0.
double gamma_boson(double omega, double alpha, double eta_delta, double temperature);

class SelfEnergy {
public:
    static SelfEnergy spin(double alpha, double eta_delta);
    static SelfEnergy boson(double alpha, double eta_delta, double temperature);
    // Picks the bath from sys.params; throws when sys is localized.
    static SelfEnergy of(const RenormalizedSystem& sys);

    BathKind bath() const { return bath_; }
    double alpha() const { return alpha_; }
    double eta_delta() const { return eta_delta_; }
    double temperature() const { return temperature_; }
    double gamma_scale() const { return gamma_scale_; }

    double r(double omega) const;
    double gamma(double omega) const;

    // omega - eta_delta - R(omega)
    double pole_function(double omega) const { return omega - eta_delta_ - r(omega); }

    // S(omega) = gamma / ([omega - eta_delta - R]^2 + gamma^2) on [0, 1);
    // zero elsewhere, which is also its limit at the cutoff.
    double spectral_weight(double omega) const;

    // Copy with gamma multiplied by factor while R is kept: breaks the
    // dispersion relation on purpose, for sensitivity runs.
    SelfEnergy scaled_gamma(double factor) const;

private:
    SelfEnergy(BathKind bath, double alpha, double eta_delta, double temperature)
        : bath_(bath), alpha_(alpha), eta_delta_(eta_delta), temperature_(temperature) {}

    BathKind bath_;
    double alpha_;
    double eta_delta_;
    double temperature_;
    double gamma_scale_{1.0};
};

// Isolated pole of the resolvent below the band (omega < 0), present for the
// boson bath at T > 0. weight is the residue 1 / (1 - R'(omega)).
struct BoundState {
    bool exists{false};
    double omega{0.0};
    double weight{0.0};
};
BoundState bound_state_below_band(const SelfEnergy& se);

} // namespace spinbath
