// dynamics.hpp: Population difference, pole approximation, tau_x and the
// coherent-incoherent classification

#pragma once

#include <vector>

#include "spinbath/numerics.hpp"
#include "spinbath/renorm.hpp"
#include "spinbath/series.hpp"
#include "spinbath/spectral.hpp"

namespace spinbath {

// Evaluates (1/pi) int_0^1 S(omega) w(omega t) d omega for one self-energy,
// with the resonance panels computed once.
class SpectralTransform {
public:
    explicit SpectralTransform(SelfEnergy se);

    const SelfEnergy& self_energy() const { return se_; }
    const std::vector<double>& breakpoints() const { return breaks_; }

    // Oscillatory (Filon-type) rule once eta_delta * t exceeds this.
    static constexpr double kOscillatorySwitch = 30.0;

    double cosine(double t, const num::QuadratureSpec& spec = num::QuadratureSpec::series()) const;
    double sine(double t, const num::QuadratureSpec& spec = num::QuadratureSpec::series()) const;

private:
    double transform(double t, num::Oscillation kind, const num::QuadratureSpec& spec) const;

    SelfEnergy se_;
    std::vector<double> breaks_;
};

struct PoleData {
    double omega0{0.0};
    double gamma_wwa{0.0};  // gamma(eta_delta) = alpha pi eta_delta / 2
    bool exists{false};
};

// Root of omega - eta_delta - R(omega) on (0, 1): first sign change above 0,
// refined by Brent. Spin-bath self-energy.
PoleData pole_data(const RenormalizedSystem& sys);
PoleData pole_data(const SelfEnergy& se);

// cos(omega0 t) exp(-gamma t); DomainError when the pole does not exist.
double wwa_population(double t, const PoleData& pole);

// Spin bath. Temperature never enters.
double population_difference(double t, const RenormalizedSystem& sys,
                             const num::QuadratureSpec& spec = num::QuadratureSpec::series());

// Boson bath at temperature T; sys_b must come from solve_eta_boson at that T.
double population_boson(double t, double temperature, const RenormalizedSystem& sys_b,
                        const num::QuadratureSpec& spec = num::QuadratureSpec::series());

enum class DynamicsMethod { FullQuadrature, WWA, NIBA };
std::string to_string(DynamicsMethod m);

struct DynamicsResult {
    TimeSeries series;
    DynamicsMethod method{DynamicsMethod::FullQuadrature};
};

// Default grid: 400 points uniform in eta_delta t over [0, 20].
std::vector<double> default_time_grid(const RenormalizedSystem& sys, std::size_t points = 400,
                                      double scaled_tmax = 20.0);

// P(t) on a grid for the bath in sys.params (boson uses sys.params.temperature).
DynamicsResult population_series(const RenormalizedSystem& sys, const std::vector<double>& times,
                                 const num::QuadratureSpec& spec = num::QuadratureSpec::series());
DynamicsResult wwa_series(const RenormalizedSystem& sys, const std::vector<double>& times);

// Solves alpha_c = (1 + eta(alpha_c) delta) / 2 for the spin bath.
double critical_coupling(double delta, double tol = 1e-10);

enum class Regime { Coherent, Incoherent };
std::string to_string(Regime r);

struct PhasePoint {
    double alpha{0.0};
    double delta{0.0};
    double temperature{0.0};
    Regime classification{Regime::Coherent};
    double alpha_c{0.0};
};

PhasePoint classify_dynamics(double delta, double alpha, double temperature = 0.0);

// <tau_x(t)> from the four-term closed form; mode sums in the continuum limit.
double tau_x_expectation(double t, double temperature, const RenormalizedSystem& sys,
                         const num::QuadratureSpec& spec = num::QuadratureSpec::series());

// The t -> infinity value of the same expression: eta tanh(eta_delta / 2T)
// plus the static part of the thermal term, which does not vanish at T > 0.
double tau_x_long_time(double temperature, const RenormalizedSystem& sys,
                       const num::QuadratureSpec& spec = {});

struct CoherenceElements {
    double diag_diff{1.0};     // rho'_11 - rho'_22 = P(t)
    double offdiag_sum{0.0};   // rho'_12 + rho'_21
    double offdiag_diff{0.0};  // (rho'_12 - rho'_21) / i
    double trace{1.0};
};

CoherenceElements coherence_elements(double t, double temperature, const RenormalizedSystem& sys,
                                     const num::QuadratureSpec& spec = num::QuadratureSpec::series());

} // namespace spinbath
