// model.cpp: Parameter validation, spectral density and bath sums

#include "spinbath/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinbath/errors.hpp"

namespace spinbath {

std::string to_string(BathKind kind) {
    return kind == BathKind::Spin ? "spin" : "boson";
}

BathKind parse_bath_kind(const std::string& name) {
    if (name == "spin") return BathKind::Spin;
    if (name == "boson") return BathKind::Boson;
    throw std::invalid_argument("bath must be 'spin' or 'boson', got '" + name + "'");
}

void ModelParams::validate() const {
    if (!(std::isfinite(delta) && delta > 0.0))
        throw std::invalid_argument("delta must be finite and > 0");
    if (!(std::isfinite(alpha) && alpha >= 0.0))
        throw std::invalid_argument("alpha must be finite and >= 0");
    if (!(std::isfinite(temperature) && temperature >= 0.0))
        throw std::invalid_argument("temperature must be finite and >= 0");
}

double spectral_density(double omega, double alpha) {
    return (omega >= 0.0 && omega < 1.0) ? 2.0 * alpha * omega : 0.0;
}

double thermal_weight(double omega, double temperature) {
    if (temperature == 0.0) return 0.0;
    if (omega == 0.0) return 2.0 * temperature;
    return 2.0 * omega / std::expm1(omega / temperature);
}

double continuum_sum(const ModeFunction& f, double alpha, const num::QuadratureSpec& spec) {
    auto integrand = [&](double w) { return f(w, 2.0 * alpha * w); };

    // omega * f(omega) must vanish at 0 for an integrable summand.
    const double near = 1e-9, nearer = 1e-12;
    const double a = near * integrand(near);
    const double b = nearer * integrand(nearer);
    if (!std::isfinite(a) || !std::isfinite(b) || (b != 0.0 && std::abs(b) >= 0.75 * std::abs(a))) {
        std::ostringstream os;
        os << "continuum_sum: summand not integrable at omega = 0 (omega*f = " << a << " at "
           << near << ", " << b << " at " << nearer << ")";
        throw IntegrationError(os.str(), std::abs(b));
    }
    return num::integrate_adaptive(integrand, 0.0, 1.0, spec).value;
}

std::vector<BathMode> discrete_bath(std::size_t modes, double alpha) {
    if (modes == 0) throw std::invalid_argument("discrete_bath: need at least one mode");
    std::vector<BathMode> bath;
    bath.reserve(modes);
    const double n = static_cast<double>(modes);
    for (std::size_t l = 1; l <= modes; ++l) {
        const double w = (static_cast<double>(l) - 0.5) / n;
        bath.push_back({w, 2.0 * alpha * w / n});
    }
    return bath;
}

double discrete_sum(const ModeFunction& f, const std::vector<BathMode>& bath) {
    double sum = 0.0;
    for (const auto& mode : bath) sum += f(mode.omega, mode.g2);
    return sum;
}

} // namespace spinbath
