// errors.hpp: Exception types shared by the numerical modules

#pragma once

#include <stdexcept>
#include <string>

namespace spinbath {

// Quadrature did not reach the requested tolerance.
struct IntegrationError : std::runtime_error {
    double achieved{0.0};  // error estimate at the point of failure
    IntegrationError(const std::string& what, double achieved_estimate)
        : std::runtime_error(what), achieved(achieved_estimate) {}
};

// Fixed-point or root iteration did not converge.
struct IterationError : std::runtime_error {
    double last_iterate{0.0};
    IterationError(const std::string& what, double last)
        : std::runtime_error(what), last_iterate(last) {}
};

// Argument outside the domain where a closed form is defined.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace spinbath
