#pragma once

#include <stdexcept>
#include <string>

namespace flexfet {

/// Rejected configuration document or parameter set.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the domain of a model expression.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A solver or quadrature failed to meet its tolerance, or a result would overflow.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Gate voltage above pull-in: no equilibrium exists on the stable branch.
class PullInExceeded : public std::runtime_error {
public:
    PullInExceeded(double gate_voltage, const std::string& what)
        : std::runtime_error(what), gate_voltage_(gate_voltage) {}
    double gate_voltage() const noexcept { return gate_voltage_; }

private:
    double gate_voltage_;
};

/// Operating point too deep for the near-pull-in perturbation formulas (3y - y0 <= 0).
class BiasRegimeError : public std::runtime_error {
public:
    explicit BiasRegimeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace flexfet
