#pragma once

#include <stdexcept>
#include <string>

namespace harvestdde {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario/config file is malformed or references a missing field.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The delay map produced g(t) > t, i.e. theta(t) < 0.
class InvalidDelay : public Error {
public:
    using Error::Error;
};

/// A state value violated a model precondition (negative population, ...).
class InvalidState : public Error {
public:
    using Error::Error;
};

/// equilibrium() called with r(t) <= b(t); no positive equilibrium exists.
class NoPositiveEquilibrium : public Error {
public:
    using Error::Error;
};

/// Trajectory evaluation outside the computed range.
class OutOfRange : public Error {
public:
    using Error::Error;
};

/// A hypothesis check failed where an operation requires it to hold.
class PremiseViolation : public Error {
public:
    using Error::Error;
};

/// The integrator produced a state at or below the positivity floor.
/// Carries the time and the offending value.
class PositivityLoss : public Error {
public:
    PositivityLoss(double t, double value)
        : Error("positivity loss at t = " + std::to_string(t) +
                " (N = " + std::to_string(value) + ")"),
          t_(t),
          value_(value) {}

    double t() const { return t_; }
    double value() const { return value_; }

private:
    double t_;
    double value_;
};

}  // namespace harvestdde
