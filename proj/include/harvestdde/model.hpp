#pragma once

#include <limits>
#include <optional>

#include "harvestdde/coefficients.hpp"

namespace harvestdde {

/// Full parameter set of the delayed harvested-population equation
///
///   N'(t) = [ r(t) / (1 + (N(g(t))/K(t))^gamma) - b(t) ] N(t),
///
/// with effective loss rate b(t) = eta(t) - lambda(t) and delay map
/// g(t) = t - theta(t).
struct ModelParams {
    double gamma = 1.0;        // abruptness of the Hill growth term, > 0
    CoefficientFunction r;     // per-capita fecundity
    CoefficientFunction eta;   // per-capita mortality
    CoefficientFunction lam;   // per-capita harvest rate, defaults to 0
    CoefficientFunction K;     // carrying capacity
    CoefficientFunction theta; // maturation delay, >= 0, defaults to 0
    std::optional<double> period;  // declared common period of the coefficients

    double b(double t) const { return eta(t) - lam(t); }
};

/// Lagged time g(t) = t - theta(t). Throws InvalidDelay if theta(t) < 0.
double lag_time(const ModelParams& params, double t);

/// Right-hand side of the model at time t given the current population N and
/// the lagged population N_lag = N(g(t)). The Hill denominator
/// 1 + (N_lag/K)^gamma is >= 1 for N_lag >= 0, so the expression is total.
/// Throws InvalidState if N < 0 or N_lag < 0.
double rhs(const ModelParams& params, double t, double N, double N_lag);

/// Positive equilibrium of the equation with coefficients frozen at t_frozen:
/// K * (r/b - 1)^(1/gamma). Throws NoPositiveEquilibrium if r <= b there.
double equilibrium(const ModelParams& params, double t_frozen);

/// Initial data: N(t) = phi(t) for t < 0 and N(0) = N0.
struct History {
    CoefficientFunction phi;
    double N0 = 1.0;
    // How far below 0 phi is known to be valid; the integrator only ever
    // queries phi on [-max theta, 0].
    double support_depth = std::numeric_limits<double>::infinity();

    double operator()(double t) const { return t < 0.0 ? phi(t) : N0; }
};

}  // namespace harvestdde
