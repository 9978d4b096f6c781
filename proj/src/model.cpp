#include "harvestdde/model.hpp"

#include <cmath>
#include <string>

#include "harvestdde/errors.hpp"

namespace harvestdde {

double lag_time(const ModelParams& params, double t) {
    const double delay = params.theta(t);
    if (delay < 0.0)
        throw InvalidDelay("theta(" + std::to_string(t) +
                           ") = " + std::to_string(delay) + " is negative");
    return t - delay;
}

double rhs(const ModelParams& params, double t, double N, double N_lag) {
    if (N < 0.0 || N_lag < 0.0)
        throw InvalidState("rhs called with negative population at t = " +
                           std::to_string(t));
    const double hill = params.r(t) / (1.0 + std::pow(N_lag / params.K(t), params.gamma));
    return (hill - params.b(t)) * N;
}

double equilibrium(const ModelParams& params, double t_frozen) {
    const double r = params.r(t_frozen);
    const double b = params.b(t_frozen);
    if (!(r > b) || !(b > 0.0))
        throw NoPositiveEquilibrium(
            "no positive equilibrium: r(t) = " + std::to_string(r) +
            ", b(t) = " + std::to_string(b) + " at t = " + std::to_string(t_frozen));
    return params.K(t_frozen) * std::pow(r / b - 1.0, 1.0 / params.gamma);
}

}  // namespace harvestdde
