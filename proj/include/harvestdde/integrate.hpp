#pragma once

#include <functional>

#include "harvestdde/model.hpp"
#include "harvestdde/trajectory.hpp"

namespace harvestdde {

struct IntegrationConfig {
    double h = 1.0 / 64.0;
    double t_end = 1.0;
    // A node or stage value <= positivity_floor raises PositivityLoss
    // (strict comparison; the default floor 0 demands strict positivity).
    double positivity_floor = 0.0;
    // Fixed-point rounds for the step map when a lag falls inside the
    // current step (theta < h, including theta = 0).
    int max_lag_iterations = 3;
    bool enforce_positivity = true;
};

/// Generic scalar DDE y'(t) = f(t, y(t), y(g(t))) with one lagged argument.
/// `history` supplies y(t) for t <= 0 and must return y0 at t = 0.
/// Lets test systems bypass the population model (positivity checks are
/// usually disabled for those).
struct DdeProblem {
    std::function<double(double t, double y, double y_lag)> rhs;
    std::function<double(double t)> lag;
    std::function<double(double t)> history;
    double y0 = 0.0;
};

/// Method of steps with classical fixed-step RK4 and cubic Hermite dense
/// output. The lag term is evaluated from the history for g(t) <= 0 and from
/// already-computed dense output for 0 < g(t); a lag inside the current step
/// is resolved by iterating the step map max_lag_iterations times.
/// The returned trajectory covers [0, n*h] with n = ceil(t_end / h).
Trajectory integrate(const DdeProblem& problem, const IntegrationConfig& cfg);

/// Model front end: builds the DDE from ModelParams and History and enforces
/// positivity per the config.
Trajectory integrate(const ModelParams& params, const History& history,
                     const IntegrationConfig& cfg);

}  // namespace harvestdde
