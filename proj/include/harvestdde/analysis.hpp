#pragma once

#include <string>
#include <utility>
#include <vector>

#include "harvestdde/model.hpp"
#include "harvestdde/trajectory.hpp"

namespace harvestdde {

/// One hypothesis check on the sampling grid, with the worst offending point.
struct PremiseCheck {
    bool pass = true;
    double worst_t = 0.0;
    double worst_value = 0.0;
};

struct PremiseReport {
    PremiseCheck gamma_positive;    // gamma > 0
    PremiseCheck r_positive;        // r(t) > 0
    PremiseCheck b_above_floor;     // b(t) >= b > 0
    PremiseCheck K_above_floor;     // K(t) >= k > 0
    PremiseCheck theta_nonnegative; // theta(t) >= 0
    PremiseCheck r_above_b;         // r(t) > b(t)
    PremiseCheck finite_values;     // all coefficient samples finite

    double floor_b = 1e-9;
    double floor_K = 1e-9;

    bool all_pass() const;
    /// Stable display name of the first failed check, empty if all pass.
    std::string first_failure() const;
};

struct GridSpec {
    double horizon = 1.0;
    int grid_n = 2048;
    int quad_n = 64;
};

/// Persistence envelope: lower = min{N0, inner_inf * exp(-sup_int_b)} and
/// upper = max{N0, inner_sup * exp(sup_int_rb)}, with
/// inner(t) = K(t) (r(t)/b(t) - 1)^(1/gamma) and the sup-integrals
/// taken over [g(t), t] on the sampling grid.
struct BoundsReport {
    double lower = 0.0;
    double upper = 0.0;
    double inner_inf = 0.0;
    double inner_sup = 0.0;
    double sup_int_b = 0.0;
    double sup_int_rb = 0.0;
    double N0 = 0.0;
    PremiseReport premises;
    GridSpec grid;
};

struct ContainmentVerdict {
    bool pass = true;
    double tol = 1e-6;
    std::vector<std::pair<double, double>> violations;  // (t, N) outside bounds
};

enum class PeriodicityCondition { B1_HOLDS, B2_HOLDS, BOTH, NEITHER };

const char* to_string(PeriodicityCondition c);

/// Margins of the periodic-solution criterion: extrema of
/// v(t) = (r(t)/b(t) - 1) K(t)^gamma over one period, and
/// B = (1/gamma) ln(max v).
struct PeriodicityReport {
    double m = 0.0;
    double M = 0.0;
    double B = 0.0;
    PeriodicityCondition condition = PeriodicityCondition::NEITHER;
    double T = 0.0;
    int grid_n = 0;
};

/// Samples the model hypotheses on a uniform grid over [0, horizon] and
/// reports per-condition pass/fail. Never throws; failures are flags.
PremiseReport validate_premises(const ModelParams& params, double horizon,
                                int grid_n, double floor_b = 1e-9,
                                double floor_K = 1e-9);

/// Computes the persistence envelope on a uniform grid over [0, horizon],
/// with each integral over [g(t), t] evaluated by composite Simpson with
/// quad_n panels. Throws PremiseViolation if r <= b anywhere on the grid.
BoundsReport persistence_bounds(const ModelParams& params, double N0,
                                double horizon, int grid_n, int quad_n);

/// Checks lower - tol <= N <= upper + tol at every trajectory node and lists
/// the violating (t, N) pairs.
ContainmentVerdict verify_bounds(const Trajectory& traj,
                                 const BoundsReport& report, double tol = 1e-6);

/// Extrema of v(t) = (r/b - 1) K^gamma over one declared period, sampled on
/// the left-closed grid t_i = i T / grid_n (nested under grid doubling).
/// Requires params.period; throws PremiseViolation if r <= b on the grid.
PeriodicityReport theorem2_margins(const ModelParams& params, int grid_n);

}  // namespace harvestdde
