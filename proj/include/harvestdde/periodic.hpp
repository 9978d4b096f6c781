#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "harvestdde/integrate.hpp"
#include "harvestdde/model.hpp"
#include "harvestdde/trajectory.hpp"

namespace harvestdde {

/// Discretized initial function: n_samples values of N on a uniform grid over
/// [-theta_max, 0]; the last sample is the terminal value N(0). Lag queries
/// between samples use linear interpolation.
struct HistorySegment {
    double theta_max = 0.0;
    std::vector<double> samples;

    static HistorySegment constant(double value, double theta_max,
                                   int n_samples = 256);

    double terminal() const { return samples.back(); }

    /// Linear interpolation on [-theta_max, 0], clamped outside.
    double interpolate(double t) const;

    /// History functor compatible with integrate(): value at t <= 0.
    double operator()(double t) const { return interpolate(t); }
};

struct PeriodicSolveResult {
    bool converged = false;
    int iterations = 0;
    // sup over segment samples of |N(t+T) - N(t)| on the final iterate
    double residual = std::numeric_limits<double>::infinity();
    // sup of |N(t+T) - N(t)| on an oversampled grid from the two-period
    // re-integration check (run on convergence)
    double periodicity_residual = std::numeric_limits<double>::infinity();
    HistorySegment final_segment;
    std::optional<Trajectory> trajectory_one_period;
};

/// Max of theta over one declared period by grid scan (grid_n points).
double max_delay(const ModelParams& params, int grid_n = 2048);

/// One application of the period map: integrates the model over [0, T] with
/// initial data `segment`, then returns the solution on [T - theta_max, T]
/// resampled onto the segment grid. Fixed points are T-periodic solutions.
/// The step is adjusted to the largest h <= cfg.h that divides T exactly.
HistorySegment period_map(const ModelParams& params,
                          const HistorySegment& segment,
                          const IntegrationConfig& cfg);

/// Picard iteration of the period map from `seed` until the sup-norm of the
/// segment difference falls below tol or max_iter is reached. Convergence is
/// rechecked by integrating two periods from the fixed segment. A
/// non-converged result is a diagnostic, not an error: existence of a
/// periodic solution does not make the period map attracting.
PeriodicSolveResult find_periodic(const ModelParams& params,
                                  const HistorySegment& seed, int max_iter,
                                  double tol, const IntegrationConfig& cfg);

}  // namespace harvestdde
