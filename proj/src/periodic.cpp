#include "harvestdde/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "harvestdde/errors.hpp"

namespace harvestdde {

HistorySegment HistorySegment::constant(double value, double theta_max,
                                        int n_samples) {
    if (n_samples < 2) n_samples = 2;
    HistorySegment seg;
    seg.theta_max = theta_max;
    seg.samples.assign(static_cast<std::size_t>(n_samples), value);
    return seg;
}

double HistorySegment::interpolate(double t) const {
    if (samples.size() < 2 || theta_max <= 0.0) return samples.back();
    if (t <= -theta_max) return samples.front();
    if (t >= 0.0) return samples.back();
    const double dt = theta_max / static_cast<double>(samples.size() - 1);
    const double x = (t + theta_max) / dt;
    auto i = static_cast<std::size_t>(x);
    if (i >= samples.size() - 1) i = samples.size() - 2;
    const double w = x - static_cast<double>(i);
    return (1.0 - w) * samples[i] + w * samples[i + 1];
}

double max_delay(const ModelParams& params, int grid_n) {
    if (!params.period)
        throw PremiseViolation("max_delay requires a declared period T");
    if (grid_n < 2) grid_n = 2;
    const double T = *params.period;
    double worst = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const double t = T * static_cast<double>(i) / grid_n;
        const double delay = params.theta(t);
        if (delay < 0.0)
            throw InvalidDelay("theta(" + std::to_string(t) + ") is negative");
        worst = std::max(worst, delay);
    }
    return worst;
}

namespace {

void require_positive(const HistorySegment& segment) {
    for (double value : segment.samples)
        if (!(value > 0.0))
            throw InvalidState("history segment has a non-positive sample");
    if (segment.samples.size() < 2)
        throw InvalidState("history segment needs at least 2 samples");
}

IntegrationConfig config_for_period(const IntegrationConfig& cfg, double T) {
    IntegrationConfig out = cfg;
    const auto steps = static_cast<int>(std::ceil(T / cfg.h - 1e-9));
    out.h = T / std::max(steps, 1);
    out.t_end = T;
    return out;
}

Trajectory integrate_from_segment(const ModelParams& params,
                                  const HistorySegment& segment,
                                  const IntegrationConfig& cfg) {
    DdeProblem problem;
    problem.rhs = [&params](double t, double y, double y_lag) {
        return rhs(params, t, y, y_lag);
    };
    problem.lag = [&params](double t) { return lag_time(params, t); };
    problem.history = segment;
    problem.y0 = segment.terminal();
    return integrate(problem, cfg);
}

HistorySegment resample_tail(const Trajectory& traj, double T,
                             const HistorySegment& like) {
    HistorySegment out;
    out.theta_max = like.theta_max;
    out.samples.resize(like.samples.size());
    const auto n = out.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        // segment grid shifted one period forward; evaluate() handles
        // pre-period times through the trajectory's history
        const double t = T - like.theta_max +
                         like.theta_max * static_cast<double>(i) /
                             static_cast<double>(n - 1);
        out.samples[i] = traj.evaluate(std::min(t, T));
    }
    return out;
}

double sup_difference(const HistorySegment& a, const HistorySegment& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        worst = std::max(worst, std::abs(a.samples[i] - b.samples[i]));
    return worst;
}

}  // namespace

HistorySegment period_map(const ModelParams& params,
                          const HistorySegment& segment,
                          const IntegrationConfig& cfg) {
    if (!params.period)
        throw PremiseViolation("period_map requires a declared period T");
    require_positive(segment);
    const double T = *params.period;
    const IntegrationConfig period_cfg = config_for_period(cfg, T);
    const Trajectory traj = integrate_from_segment(params, segment, period_cfg);
    return resample_tail(traj, T, segment);
}

PeriodicSolveResult find_periodic(const ModelParams& params,
                                  const HistorySegment& seed, int max_iter,
                                  double tol, const IntegrationConfig& cfg) {
    if (!params.period)
        throw PremiseViolation("find_periodic requires a declared period T");
    require_positive(seed);
    const double T = *params.period;
    const IntegrationConfig period_cfg = config_for_period(cfg, T);

    PeriodicSolveResult result;
    result.final_segment = seed;

    HistorySegment current = seed;
    for (int iter = 1; iter <= max_iter; ++iter) {
        HistorySegment next = period_map(params, current, period_cfg);
        result.iterations = iter;
        result.residual = sup_difference(next, current);
        current = std::move(next);
        if (result.residual <= tol) {
            result.converged = true;
            break;
        }
    }
    result.final_segment = current;

    // Re-integrate two periods from the final segment and measure
    // sup |N(t+T) - N(t)| on an oversampled grid.
    IntegrationConfig two_period_cfg = period_cfg;
    two_period_cfg.t_end = 2.0 * T;
    const Trajectory two_periods =
        integrate_from_segment(params, current, two_period_cfg);
    const int oversample_n =
        10 * static_cast<int>(std::max<std::size_t>(current.samples.size(), 32));
    double worst = 0.0;
    for (int i = 0; i <= oversample_n; ++i) {
        const double t = T * static_cast<double>(i) / oversample_n;
        worst = std::max(worst, std::abs(two_periods.evaluate(t + T) -
                                         two_periods.evaluate(t)));
    }
    result.periodicity_residual = worst;

    IntegrationConfig one_period_cfg = period_cfg;
    result.trajectory_one_period =
        integrate_from_segment(params, current, one_period_cfg);
    return result;
}

}  // namespace harvestdde
