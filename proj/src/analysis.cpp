#include "harvestdde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "harvestdde/errors.hpp"

namespace harvestdde {

bool PremiseReport::all_pass() const {
    return gamma_positive.pass && r_positive.pass && b_above_floor.pass &&
           K_above_floor.pass && theta_nonnegative.pass && r_above_b.pass &&
           finite_values.pass;
}

std::string PremiseReport::first_failure() const {
    if (!gamma_positive.pass) return "gamma > 0";
    if (!finite_values.pass) return "finite coefficient values";
    if (!r_positive.pass) return "r(t) > 0";
    if (!b_above_floor.pass) return "b(t) >= b > 0";
    if (!K_above_floor.pass) return "K(t) >= k > 0";
    if (!theta_nonnegative.pass) return "theta(t) >= 0";
    if (!r_above_b.pass) return "r(t) > b(t)";
    return {};
}

const char* to_string(PeriodicityCondition c) {
    switch (c) {
        case PeriodicityCondition::B1_HOLDS: return "B1_HOLDS";
        case PeriodicityCondition::B2_HOLDS: return "B2_HOLDS";
        case PeriodicityCondition::BOTH: return "BOTH";
        case PeriodicityCondition::NEITHER: return "NEITHER";
    }
    return "NEITHER";
}

namespace {

// Tracks the minimum of a margin and where it occurs.
struct WorstCase {
    double margin = std::numeric_limits<double>::infinity();
    double t = 0.0;
    double value = 0.0;

    void offer(double candidate_margin, double at_t, double at_value) {
        if (candidate_margin < margin) {
            margin = candidate_margin;
            t = at_t;
            value = at_value;
        }
    }

    PremiseCheck check(double threshold) const {
        return PremiseCheck{margin >= threshold, t, value};
    }
};

double simpson(const std::function<double(double)>& f, double a, double b,
               int panels) {
    if (a == b) return 0.0;
    if (panels < 1) panels = 1;
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + width * i;
        const double hi = (i == panels - 1) ? b : a + width * (i + 1);
        sum += (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    }
    return sum;
}

}  // namespace

PremiseReport validate_premises(const ModelParams& params, double horizon,
                                int grid_n, double floor_b, double floor_K) {
    PremiseReport report;
    report.floor_b = floor_b;
    report.floor_K = floor_K;

    report.gamma_positive =
        PremiseCheck{params.gamma > 0.0, 0.0, params.gamma};

    if (grid_n < 2) grid_n = 2;
    WorstCase worst_r, worst_b, worst_K, worst_theta, worst_rb;
    bool finite = true;
    double finite_t = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const double t = horizon * static_cast<double>(i) / (grid_n - 1);
        const double r = params.r(t);
        const double b = params.b(t);
        const double K = params.K(t);
        const double delay = params.theta(t);
        if (finite && !(std::isfinite(r) && std::isfinite(b) &&
                        std::isfinite(K) && std::isfinite(delay))) {
            finite = false;
            finite_t = t;
        }
        worst_r.offer(r, t, r);
        worst_b.offer(b - floor_b, t, b);
        worst_K.offer(K - floor_K, t, K);
        worst_theta.offer(delay, t, delay);
        worst_rb.offer(r - b, t, r);
    }

    report.r_positive = worst_r.check(std::numeric_limits<double>::min());
    report.b_above_floor = worst_b.check(0.0);
    report.K_above_floor = worst_K.check(0.0);
    report.theta_nonnegative = worst_theta.check(0.0);
    report.r_above_b = worst_rb.check(std::numeric_limits<double>::min());
    report.finite_values = PremiseCheck{finite, finite_t, 0.0};
    return report;
}

BoundsReport persistence_bounds(const ModelParams& params, double N0,
                                double horizon, int grid_n, int quad_n) {
    if (grid_n < 2) grid_n = 2;
    if (quad_n < 2) quad_n = 2;

    BoundsReport report;
    report.N0 = N0;
    report.grid = GridSpec{horizon, grid_n, quad_n};
    report.premises = validate_premises(params, horizon, grid_n);
    if (!report.premises.b_above_floor.pass)
        throw PremiseViolation(
            "premise b(t) >= b > 0 violated at t = " +
            std::to_string(report.premises.b_above_floor.worst_t));
    if (!report.premises.r_above_b.pass)
        throw PremiseViolation(
            "premise r(t) > b(t) violated at t = " +
            std::to_string(report.premises.r_above_b.worst_t));

    const auto b_of = [&params](double s) { return params.b(s); };
    const auto rb_of = [&params](double s) { return params.r(s) - params.b(s); };

    double inner_inf = std::numeric_limits<double>::infinity();
    double inner_sup = -std::numeric_limits<double>::infinity();
    double sup_int_b = -std::numeric_limits<double>::infinity();
    double sup_int_rb = -std::numeric_limits<double>::infinity();

    for (int i = 0; i < grid_n; ++i) {
        const double t = horizon * static_cast<double>(i) / (grid_n - 1);
        const double r = params.r(t);
        const double b = params.b(t);
        const double inner =
            params.K(t) * std::pow(r / b - 1.0, 1.0 / params.gamma);
        inner_inf = std::min(inner_inf, inner);
        inner_sup = std::max(inner_sup, inner);

        const double g = t - params.theta(t);
        sup_int_b = std::max(sup_int_b, simpson(b_of, g, t, quad_n));
        sup_int_rb = std::max(sup_int_rb, simpson(rb_of, g, t, quad_n));
    }

    report.inner_inf = inner_inf;
    report.inner_sup = inner_sup;
    report.sup_int_b = sup_int_b;
    report.sup_int_rb = sup_int_rb;
    report.lower = std::min(N0, inner_inf * std::exp(-sup_int_b));
    report.upper = std::max(N0, inner_sup * std::exp(sup_int_rb));
    report.premises.finite_values.pass =
        report.premises.finite_values.pass && std::isfinite(sup_int_b) &&
        std::isfinite(sup_int_rb);
    return report;
}

ContainmentVerdict verify_bounds(const Trajectory& traj,
                                 const BoundsReport& report, double tol) {
    ContainmentVerdict verdict;
    verdict.tol = tol;
    for (std::size_t i = 0; i < traj.node_count(); ++i) {
        const double value = traj.node_value(i);
        if (value < report.lower - tol || value > report.upper + tol) {
            verdict.pass = false;
            verdict.violations.emplace_back(traj.node_time(i), value);
        }
    }
    return verdict;
}

PeriodicityReport theorem2_margins(const ModelParams& params, int grid_n) {
    if (!params.period)
        throw PremiseViolation("theorem2_margins requires a declared period T");
    if (grid_n < 2) grid_n = 2;
    const double T = *params.period;

    PeriodicityReport report;
    report.T = T;
    report.grid_n = grid_n;

    double m = std::numeric_limits<double>::infinity();
    double M = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i) {
        // left-closed periodic grid; t = T duplicates t = 0
        const double t = T * static_cast<double>(i) / grid_n;
        const double r = params.r(t);
        const double b = params.b(t);
        if (!(r > b))
            throw PremiseViolation("r(t) <= b(t) at t = " + std::to_string(t));
        const double v = (r / b - 1.0) * std::pow(params.K(t), params.gamma);
        m = std::min(m, v);
        M = std::max(M, v);
    }

    report.m = m;
    report.M = M;
    report.B = std::log(M) / params.gamma;
    if (m > 1.0)
        report.condition = PeriodicityCondition::B1_HOLDS;
    else if (M < 1.0)
        report.condition = PeriodicityCondition::B2_HOLDS;
    else
        report.condition = PeriodicityCondition::NEITHER;
    return report;
}

}  // namespace harvestdde
