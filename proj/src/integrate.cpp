#include "harvestdde/integrate.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "harvestdde/errors.hpp"

namespace harvestdde {

namespace {

double hermite(double y0, double d0, double y1, double d1, double h, double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * d0 +
           (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * d1;
}

class Stepper {
public:
    Stepper(const DdeProblem& problem, const IntegrationConfig& cfg)
        : prob_(problem), cfg_(cfg), h_(cfg.h) {
        if (!(cfg.h > 0.0) || !(cfg.t_end > 0.0))
            throw InvalidState("integration config needs h > 0 and t_end > 0");
        const auto steps =
            static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.h - 1e-9));
        n_steps_ = steps > 0 ? steps : 1;
        values_.reserve(n_steps_ + 1);
        derivs_.reserve(n_steps_ + 1);
    }

    Trajectory run() {
        check_positive(0.0, prob_.y0);
        values_.push_back(prob_.y0);
        derivs_.push_back(prob_.rhs(0.0, prob_.y0, lag_value(lag_at(0.0))));
        for (std::size_t n = 0; n < n_steps_; ++n) advance(n);
        return Trajectory(0.0, h_, std::move(values_), std::move(derivs_),
                          prob_.history);
    }

private:
    double node_time(std::size_t i) const { return h_ * static_cast<double>(i); }

    double lag_at(double t) const {
        const double g = prob_.lag(t);
        if (g > t + 1e-12 * std::max(1.0, std::abs(t)))
            throw InvalidDelay("g(" + std::to_string(t) + ") = " +
                               std::to_string(g) + " exceeds t");
        return g;
    }

    void check_positive(double t, double value) const {
        if (cfg_.enforce_positivity && value <= cfg_.positivity_floor)
            throw PositivityLoss(t, value);
    }

    // y at a lagged time s <= end of the current provisional step.
    // s <= 0 -> history; s within completed nodes -> stored Hermite;
    // s inside the current step -> provisional Hermite for that step.
    double lag_value(double s) const {
        if (s <= 0.0) return prob_.history(s);
        const double completed = node_time(values_.size() - 1);
        if (s <= completed) {
            auto i = static_cast<std::size_t>(s / h_);
            if (i >= values_.size() - 1) i = values_.size() - 2;
            return hermite(values_[i], derivs_[i], values_[i + 1], derivs_[i + 1],
                           h_, (s - node_time(i)) / h_);
        }
        if (!in_step_) throw InvalidState("lag query beyond integrated range");
        double s_local = (s - completed) / h_;
        if (s_local > 1.0) s_local = 1.0;
        return hermite(values_.back(), derivs_.back(), step_y_, step_dy_, h_,
                       s_local);
    }

    void advance(std::size_t n) {
        const double tn = node_time(n);
        const double t_mid = tn + 0.5 * h_;
        const double t_next = tn + h_;
        const double yn = values_[n];
        const double k1 = derivs_[n];  // f(tn, yn, y(g(tn))), stored at acceptance

        const double g_mid = lag_at(t_mid);
        const double g_next = lag_at(t_next);
        const bool needs_iteration = g_mid > tn || g_next > tn;

        // Euler predictor seeds the provisional interpolant when the lag
        // falls inside the current step.
        step_y_ = yn + h_ * k1;
        step_dy_ = k1;
        in_step_ = true;

        const int rounds = needs_iteration ? std::max(1, cfg_.max_lag_iterations) : 1;
        for (int round = 0; round < rounds; ++round) {
            const double lag_mid = lag_value(g_mid);
            const double y2 = yn + 0.5 * h_ * k1;
            check_positive(t_mid, y2);
            const double k2 = prob_.rhs(t_mid, y2, lag_mid);

            const double y3 = yn + 0.5 * h_ * k2;
            check_positive(t_mid, y3);
            const double k3 = prob_.rhs(t_mid, y3, lag_value(g_mid));

            const double y4 = yn + h_ * k3;
            check_positive(t_next, y4);
            const double k4 = prob_.rhs(t_next, y4, lag_value(g_next));

            const double y_new = yn + h_ / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            check_positive(t_next, y_new);

            const bool settled =
                std::abs(y_new - step_y_) <= 1e-15 * std::max(1.0, std::abs(y_new));
            step_y_ = y_new;
            step_dy_ = prob_.rhs(t_next, y_new, lag_value(g_next));
            if (settled) break;
        }

        in_step_ = false;
        values_.push_back(step_y_);
        derivs_.push_back(step_dy_);
    }

    const DdeProblem& prob_;
    const IntegrationConfig& cfg_;
    double h_;
    std::size_t n_steps_ = 0;
    std::vector<double> values_;
    std::vector<double> derivs_;

    // provisional endpoint of the step being iterated
    bool in_step_ = false;
    double step_y_ = 0.0;
    double step_dy_ = 0.0;
};

}  // namespace

Trajectory integrate(const DdeProblem& problem, const IntegrationConfig& cfg) {
    return Stepper(problem, cfg).run();
}

Trajectory integrate(const ModelParams& params, const History& history,
                     const IntegrationConfig& cfg) {
    if (!(history.N0 > 0.0))
        throw InvalidState("history: N0 must be positive");

    // Depth of history the lag can reach on [0, t_end].
    double theta_max = 0.0;
    const int scan_n = 2048;
    for (int i = 0; i <= scan_n; ++i) {
        const double t = cfg.t_end * static_cast<double>(i) / scan_n;
        const double delay = params.theta(t);
        if (delay < 0.0)
            throw InvalidDelay("theta(" + std::to_string(t) + ") is negative");
        theta_max = std::max(theta_max, delay);
    }
    if (history.support_depth < theta_max)
        throw InvalidState("history support_depth " +
                           std::to_string(history.support_depth) +
                           " shallower than max delay " + std::to_string(theta_max));
    for (int i = 0; i <= 64; ++i) {
        const double t = -theta_max * static_cast<double>(i) / 64.0;
        if (history(t) < 0.0)
            throw InvalidState("history: phi(" + std::to_string(t) +
                               ") is negative");
    }

    DdeProblem problem;
    problem.rhs = [params](double t, double y, double y_lag) {
        return rhs(params, t, y, y_lag);
    };
    problem.lag = [params](double t) { return lag_time(params, t); };
    problem.history = history;
    problem.y0 = history.N0;
    return integrate(problem, cfg);
}

}  // namespace harvestdde
