#include "harvestdde/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>

#include "harvestdde/errors.hpp"

namespace harvestdde {

Trajectory::Trajectory(double t0, double step, std::vector<double> values,
                       std::vector<double> derivatives,
                       std::function<double(double)> history)
    : t0_(t0),
      step_(step),
      values_(std::move(values)),
      derivatives_(std::move(derivatives)),
      history_(std::move(history)) {
    if (values_.size() < 2 || values_.size() != derivatives_.size() || !(step_ > 0.0))
        throw InvalidState("trajectory needs >= 2 nodes and a positive step");
}

double Trajectory::evaluate(double t) const {
    if (t <= t0_) return history_ ? history_(t) : values_.front();

    const double end = t_end();
    const double slack = 1e-9 * std::max(1.0, std::abs(end));
    if (t > end + slack)
        throw OutOfRange("evaluate at t = " + std::to_string(t) +
                         " beyond trajectory end " + std::to_string(end));
    if (t >= end) return values_.back();

    auto i = static_cast<std::size_t>((t - t0_) / step_);
    if (i >= values_.size() - 1) i = values_.size() - 2;
    const double ti = node_time(i);
    double s = (t - ti) / step_;
    if (s < 0.0) s = 0.0;
    if (s > 1.0) s = 1.0;

    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * values_[i] + h10 * step_ * derivatives_[i] +
           h01 * values_[i + 1] + h11 * step_ * derivatives_[i + 1];
}

void Trajectory::write_csv(std::ostream& out, int oversample) const {
    if (oversample < 1) oversample = 1;
    char buf[64];
    out << "t,N\n";
    const std::size_t steps = values_.size() - 1;
    for (std::size_t i = 0; i <= steps; ++i) {
        const std::size_t sub = (i < steps) ? static_cast<std::size_t>(oversample) : 1;
        for (std::size_t j = 0; j < sub; ++j) {
            const double t = node_time(i) + step_ * static_cast<double>(j) /
                                                static_cast<double>(oversample);
            const double value = (j == 0) ? values_[i] : evaluate(t);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", t, value);
            out << buf;
        }
    }
}

}  // namespace harvestdde
