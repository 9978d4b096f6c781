#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

namespace harvestdde {

/// Dense-output numerical solution on [t0, t_end]: equally spaced nodes
/// (t_i, N_i, N'_i) with cubic Hermite interpolation between nodes and a
/// history function for t <= t0. Immutable after construction and safe for
/// concurrent evaluation.
class Trajectory {
public:
    Trajectory(double t0, double step, std::vector<double> values,
               std::vector<double> derivatives,
               std::function<double(double)> history);

    double t0() const { return t0_; }
    double t_end() const { return t0_ + step_ * static_cast<double>(values_.size() - 1); }
    double step() const { return step_; }
    std::size_t node_count() const { return values_.size(); }

    double node_time(std::size_t i) const { return t0_ + step_ * static_cast<double>(i); }
    double node_value(std::size_t i) const { return values_[i]; }
    double node_derivative(std::size_t i) const { return derivatives_[i]; }

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& derivatives() const { return derivatives_; }

    /// History lookup for t <= t0, exact node values at nodes, cubic Hermite
    /// in between. Throws OutOfRange for t > t_end (up to roundoff slack).
    double evaluate(double t) const;

    /// CSV export with header "t,N". oversample = k writes k rows per step
    /// using dense output; nodes are reproduced exactly.
    void write_csv(std::ostream& out, int oversample = 1) const;

private:
    double t0_;
    double step_;
    std::vector<double> values_;
    std::vector<double> derivatives_;
    std::function<double(double)> history_;
};

}  // namespace harvestdde
