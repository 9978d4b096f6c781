#include "harvestdde/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harvestdde/errors.hpp"

namespace harvestdde {

double seasonal_harvest(double t, double peak, double H, double t_start) {
    const double u = t - std::floor(t);  // position within the year, [0, 1)
    if (u <= t_start || u >= t_start + H) return 0.0;
    return peak * std::sin(std::numbers::pi * (u - t_start) / H);
}

double rotational_harvest(double t, double peak, double H, double t_start,
                          int cycle, int open_offset) {
    const auto n = static_cast<long long>(std::floor(t));
    long long year = n % cycle;
    if (year < 0) year += cycle;
    if (year != open_offset) return 0.0;
    return seasonal_harvest(t, peak, H, t_start);
}

namespace {

double eval_tabulated(const TabulatedCoeff& tab, double t) {
    const auto& knots = tab.knots;
    const double t_first = knots.front().first;
    const double t_last = knots.back().first;

    double tq = t;
    if (tab.extension == TabulatedCoeff::Extension::Periodic) {
        tq = t_first + std::fmod(t - t_first, tab.period);
        if (tq < t_first) tq += tab.period;
        if (tq > t_last) {
            // wrap segment: interpolate between the last knot and the first
            // knot shifted one period forward
            const double span = t_first + tab.period - t_last;
            const double w = (tq - t_last) / span;
            return (1.0 - w) * knots.back().second + w * knots.front().second;
        }
    } else {
        if (tq <= t_first) return knots.front().second;
        if (tq >= t_last) return knots.back().second;
    }

    auto it = std::upper_bound(
        knots.begin(), knots.end(), tq,
        [](double value, const std::pair<double, double>& knot) {
            return value < knot.first;
        });
    if (it == knots.begin()) return knots.front().second;
    if (it == knots.end()) return knots.back().second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (tq - lo.first) / (hi.first - lo.first);
    return (1.0 - w) * lo.second + w * hi.second;
}

}  // namespace

CoefficientFunction CoefficientFunction::constant(double value) {
    return CoefficientFunction(ConstantCoeff{value});
}

CoefficientFunction CoefficientFunction::cosine(double base, double amplitude,
                                                double omega, double phase) {
    return CoefficientFunction(CosineCoeff{base, amplitude, omega, phase});
}

CoefficientFunction CoefficientFunction::seasonal_pulse(double peak, double H,
                                                        double t_start) {
    if (!(H > 0.0)) throw ConfigError("seasonal pulse: H must be > 0");
    if (t_start < 0.0 || t_start + H > 1.0)
        throw ConfigError(
            "seasonal pulse: window [t_start, t_start + H] must lie in [0, 1]");
    if (peak < 0.0) throw ConfigError("seasonal pulse: peak must be >= 0");
    return CoefficientFunction(SeasonalPulseCoeff{peak, H, t_start});
}

CoefficientFunction CoefficientFunction::rotational_pulse(double peak, double H,
                                                          double t_start,
                                                          int cycle,
                                                          int open_offset) {
    if (cycle < 1) throw ConfigError("rotational pulse: cycle must be >= 1");
    if (open_offset < 0 || open_offset >= cycle)
        throw ConfigError("rotational pulse: open_offset must be in [0, cycle)");
    if (!(H > 0.0)) throw ConfigError("rotational pulse: H must be > 0");
    if (t_start < 0.0 || t_start + H > 1.0)
        throw ConfigError(
            "rotational pulse: window [t_start, t_start + H] must lie in [0, 1]");
    if (peak < 0.0) throw ConfigError("rotational pulse: peak must be >= 0");
    return CoefficientFunction(
        RotationalPulseCoeff{peak, H, t_start, cycle, open_offset});
}

CoefficientFunction CoefficientFunction::tabulated(
    std::vector<std::pair<double, double>> knots,
    TabulatedCoeff::Extension extension, double period) {
    if (knots.size() < 2)
        throw ConfigError("tabulated coefficient: need at least two knots");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i - 1].first < knots[i].first))
            throw ConfigError(
                "tabulated coefficient: knots must be strictly increasing in t");
    }
    if (extension == TabulatedCoeff::Extension::Periodic) {
        const double span = knots.back().first - knots.front().first;
        if (!(period > 0.0) || period < span)
            throw ConfigError(
                "tabulated coefficient: periodic extension needs period >= knot span");
    }
    return CoefficientFunction(TabulatedCoeff{std::move(knots), extension, period});
}

double CoefficientFunction::operator()(double t) const {
    return std::visit(
        [t](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantCoeff>) {
                return c.value;
            } else if constexpr (std::is_same_v<T, CosineCoeff>) {
                return c.base +
                       c.amplitude *
                           std::cos(c.omega * std::numbers::pi * (t - c.phase));
            } else if constexpr (std::is_same_v<T, SeasonalPulseCoeff>) {
                return seasonal_harvest(t, c.peak, c.H, c.t_start);
            } else if constexpr (std::is_same_v<T, RotationalPulseCoeff>) {
                return rotational_harvest(t, c.peak, c.H, c.t_start, c.cycle,
                                          c.open_offset);
            } else {
                return eval_tabulated(c, t);
            }
        },
        form_);
}

}  // namespace harvestdde
