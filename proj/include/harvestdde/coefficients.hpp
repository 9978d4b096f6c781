#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace harvestdde {

/// Sine-shaped harvest pulse repeated every year.
///
/// With n = floor(t), returns peak * sin(pi * (t - n - t_start) / H) when
/// n + t_start < t < n + t_start + H and 0 otherwise. The sine vanishes at
/// the window endpoints, so the function is continuous and takes values in
/// [0, peak].
double seasonal_harvest(double t, double peak, double H, double t_start);

/// Seasonal pulse gated by a multi-year rotation: the pulse is active only
/// in years n with n mod cycle == open_offset. Periodic with period `cycle`.
double rotational_harvest(double t, double peak, double H, double t_start,
                          int cycle, int open_offset);

struct ConstantCoeff {
    double value = 0.0;
};

/// base + amplitude * cos(omega * pi * (t - phase)); period is 2 / omega,
/// so an annual cycle corresponds to omega = 2.
struct CosineCoeff {
    double base = 0.0;
    double amplitude = 0.0;
    double omega = 2.0;
    double phase = 0.0;
};

struct SeasonalPulseCoeff {
    double peak = 0.5;
    double H = 0.25;
    double t_start = 0.25;
};

struct RotationalPulseCoeff {
    double peak = 0.5;
    double H = 0.25;
    double t_start = 0.25;
    int cycle = 3;
    int open_offset = 0;
};

/// Piecewise-linear table. Knots must be strictly increasing in t.
/// Extension beyond the knot range is either periodic with a declared
/// period (>= knot span) or clamped to the end values.
struct TabulatedCoeff {
    enum class Extension { Clamped, Periodic };

    std::vector<std::pair<double, double>> knots;
    Extension extension = Extension::Clamped;
    double period = 0.0;  // used only for periodic extension
};

/// A time-varying scalar coefficient of the model (r, eta, lambda, K, theta).
/// Immutable after construction; evaluation is pure.
class CoefficientFunction {
public:
    using Form = std::variant<ConstantCoeff, CosineCoeff, SeasonalPulseCoeff,
                              RotationalPulseCoeff, TabulatedCoeff>;

    CoefficientFunction() : form_(ConstantCoeff{0.0}) {}

    static CoefficientFunction constant(double value);
    static CoefficientFunction cosine(double base, double amplitude,
                                      double omega, double phase);
    static CoefficientFunction seasonal_pulse(double peak, double H,
                                              double t_start);
    static CoefficientFunction rotational_pulse(double peak, double H,
                                                double t_start, int cycle,
                                                int open_offset);
    static CoefficientFunction tabulated(
        std::vector<std::pair<double, double>> knots,
        TabulatedCoeff::Extension extension, double period = 0.0);

    double operator()(double t) const;

    const Form& form() const { return form_; }

private:
    explicit CoefficientFunction(Form form) : form_(std::move(form)) {}

    Form form_;
};

/// Named evaluation entry point, equivalent to c(t).
inline double eval_coefficient(const CoefficientFunction& c, double t) {
    return c(t);
}

}  // namespace harvestdde
