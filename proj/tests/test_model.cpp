#include <cmath>
#include <random>

#include <doctest.h>

#include "harvestdde/errors.hpp"
#include "harvestdde/model.hpp"

using namespace harvestdde;

namespace {

ModelParams constant_params(double gamma, double r, double eta, double lam,
                            double K, double theta) {
    ModelParams p;
    p.gamma = gamma;
    p.r = CoefficientFunction::constant(r);
    p.eta = CoefficientFunction::constant(eta);
    p.lam = CoefficientFunction::constant(lam);
    p.K = CoefficientFunction::constant(K);
    p.theta = CoefficientFunction::constant(theta);
    return p;
}

}  // namespace

TEST_CASE("lag_time subtracts the delay") {
    auto p = constant_params(1, 2, 1, 0, 1, 1.0);
    CHECK(lag_time(p, 2.5) == doctest::Approx(1.5));
    p.theta = CoefficientFunction::constant(0.0);
    CHECK(lag_time(p, 7.0) == 7.0);
    p.theta = CoefficientFunction::cosine(1.0, 0.5, 2.0, 0.0);
    CHECK(lag_time(p, 0.0) == doctest::Approx(-1.5));  // theta(0) = 1.5
    p.theta = CoefficientFunction::constant(-0.1);
    CHECK_THROWS_AS(lag_time(p, 1.0), InvalidDelay);
}

TEST_CASE("rhs matches direct substitution") {
    const auto p1 = constant_params(1, 2, 1, 0, 1, 0.5);
    CHECK(rhs(p1, 0.0, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rhs(p1, 3.7, 3.0, 0.0) == doctest::Approx(3.0));
    const auto p2 = constant_params(2, 3, 1, 0, 2, 0.0);
    CHECK(rhs(p2, 0.0, 1.0, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("extinction is absorbing and rhs sign follows the growth margin") {
    const auto p = constant_params(1.5, 2.5, 1.0, 0.25, 1.5, 0.5);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> lagged(0.0, 10.0);
    std::uniform_real_distribution<double> current(1e-6, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = lagged(rng);
        CHECK(rhs(p, 0.3, 0.0, x) == 0.0);
        const double N = current(rng);
        const double margin =
            p.r(0.0) / (1.0 + std::pow(x / p.K(0.0), p.gamma)) - p.b(0.0);
        const double value = rhs(p, 0.0, N, x);
        if (margin > 0.0) CHECK(value > 0.0);
        if (margin < 0.0) CHECK(value < 0.0);
    }
}

TEST_CASE("rhs rejects negative populations") {
    const auto p = constant_params(1, 2, 1, 0, 1, 0.5);
    CHECK_THROWS_AS(rhs(p, 0.0, -0.5, 1.0), InvalidState);
    CHECK_THROWS_AS(rhs(p, 0.0, 1.0, -0.5), InvalidState);
}

TEST_CASE("equilibrium closed forms") {
    CHECK(equilibrium(constant_params(1, 2, 1, 0, 1, 0), 0.0) == doctest::Approx(1.0));
    CHECK(equilibrium(constant_params(3, 2, 1, 0, 7, 0), 0.0) == doctest::Approx(7.0));
    CHECK(equilibrium(constant_params(2, 5, 1, 0, 2, 0), 0.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(equilibrium(constant_params(1, 1, 1, 0, 1, 0), 0.0),
                    NoPositiveEquilibrium);
}

TEST_CASE("rhs vanishes at the frozen-coefficient equilibrium") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> pick_gamma(0.5, 3.0);
    std::uniform_real_distribution<double> pick_r(1.5, 4.0);
    std::uniform_real_distribution<double> pick_b(0.2, 1.2);
    std::uniform_real_distribution<double> pick_K(0.5, 5.0);
    for (int i = 0; i < 200; ++i) {
        const auto p = constant_params(pick_gamma(rng), pick_r(rng), pick_b(rng),
                                       0.0, pick_K(rng), 0.3);
        const double star = equilibrium(p, 0.0);
        CHECK(std::abs(rhs(p, 0.0, star, star)) <= 1e-12);
    }
}

TEST_CASE("effective loss rate is eta minus lambda") {
    ModelParams p = constant_params(1, 2, 1, 0, 1, 0);
    p.lam = CoefficientFunction::seasonal_pulse(0.5, 0.25, 0.25);
    CHECK(p.b(0.375) == doctest::Approx(0.5));
    CHECK(p.b(0.1) == doctest::Approx(1.0));
}

TEST_CASE("history returns phi before 0 and N0 at 0") {
    History h;
    h.phi = CoefficientFunction::constant(0.7);
    h.N0 = 1.3;
    CHECK(h(-3.0) == 0.7);
    CHECK(h(0.0) == 1.3);
}
