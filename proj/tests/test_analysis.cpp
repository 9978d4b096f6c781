#include <cmath>
#include <random>

#include <doctest.h>

#include "harvestdde/analysis.hpp"
#include "harvestdde/errors.hpp"
#include "harvestdde/integrate.hpp"

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

TEST_CASE("premise validation flags hold for a healthy constant model") {
    const auto p = constant_params(1, 2, 1, 0, 1, 0.5);
    const auto report = validate_premises(p, 10.0, 256);
    CHECK(report.all_pass());
    CHECK(report.first_failure().empty());
}

TEST_CASE("overharvesting fails the loss-rate floor") {
    auto p = constant_params(1, 2, 1, 1.5, 1, 0.5);
    const auto report = validate_premises(p, 10.0, 256);
    CHECK(!report.b_above_floor.pass);
    CHECK(report.b_above_floor.worst_value == doctest::Approx(-0.5));
    CHECK(report.first_failure() == "b(t) >= b > 0");
}

TEST_CASE("seasonal fecundity dipping below mortality fails r > b") {
    ModelParams p = constant_params(1, 2, 1.9, 0, 1, 0.5);
    p.r = CoefficientFunction::cosine(2.0, 1.0, 2.0, 0.25);
    const auto report = validate_premises(p, 1.0, 2048);
    CHECK(!report.r_above_b.pass);
    // r is minimal (r = 1 < b = 1.9) at t = 0.75
    CHECK(std::abs(report.r_above_b.worst_t - 0.75) <= 2.0 / 2048.0);
}

TEST_CASE("persistence bounds match the closed forms for constants") {
    // inner = 1, both integrals = 0.5
    const auto p = constant_params(1, 2, 1, 0, 1, 0.5);
    for (int grid_n : {2, 64, 2048}) {
        for (int quad_n : {2, 16, 64}) {
            const auto report = persistence_bounds(p, 1.0, 1.0, grid_n, quad_n);
            CHECK(std::abs(report.lower - std::exp(-0.5)) <= 1e-10);
            CHECK(std::abs(report.upper - std::exp(0.5)) <= 1e-10);
            CHECK(report.inner_inf == doctest::Approx(1.0));
            CHECK(report.inner_sup == doctest::Approx(1.0));
            CHECK(report.sup_int_b == doctest::Approx(0.5));
            CHECK(report.sup_int_rb == doctest::Approx(0.5));
        }
    }
}

TEST_CASE("zero delay pinches the bounds at the equilibrium") {
    const auto p = constant_params(1, 2, 1, 0, 1, 0.0);
    const auto report = persistence_bounds(p, 1.0, 1.0, 128, 16);
    CHECK(report.lower == 1.0);
    CHECK(report.upper == 1.0);
}

TEST_CASE("persistence bounds for the gamma = 3 constants") {
    const auto p = constant_params(3, 2, 1, 0, 7, 1.0);
    const auto report = persistence_bounds(p, 5.0, 2.0, 512, 32);
    CHECK(std::abs(report.lower - 7.0 / std::exp(1.0)) <= 1e-10);
    CHECK(std::abs(report.upper - 7.0 * std::exp(1.0)) <= 1e-10);
    CHECK(report.lower <= report.upper);
    CHECK(report.lower > 0.0);
}

TEST_CASE("bounds computation refuses r <= b and b <= 0") {
    CHECK_THROWS_AS(persistence_bounds(constant_params(1, 1, 2, 0, 1, 0.5),
                                       1.0, 1.0, 64, 8),
                    PremiseViolation);
    CHECK_THROWS_AS(persistence_bounds(constant_params(1, 2, 1, 1.5, 1, 0.5),
                                       1.0, 1.0, 64, 8),
                    PremiseViolation);
}

TEST_CASE("raising the harvest rate weakly raises the upper bound") {
    auto base = constant_params(1, 2, 1, 0, 1, 0.5);
    auto harvested = constant_params(1, 2, 1, 0.5, 1, 0.5);
    const auto report0 = persistence_bounds(base, 1.0, 1.0, 256, 32);
    const auto report1 = persistence_bounds(harvested, 1.0, 1.0, 256, 32);
    CHECK(report1.upper >= report0.upper);
}

TEST_CASE("containment verdicts") {
    const auto p = constant_params(1, 2, 1, 0, 1, 0.5);
    const auto report = persistence_bounds(p, 1.0, 1.0, 256, 32);

    History hist;
    hist.phi = CoefficientFunction::constant(1.0);
    hist.N0 = 1.0;
    IntegrationConfig cfg;
    cfg.h = 1.0 / 64.0;
    cfg.t_end = 20.0;
    const Trajectory eq = integrate(p, hist, cfg);
    CHECK(verify_bounds(eq, report, 1e-6).pass);

    // a constant trajectory at 2 sits above the upper bound everywhere
    BoundsReport fake = report;
    const std::size_t n = eq.node_count();
    std::vector<double> values(n, 2.0), derivs(n, 0.0);
    const Trajectory flat(0.0, cfg.h, values, derivs, [](double) { return 2.0; });
    const auto verdict = verify_bounds(flat, fake, 1e-6);
    CHECK(!verdict.pass);
    CHECK(verdict.violations.size() == n);

    // pinched theta = 0 report against the equilibrium trajectory
    const auto pinched_params = constant_params(1, 2, 1, 0, 1, 0.0);
    const auto pinched = persistence_bounds(pinched_params, 1.0, 1.0, 256, 32);
    const Trajectory eq2 = integrate(pinched_params, hist, cfg);
    CHECK(verify_bounds(eq2, pinched, 1e-9).pass);
}

TEST_CASE("periodicity margins for constant coefficients") {
    auto p = constant_params(1, 2, 1, 0, 2, 0.5);
    p.period = 1.0;
    const auto report = theorem2_margins(p, 512);
    CHECK(report.m == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(report.M == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(report.B - std::log(2.0)) <= 1e-12);
    CHECK(report.condition == PeriodicityCondition::B1_HOLDS);

    auto q = constant_params(1, 1.5, 1, 0, 1, 0.5);
    q.period = 1.0;
    const auto low = theorem2_margins(q, 512);
    CHECK(low.m == doctest::Approx(0.5));
    CHECK(low.M == doctest::Approx(0.5));
    CHECK(low.condition == PeriodicityCondition::B2_HOLDS);
}

TEST_CASE("periodicity margins with an oscillating carrying capacity") {
    auto p = constant_params(1, 2, 1, 0, 1, 0.5);
    p.K = CoefficientFunction::cosine(1.0, 0.5, 2.0, 0.75);
    p.period = 1.0;
    const auto report = theorem2_margins(p, 2048);
    CHECK(report.m == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.M == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(report.condition == PeriodicityCondition::NEITHER);
    CHECK(report.m <= report.M);
    CHECK((report.B > 0.0) == (report.M > 1.0));
}

TEST_CASE("margin extrema are monotone under grid doubling") {
    auto p = constant_params(1.7, 2.4, 1.1, 0, 1, 0.5);
    p.K = CoefficientFunction::cosine(1.3, 0.6, 2.0, 0.37);
    p.r = CoefficientFunction::cosine(2.4, 0.8, 2.0, 0.11);
    p.period = 1.0;
    double prev_m = theorem2_margins(p, 16).m;
    double prev_M = theorem2_margins(p, 16).M;
    for (int n : {32, 64, 128, 256}) {
        const auto report = theorem2_margins(p, n);
        CHECK(report.m <= prev_m + 1e-15);
        CHECK(report.M >= prev_M - 1e-15);
        prev_m = report.m;
        prev_M = report.M;
    }
}

TEST_CASE("margins require a declared period and r > b") {
    auto p = constant_params(1, 2, 1, 0, 2, 0.5);
    CHECK_THROWS_AS(theorem2_margins(p, 64), PremiseViolation);
    p.period = 1.0;
    p.eta = CoefficientFunction::constant(3.0);
    CHECK_THROWS_AS(theorem2_margins(p, 64), PremiseViolation);
}

TEST_CASE("trajectories stay inside their persistence envelope") {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> pick_gamma(0.5, 2.5);
    std::uniform_real_distribution<double> pick_eta(0.6, 1.4);
    std::uniform_real_distribution<double> pick_margin(0.3, 1.5);
    std::uniform_real_distribution<double> pick_K(0.5, 3.0);
    std::uniform_real_distribution<double> pick_theta(0.1, 0.9);
    std::uniform_real_distribution<double> pick_N0(0.3, 4.0);

    for (int trial = 0; trial < 6; ++trial) {
        ModelParams p;
        p.gamma = pick_gamma(rng);
        const double eta = pick_eta(rng);
        p.eta = CoefficientFunction::constant(eta);
        p.r = CoefficientFunction::constant(eta + pick_margin(rng));
        p.K = CoefficientFunction::constant(pick_K(rng));
        p.theta = CoefficientFunction::constant(pick_theta(rng));
        p.lam = (trial % 2 == 0)
                    ? CoefficientFunction::seasonal_pulse(eta - 0.2, 0.25, 0.25)
                    : CoefficientFunction::constant(0.0);
        p.period = 1.0;

        const auto premises = validate_premises(p, 1.0, 512);
        REQUIRE(premises.all_pass());
        const auto report = persistence_bounds(p, pick_N0(rng), 1.0, 2048, 64);

        History hist;
        hist.phi = CoefficientFunction::constant(report.N0);
        hist.N0 = report.N0;
        IntegrationConfig cfg;
        cfg.h = 1.0 / 64.0;
        cfg.t_end = 50.0;
        const Trajectory traj = integrate(p, hist, cfg);
        const auto verdict = verify_bounds(traj, report, 1e-6);
        CHECK(verdict.pass);
    }
}
