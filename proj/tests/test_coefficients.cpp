#include <cmath>
#include <random>

#include <doctest.h>

#include "harvestdde/coefficients.hpp"
#include "harvestdde/errors.hpp"

using namespace harvestdde;

TEST_CASE("cosine coefficient reproduces hand-evaluated points") {
    const auto r = CoefficientFunction::cosine(2.0, 1.0, 2.0, 0.25);
    CHECK(r(0.25) == doctest::Approx(3.0).epsilon(1e-14));   // cos(0) = 1
    CHECK(r(0.75) == doctest::Approx(1.0).epsilon(1e-14));   // cos(pi) = -1
    const auto c = CoefficientFunction::constant(5.0);
    CHECK(c(-3.0) == 5.0);
    CHECK(c(17.25) == 5.0);
}

TEST_CASE("cosine with amplitude <= base stays nonnegative") {
    const auto k = CoefficientFunction::cosine(1.0, 1.0, 2.0, 0.75);
    for (int i = 0; i <= 4000; ++i) {
        const double t = -2.0 + 8.0 * i / 4000.0;
        CHECK(k(t) >= 0.0);
    }
}

TEST_CASE("seasonal harvest window values") {
    // summer window H = 0.25 starting at t_start = 0.25
    CHECK(seasonal_harvest(0.375, 0.5, 0.25, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(seasonal_harvest(0.1, 0.5, 0.25, 0.25) == 0.0);
    CHECK(seasonal_harvest(1.375, 0.5, 0.25, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
    // closed at the window endpoints
    CHECK(seasonal_harvest(0.25, 0.5, 0.25, 0.25) == 0.0);
    CHECK(seasonal_harvest(0.5, 0.5, 0.25, 0.25) == 0.0);
}

TEST_CASE("rotational harvest opens one year per cycle") {
    CHECK(rotational_harvest(0.375, 0.5, 0.25, 0.25, 3, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rotational_harvest(1.375, 0.5, 0.25, 0.25, 3, 0) == 0.0);
    CHECK(rotational_harvest(2.375, 0.5, 0.25, 0.25, 3, 0) == 0.0);
    CHECK(rotational_harvest(3.375, 0.5, 0.25, 0.25, 3, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rotational_harvest(1.375, 0.5, 0.25, 0.25, 3, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pulse periodicity and range over random times") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> pick_t(0.0, 40.0);
    for (int i = 0; i < 10000; ++i) {
        const double t = pick_t(rng);
        const double s = seasonal_harvest(t, 0.5, 0.25, 0.25);
        CHECK(s >= 0.0);
        CHECK(s <= 0.5);
        CHECK(std::abs(seasonal_harvest(t + 1.0, 0.5, 0.25, 0.25) - s) <= 1e-12);
        const double rot = rotational_harvest(t, 0.5, 0.25, 0.25, 3, 0);
        CHECK(std::abs(rotational_harvest(t + 3.0, 0.5, 0.25, 0.25, 3, 0) - rot) <= 1e-12);
    }
}

TEST_CASE("tabulated coefficient interpolates, clamps and wraps") {
    const auto clamped = CoefficientFunction::tabulated(
        {{0.0, 1.0}, {1.0, 3.0}, {2.0, 2.0}}, TabulatedCoeff::Extension::Clamped);
    CHECK(clamped(0.5) == doctest::Approx(2.0));
    CHECK(clamped(1.5) == doctest::Approx(2.5));
    CHECK(clamped(-4.0) == 1.0);
    CHECK(clamped(9.0) == 2.0);

    const auto periodic = CoefficientFunction::tabulated(
        {{0.0, 1.0}, {0.5, 2.0}}, TabulatedCoeff::Extension::Periodic, 1.0);
    CHECK(periodic(0.25) == doctest::Approx(1.5));
    // wrap segment from (0.5, 2) back to (1, 1)
    CHECK(periodic(0.75) == doctest::Approx(1.5));
    CHECK(periodic(1.25) == doctest::Approx(1.5));
    CHECK(periodic(-0.75) == doctest::Approx(1.5));
}

TEST_CASE("coefficient construction rejects malformed inputs") {
    CHECK_THROWS_AS(CoefficientFunction::seasonal_pulse(0.5, 0.0, 0.25), ConfigError);
    CHECK_THROWS_AS(CoefficientFunction::seasonal_pulse(0.5, 0.5, 0.75), ConfigError);
    CHECK_THROWS_AS(CoefficientFunction::rotational_pulse(0.5, 0.25, 0.25, 3, 3),
                    ConfigError);
    CHECK_THROWS_AS(CoefficientFunction::rotational_pulse(0.5, 0.25, 0.25, 0, 0),
                    ConfigError);
    CHECK_THROWS_AS(CoefficientFunction::tabulated({{0.0, 1.0}, {0.0, 2.0}},
                                                   TabulatedCoeff::Extension::Clamped),
                    ConfigError);
    CHECK_THROWS_AS(CoefficientFunction::tabulated({{0.0, 1.0}, {2.0, 2.0}},
                                                   TabulatedCoeff::Extension::Periodic,
                                                   1.0),
                    ConfigError);
}
