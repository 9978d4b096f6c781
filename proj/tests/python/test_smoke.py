"""Smoke tests for the python bindings."""

import math

import pytest

import harvestdde as hd


def constant_params(gamma, r, eta, lam, K, theta, period=None):
    p = hd.ModelParams()
    p.gamma = gamma
    p.r = hd.CoefficientFunction.constant(r)
    p.eta = hd.CoefficientFunction.constant(eta)
    p.lam = hd.CoefficientFunction.constant(lam)
    p.K = hd.CoefficientFunction.constant(K)
    p.theta = hd.CoefficientFunction.constant(theta)
    p.period = period
    return p


def test_coefficients_and_schedules():
    cosine = hd.CoefficientFunction.cosine(2.0, 1.0, 2.0, 0.25)
    assert cosine(0.25) == pytest.approx(3.0)
    assert cosine(0.75) == pytest.approx(1.0)
    assert hd.seasonal_harvest(0.375, 0.5, 0.25, 0.25) == pytest.approx(0.5)
    assert hd.seasonal_harvest(0.1, 0.5, 0.25, 0.25) == 0.0
    assert hd.rotational_harvest(1.375, 0.5, 0.25, 0.25, 3, 0) == 0.0


def test_equilibrium_and_rhs():
    p = constant_params(2, 5, 1, 0, 2, 0.5)
    assert hd.equilibrium(p, 0.0) == pytest.approx(4.0)
    assert hd.rhs(p, 0.0, 0.0, 3.0) == 0.0
    with pytest.raises(hd.InvalidState):
        hd.rhs(p, 0.0, -1.0, 1.0)


def test_integration_stays_at_equilibrium():
    p = constant_params(1, 2, 1, 0, 1, 0.5)
    hist = hd.History()
    hist.phi = hd.CoefficientFunction.constant(1.0)
    hist.N0 = 1.0
    cfg = hd.IntegrationConfig()
    cfg.h = 1.0 / 64.0
    cfg.t_end = 10.0
    traj = hd.integrate(p, hist, cfg)
    assert traj.evaluate(10.0) == pytest.approx(1.0, abs=1e-10)
    values = traj.values()
    assert len(values) == traj.node_count
    assert all(v > 0 for v in values)


def test_persistence_bounds_closed_form():
    p = constant_params(1, 2, 1, 0, 1, 0.5)
    report = hd.persistence_bounds(p, 1.0, 1.0, 512, 32)
    assert report.lower == pytest.approx(math.exp(-0.5), abs=1e-10)
    assert report.upper == pytest.approx(math.exp(0.5), abs=1e-10)
    assert report.premises.all_pass()


def test_premise_flags_catch_overharvesting():
    p = constant_params(1, 2, 1, 1.5, 1, 0.5)
    premises = hd.validate_premises(p, 1.0, 256)
    assert not premises.all_pass()
    assert premises.first_failure() == "b(t) >= b > 0"
    with pytest.raises(hd.PremiseViolation):
        hd.persistence_bounds(p, 1.0, 1.0, 256, 16)


def test_margins_and_periodic_solve():
    p = constant_params(1, 2, 1, 0, 2, 0.5, period=1.0)
    margins = hd.theorem2_margins(p, 512)
    assert margins.condition == hd.PeriodicityCondition.B1_HOLDS
    assert margins.m == pytest.approx(2.0)

    cfg = hd.IntegrationConfig()
    cfg.h = 1.0 / 64.0
    cfg.t_end = 1.0
    seed = hd.HistorySegment.constant(1.0, hd.max_delay(p), 128)
    result = hd.find_periodic(p, seed, 200, 1e-8, cfg)
    assert result.converged
    assert result.residual <= 1e-8
    assert max(abs(s - 2.0) for s in result.final_segment.samples) <= 1e-7
    assert result.trajectory_one_period is not None
    csv = result.trajectory_one_period.csv()
    assert csv.startswith("t,N\n")
