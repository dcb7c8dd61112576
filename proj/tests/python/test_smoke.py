"""Smoke tests for the python bindings."""

import math

import pytest

import superhedge as sh


def test_prices():
    assert sh.price_direct(2, 2) == pytest.approx(2.5, abs=1e-12)
    assert sh.price_recurrence(3, 2) == pytest.approx(26 / 9, abs=1e-12)
    assert sh.price_two_stocks(30) == pytest.approx(7.549460831033074, rel=1e-12)
    for m in range(1, 6):
        assert sh.price_direct(1, m) == pytest.approx(m, abs=1e-12)


def test_shtarkov_bound_dominates():
    for horizon in (1, 10, 50, 200):
        for assets in (2, 3, 4):
            assert sh.shtarkov_bound(horizon, assets) >= sh.price_recurrence(horizon, assets)


def test_horizon_solvers():
    exact = sh.horizon_for_tolerance(0.01, 2, method="exact")
    assert exact.horizon == 313
    assert exact.achieved_rate <= 0.01
    bound = sh.horizon_for_tolerance(0.01, 2, method="shtarkov")
    assert bound.horizon == 320
    assert sh.years_needed(0.01, 2, 252) == pytest.approx(621.02, rel=1e-3)


def test_best_crp_demon():
    rows = [[2.0, 1.0], [0.5, 1.0]] * 15
    res = sh.best_crp(sh.ReturnMatrix(rows), tol=1e-12)
    assert math.log(res.value) / 30 == pytest.approx(0.0589, abs=5e-4)
    assert res.maximizer[0] == pytest.approx(0.5, abs=1e-3)
    assert res.gap_bound <= 1e-12


def test_superhedge_dominates_hindsight_crp():
    prior = sh.prior_cover_ordentlich(4, 2)
    assert prior.scale == pytest.approx(sh.price_direct(4, 2), rel=1e-12)
    x = sh.ReturnMatrix([[1.3, 0.8], [0.6, 1.4], [2.0, 0.9], [1.1, 1.1]])
    assert prior.scale * prior.wealth(x) >= sh.cover_derivative(x) - 1e-9
    theta0 = prior.portfolio([])
    assert sum(theta0) == pytest.approx(1.0, abs=1e-12)


def test_co_prior_portfolio_worked_example():
    prior = sh.prior_cover_ordentlich(2, 2)
    assert prior.portfolio([[2.0, 1.0]]) == pytest.approx([0.6, 0.4], abs=1e-12)


def test_nature_probabilities():
    probs = sh.nature_probabilities(2, 2)
    assert probs == pytest.approx([0.4, 0.1, 0.1, 0.4], abs=1e-12)
    assert sum(probs) == pytest.approx(1.0, abs=1e-14)


def test_backtest_regret_bound():
    rows = [[2.0, 1.0], [0.5, 1.0]] * 10
    out = sh.run_backtest(sh.ReturnMatrix(rows), prior="co")
    assert len(out["rows"]) == 20
    for row in out["rows"]:
        assert row["regret_nats"] <= row["bound_nats"] + 1e-9
    assert out["summary"]["final_regret_nats"] <= out["summary"]["bound_nats"] + 1e-9


def test_lookback_benchmarks():
    x = sh.ReturnMatrix([[2.0, 1.0], [0.5, 1.0]])
    assert sh.perfect_trader(x) == pytest.approx(2.0)
    assert sh.perfect_buy_and_hold(x) == pytest.approx(1.0)
    assert sh.cover_vertex_value([2, 1], 3) == pytest.approx(4 / 27, abs=1e-14)
    assert sh.best_single_trade([1.0, 3.0, 2.0]) == pytest.approx(2.0)


def test_returns_from_prices_and_errors():
    r = sh.returns_from_prices([100.0], [[110.0]])
    assert r.row(0) == pytest.approx([1.1])
    with pytest.raises(ValueError):
        sh.returns_from_prices([0.0], [[1.0]])
    with pytest.raises(RuntimeError):
        sh.price_direct(2000, 6)  # enumeration budget
