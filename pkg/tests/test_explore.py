import json
import math
import time

import pytest

from besselprod import explore
from besselprod.bounds import q_ratio
from besselprod.errors import BracketError, DomainError, UsageError
from besselprod.explore import Bracket, find_nu_circ, find_nu_star, maximize_q, max_excess, min_slope


def test_maximize_zero_order_small_xmin():
    assert maximize_q(0, 1e-8, 1).q_star >= 0.95


def test_maximize_endpoint_for_large_order():
    r = maximize_q(1, 1e-6, 1)
    assert r.x_star == 1.0
    assert r.q_star == pytest.approx(0.340174, abs=1e-6)


def test_maximize_interior_below_threshold():
    r = maximize_q(0.15, 1e-6, 1)
    assert r.x_star < 1 and r.q_star > q_ratio(0.15, 1)


def test_maximize_refines_scan():
    r = maximize_q(0.15, 1e-6, 1)
    for dx in (0.99, 1.01):
        assert q_ratio(0.15, r.x_star * dx) <= r.q_star


def test_limits():
    assert explore.q_limit_at_zero(0) == 1
    assert explore.q_limit_at_zero(0.3) == 0
    assert math.isinf(explore.q_limit_at_zero(-0.3))
    with pytest.raises(DomainError):
        explore.q_limit_at_zero(-1)


def test_excess_and_slope_signs():
    assert max_excess(0.0) == pytest.approx(1 - q_ratio(0, 1))
    assert max_excess(0.5) == 0.0
    assert min_slope(0.0) < 0
    assert min_slope(0.5) > 0


def test_nu_star_bracket():
    t0 = time.perf_counter()
    ex = find_nu_star(0.01)
    assert time.perf_counter() - t0 < 30
    b = ex.bracket
    assert b.within(0.15, 0.25) and b.width <= 0.01
    assert max_excess(b.hi, ex.x_min) <= ex.epsilon < max_excess(b.lo, ex.x_min)


def test_nu_circ_bracket():
    ex = find_nu_circ(0.01)
    b = ex.bracket
    assert b.within(0.15, 0.25) and b.width <= 0.01
    assert min_slope(b.lo) < -ex.epsilon <= min_slope(b.hi)


def test_report_json():
    star, circ = find_nu_star(0.02), find_nu_circ(0.02)
    d = json.loads(explore.exploration_report(star, circ))
    assert set(d) == {"nu_star", "nu_circ", "comparison"}
    assert d["nu_star"]["x_min"] == star.x_min and d["nu_star"]["epsilon"] == explore.EPS_M
    assert isinstance(d["comparison"]["overlap"], bool)


def test_bad_initial_bracket():
    with pytest.raises(BracketError) as info:
        find_nu_star(0.01, bracket=(0.3, 0.4))
    assert info.value.evidence["lo"] == 0.3


def test_tolerance_validation():
    with pytest.raises(UsageError):
        find_nu_star(0.0)
    with pytest.raises(UsageError):
        find_nu_circ(0.1)


def test_bracket_validation():
    with pytest.raises(ValueError):
        Bracket(0.2, 0.1, 1.0, 0.0, "max_excess")
    with pytest.raises(ValueError):
        Bracket(0.1, 0.2, 0.0, 1.0, "max_excess")
    b = Bracket(0.1, 0.2, 1.0, 0.0, "max_excess")
    assert b.overlaps(Bracket(0.15, 0.3, 1.0, 0.0, "max_excess"))
    assert not b.overlaps(Bracket(0.25, 0.3, 1.0, 0.0, "max_excess"))


def test_xmin_env(monkeypatch):
    monkeypatch.setenv("BESSELPROD_XMIN", "1e-4")
    assert find_nu_star(0.02).x_min == 1e-4
