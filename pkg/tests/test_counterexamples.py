"""Points where stated inequalities fail, confirmed against mpmath.

The default grids stay clear of these regions; the checks here make sure the
registry reports them as violations rather than hiding them.
"""
import math

import mpmath as mp
import pytest

from besselprod.bounds import Verdict, check_inequality, lower_bound, upper_bound
from besselprod.verify import Axis, SweepGrid, sweep

from conftest import mp_p


@pytest.mark.parametrize("nu,x", [(0.25, 0.1), (0.1, 0.01), (0.4, 1e-3)])
def test_l1_fails_below_half(nu, x):
    want = mp.gamma(nu) / (2 * mp.mpf(x) ** nu) * (mp.besseli(nu, 2 * x) - mp.struvel(nu, 2 * x))
    assert mp_p(nu, x) < float(want)
    assert lower_bound("L1", nu, x) == pytest.approx(float(want), rel=1e-9)
    assert check_inequality("L1", nu, x=x).verdict is Verdict.VIOLATED


@pytest.mark.parametrize("nu,x", [(0.25, 0.1), (0.1, 0.01)])
def test_l2_fails_below_half(nu, x):
    want = 1 / (2 * nu) - 2 * x * mp.gamma(nu) / (mp.sqrt(mp.pi) * (1 + 2 * nu) * mp.gamma(nu + 0.5))
    assert mp_p(nu, x) < float(want)
    assert check_inequality("L2", nu, x=x).verdict is Verdict.VIOLATED


def test_l1_l2_hold_from_half():
    rep = sweep("L1", SweepGrid(Axis.of([0.5, 0.6, 1.0]), Axis.range(1e-3, 10, 12, "log")))
    assert rep.n_violated == 0
    rep = sweep("L2", SweepGrid(Axis.of([0.5, 0.6, 1.0]), Axis.range(1e-3, 10, 12, "log")))
    assert rep.n_violated == 0


@pytest.mark.parametrize("x", [0.01, 0.05, 0.1])
def test_u3_fails_for_negative_equal_orders(x):
    p = mp_p(-0.4, x)
    assert p > upper_bound("U3", -0.4, -0.4, x)
    assert check_inequality("U3", -0.4, -0.4, x).verdict is Verdict.VIOLATED


def test_u3_counterexample_magnitude():
    assert mp_p(-0.4, 0.01) == pytest.approx(50.38, abs=0.01)
    assert upper_bound("U3", -0.4, -0.4, 0.01) == pytest.approx(12.18, abs=0.01)
