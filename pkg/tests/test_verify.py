import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from besselprod import verify
from besselprod.bounds import InequalityId, Verdict
from besselprod.errors import DomainError, UsageError
from besselprod.verify import (CSV_HEADER, Axis, SweepGrid, SweepReport, check_logconvex_order,
                               check_monotone_fd, crosscheck_oracles, load_default_grids,
                               records_from_csv, records_to_csv, sweep)


def log_axis(a, b, n):
    return Axis.range(a, b, n, "log")


class TestGrids:
    def test_axis_range_endpoints(self):
        pts = log_axis(1e-4, 1, 100).points()
        assert len(pts) == 100 and pts[0] == 1e-4 and pts[-1] == 1.0

    def test_axis_errors(self):
        with pytest.raises(UsageError):
            Axis.range(1, 0, 5)
        with pytest.raises(UsageError):
            Axis.range(-1, 1, 5, "log")
        with pytest.raises(UsageError):
            Axis.of([])

    def test_grid_roundtrip(self):
        g = SweepGrid(Axis.of([0, 1]), log_axis(0.1, 10, 5), Axis.range(1, 2, 3))
        assert SweepGrid.from_dict(json.loads(json.dumps(g.to_dict()))) == g
        assert len(g) == 30 == len(g.points())

    def test_x_min_token(self, monkeypatch):
        monkeypatch.setenv("BESSELPROD_XMIN", "1e-3")
        a = Axis.from_dict({"start": "x_min", "stop": 1, "count": 3, "spacing": "log"})
        assert a.points()[0] == 1e-3

    def test_default_x_min(self, monkeypatch, no_xmin_env):
        assert verify.default_x_min() == 1e-6
        monkeypatch.setenv("BESSELPROD_XMIN", "abc")
        with pytest.raises(UsageError):
            verify.default_x_min()

    def test_default_grids_cover_registry(self):
        grids = load_default_grids()
        assert set(grids) == set(InequalityId)


class TestSweep:
    def test_t1_zero_order(self):
        rep = sweep("T1", SweepGrid(Axis.of([0.0]), log_axis(1e-4, 1, 100)))
        assert rep.n_violated == 0 and rep.n_points == 100

    def test_tk_orders(self):
        rep = sweep("TK", SweepGrid(Axis.range(-2, 2, 9), log_axis(0.1, 10, 20)))
        assert rep.n_violated == 0 and rep.n_holds == 180

    def test_u1_skips_off_domain(self):
        rep = sweep("U1", SweepGrid(Axis.of([1.0]), Axis.of([0.5, 3.0]), Axis.of([0.5, 1.0, 2.0])))
        assert rep.n_skipped_domain == 4 and rep.n_holds == 2

    def test_empty_grid_rejected(self):
        class Empty(SweepGrid):
            def points(self):
                return []
        with pytest.raises(UsageError):
            sweep("T2", Empty(Axis.of([1.0]), Axis.of([1.0])))

    def test_deterministic(self):
        g = SweepGrid(Axis.of([0.5, 2.0]), log_axis(0.01, 100, 7))
        a, b = sweep("T2", g), sweep("T2", g)
        a.wall_time = b.wall_time = 0.0
        assert a.to_json() == b.to_json()

    def test_json_roundtrip(self):
        rep = sweep("TI", SweepGrid(Axis.of([-0.5, 1.0]), log_axis(0.01, 10, 6)))
        again = SweepReport.from_json(rep.to_json())
        # NaN fields (mu) never compare equal, so compare the encoded forms
        assert again.to_dict() == rep.to_dict()
        assert [r.lhs for r in again.records] == [r.lhs for r in rep.records]

    def test_json_roundtrip_with_nan(self):
        rep = sweep("T2", SweepGrid(Axis.of([1.0]), Axis.of([2.0])))
        assert math.isnan(rep.records[0].mu)
        text = rep.to_json()
        assert "NaN" not in text
        assert math.isnan(SweepReport.from_json(text).records[0].mu)

    def test_csv(self, tmp_path):
        rep = sweep("U3", SweepGrid(Axis.of([0.5]), log_axis(0.01, 10, 5), Axis.of([1.0, 2.0])))
        path = tmp_path / "r.csv"
        path.write_text(rep.to_csv())
        text = path.read_text()
        assert text.splitlines()[0] == ",".join(CSV_HEADER) == "id,nu,mu,x,lhs,rhs,margin,verdict"
        back = records_from_csv(text)
        assert len(back) == len(rep.records)
        for a, b in zip(back, rep.records):
            assert (a.id, a.verdict) == (b.id, b.verdict)
            for f in ("nu", "mu", "x", "lhs", "rhs", "margin"):
                assert getattr(a, f) == pytest.approx(getattr(b, f), rel=1e-14)

    def test_csv_bad_header(self):
        with pytest.raises(UsageError):
            records_from_csv("a,b\n1,2\n")


class TestMonotone:
    def test_f_increasing(self):
        assert check_monotone_fd("f_nu", 0, (1e-4, 10), 200, "increasing").verdict is Verdict.HOLDS

    def test_q_decreasing_after_one(self):
        assert check_monotone_fd("q_nu", 0, (1, 50), 100, "decreasing").verdict is Verdict.HOLDS

    def test_q_increasing_before_one(self):
        assert check_monotone_fd("q_nu", 0.5, (1e-3, 1), 200, "increasing").verdict is Verdict.HOLDS

    def test_q_zero_order_not_increasing(self):
        assert check_monotone_fd("q_nu", 0.0, (1e-3, 1), 200, "increasing").verdict is Verdict.VIOLATED

    def test_g_increasing(self):
        assert check_monotone_fd("g_nu", 1.0, (0.05, 50), 120, "increasing").verdict is Verdict.HOLDS

    def test_order_monotone(self):
        r = check_monotone_fd("P_in_order", 0.0, (0.0, 5), 60, "decreasing", x=1.0)
        assert r.verdict is Verdict.HOLDS

    def test_order_not_monotone_below_zero(self):
        r = check_monotone_fd("P_in_order", 0.0, (-0.5, 0.0), 20, "decreasing", x=1.0)
        assert r.verdict is Verdict.VIOLATED

    def test_errors(self):
        with pytest.raises(UsageError):
            check_monotone_fd("nope", 0, (1, 2), 10, "increasing")
        with pytest.raises(UsageError):
            check_monotone_fd("f_nu", 0, (2, 1), 10, "increasing")
        with pytest.raises(DomainError):
            check_monotone_fd("f_nu", 0, (0, 1), 10, "increasing")
        with pytest.raises(UsageError):
            check_monotone_fd("f_nu", 0, (1, 2), 10, "sideways")


class TestLogConvex:
    GRID = [round(-0.4 + 0.1 * k, 10) for k in range(55)]

    @pytest.mark.parametrize("x", [1.0, 10.0])
    def test_holds(self, x):
        r = check_logconvex_order(x, self.GRID)
        assert r.verdict is Verdict.HOLDS
        assert r.min_second_difference > -1e-10
        assert r.n_turan > 0 and r.max_turan_ratio < 0

    def test_too_short(self):
        with pytest.raises(UsageError):
            check_logconvex_order(1, [0.0, 0.1])

    def test_nonuniform(self):
        with pytest.raises(UsageError):
            check_logconvex_order(1, [0.0, 0.1, 0.3])

    def test_domain(self):
        with pytest.raises(DomainError):
            check_logconvex_order(1, [-0.5, -0.4, -0.3])


class TestCrosscheck:
    def test_int2_grid(self):
        g = SweepGrid(Axis.of([0, 0.5, 1, 2, 5]), log_axis(1e-2, 50, 25))
        rep = crosscheck_oracles(g, 1e-7)
        assert rep.verdict is Verdict.HOLDS and rep.n_pass == 125

    def test_int1_point(self):
        rep = crosscheck_oracles(SweepGrid(Axis.of([0.0]), Axis.of([1.0]), Axis.of([1.0])), 1e-6, oracle="int1")
        assert rep.n_pass == 1 and rep.verdict is Verdict.HOLDS

    def test_int2_skips_invalid_order(self):
        rep = crosscheck_oracles(SweepGrid(Axis.of([-0.5, 1.0]), Axis.of([1.0])), 1e-7)
        assert rep.n_skipped_domain == 1 and rep.n_pass == 1

    def test_unknown_oracle(self):
        with pytest.raises(UsageError):
            crosscheck_oracles(SweepGrid(Axis.of([1.0]), Axis.of([1.0])), 1e-7, oracle="int3")


@given(st.floats(0.5, 30.0), st.floats(1e-3, 500.0))
@settings(max_examples=80, deadline=None)
def test_tail_bound_property(nu, x):
    assert sweep("T2", SweepGrid(Axis.of([nu]), Axis.of([x]))).n_violated == 0


@given(st.floats(-0.45, 8.0), st.floats(1e-3, 100.0))
@settings(max_examples=80, deadline=None)
def test_turan_i_property(nu, x):
    rep = sweep("TI", SweepGrid(Axis.of([nu]), Axis.of([x])))
    assert rep.n_violated == 0 and rep.n_indeterminate == 0
