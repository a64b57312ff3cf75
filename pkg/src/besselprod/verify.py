"""Grid sweeps, finite-difference monotonicity, order log-convexity and oracle cross-checks."""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional, Sequence

import numpy as np

from . import bounds
from .bounds import UNUSED, BoundRecord, Est, InequalityId, Verdict
from .errors import BesselProdError, ConvergenceError, DomainError, UsageError
from .quadrature import INT1_TRUSTED_GAP, oracle_int1, oracle_int2
from .specfun import product_ik

CSV_HEADER = ("id", "nu", "mu", "x", "lhs", "rhs", "margin", "verdict")
DEFAULT_X_MIN = 1e-6
XMIN_ENV = "BESSELPROD_XMIN"
MONOTONE_SLACK = 1e-13


def default_x_min() -> float:
    """Open-endpoint sampling start; ``BESSELPROD_XMIN`` overrides 1e-6."""
    raw = os.environ.get(XMIN_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_X_MIN
    try:
        v = float(raw)
    except ValueError:
        raise UsageError(f"{XMIN_ENV} must be a positive number, got {raw!r}") from None
    if not (v > 0.0 and math.isfinite(v)):
        raise UsageError(f"{XMIN_ENV} must be a positive number, got {raw!r}")
    return v


# ---------------------------------------------------------------------- grids

@dataclass(frozen=True)
class Axis:
    """Either explicit ``values`` or a ``start``/``stop``/``count`` range."""

    values: Optional[tuple] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    count: int = 0
    spacing: str = "linear"

    def __post_init__(self):
        if self.values is not None:
            if len(self.values) < 1:
                raise UsageError("axis needs at least one value")
            object.__setattr__(self, "values", tuple(float(v) for v in self.values))
            return
        if self.start is None or self.stop is None:
            raise UsageError("range axis needs start and stop")
        if self.count < 1:
            raise UsageError(f"axis count must be >= 1, got {self.count}")
        if self.spacing not in ("linear", "log"):
            raise UsageError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.count > 1 and not self.start < self.stop:
            raise UsageError(f"range needs start < stop, got {self.start} .. {self.stop}")
        if self.spacing == "log" and not (self.start > 0 and self.stop > 0):
            raise UsageError("log spacing needs positive endpoints")

    @classmethod
    def of(cls, values: Iterable[float]) -> "Axis":
        return cls(values=tuple(values))

    @classmethod
    def range(cls, start, stop, count, spacing="linear") -> "Axis":
        return cls(start=float(start), stop=float(stop), count=int(count), spacing=spacing)

    def points(self) -> list:
        if self.values is not None:
            return list(self.values)
        if self.count == 1:
            return [float(self.start)]
        if self.spacing == "log":
            pts = np.logspace(math.log10(self.start), math.log10(self.stop), self.count)
        else:
            pts = np.linspace(self.start, self.stop, self.count)
        pts = [float(p) for p in pts]
        pts[0], pts[-1] = float(self.start), float(self.stop)
        return pts

    def to_dict(self) -> dict:
        if self.values is not None:
            return {"values": list(self.values)}
        return {"start": self.start, "stop": self.stop, "count": self.count, "spacing": self.spacing}

    @classmethod
    def from_dict(cls, d, x_min: Optional[float] = None) -> "Axis":
        if isinstance(d, (list, tuple)):
            return cls.of(d)
        if "values" in d:
            return cls.of(d["values"])

        def num(v):
            if v == "x_min":
                return default_x_min() if x_min is None else x_min
            return float(v)

        return cls.range(num(d["start"]), num(d["stop"]), int(d["count"]), d.get("spacing", "linear"))


@dataclass(frozen=True)
class SweepGrid:
    nu_axis: Axis
    x_axis: Axis
    mu_axis: Optional[Axis] = None

    def points(self) -> list:
        nus = self.nu_axis.points()
        xs = self.x_axis.points()
        mus = self.mu_axis.points() if self.mu_axis is not None else [UNUSED]
        return [(nu, mu, x) for nu, mu, x in itertools.product(nus, mus, xs)]

    def __len__(self):
        n = len(self.nu_axis.points()) * len(self.x_axis.points())
        return n * (len(self.mu_axis.points()) if self.mu_axis is not None else 1)

    def to_dict(self) -> dict:
        d = {"nu_axis": self.nu_axis.to_dict(), "x_axis": self.x_axis.to_dict()}
        if self.mu_axis is not None:
            d["mu_axis"] = self.mu_axis.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict, x_min: Optional[float] = None) -> "SweepGrid":
        mu = d.get("mu_axis")
        return cls(Axis.from_dict(d["nu_axis"], x_min), Axis.from_dict(d["x_axis"], x_min),
                   Axis.from_dict(mu, x_min) if mu is not None else None)


def load_default_grids(x_min: Optional[float] = None) -> dict:
    """The shipped default grid for every inequality id."""
    text = resources.files("besselprod.data").joinpath("default_grids.json").read_text()
    raw = json.loads(text)
    return {InequalityId(k): SweepGrid.from_dict(v, x_min) for k, v in raw["grids"].items()}


# --------------------------------------------------------------------- sweeps

@dataclass
class SweepReport:
    id: InequalityId
    records: list
    n_holds: int
    n_violated: int
    n_indeterminate: int
    n_skipped_domain: int
    min_margin: float
    argmin: Optional[tuple]
    wall_time: float = 0.0

    @property
    def n_points(self) -> int:
        return self.n_holds + self.n_violated + self.n_indeterminate + self.n_skipped_domain

    @property
    def worst_verdict(self) -> Verdict:
        if self.n_violated:
            return Verdict.VIOLATED
        if self.n_indeterminate:
            return Verdict.INDETERMINATE
        return Verdict.HOLDS

    def to_dict(self) -> dict:
        return {
            "id": self.id.value,
            "records": [{k: _json_num(v) for k, v in r.to_dict().items()} for r in self.records],
            "n_holds": self.n_holds,
            "n_violated": self.n_violated,
            "n_indeterminate": self.n_indeterminate,
            "n_skipped_domain": self.n_skipped_domain,
            "min_margin": _json_num(self.min_margin),
            "argmin": [_json_num(a) for a in self.argmin] if self.argmin is not None else None,
            "wall_time": self.wall_time,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepReport":
        recs = [BoundRecord.from_dict({k: _from_json_num(v) if k in _NUM_FIELDS else v
                                       for k, v in r.items()}) for r in d["records"]]
        argmin = d.get("argmin")
        return cls(InequalityId(d["id"]), recs, d["n_holds"], d["n_violated"], d["n_indeterminate"],
                   d["n_skipped_domain"], _from_json_num(d["min_margin"]),
                   tuple(_from_json_num(a) for a in argmin) if argmin is not None else None,
                   d.get("wall_time", 0.0))

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text: str) -> "SweepReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        return records_to_csv(self.records)


_NUM_FIELDS = ("nu", "mu", "x", "lhs", "rhs", "margin", "err")


def _json_num(v):
    # JSON has no NaN/inf; encode them as strings so the output stays strict
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _from_json_num(v):
    if isinstance(v, str):
        return float(v)
    return v


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".15g")
    return str(v)


def records_to_csv(records: Sequence[BoundRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([r.id.value, _fmt(r.nu), _fmt(r.mu), _fmt(r.x), _fmt(r.lhs), _fmt(r.rhs),
                    _fmt(r.margin), r.verdict.value])
    return buf.getvalue()


def records_from_csv(text: str) -> list:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise UsageError("CSV header does not match " + ",".join(CSV_HEADER))
    out = []
    for row in rows[1:]:
        d = dict(zip(CSV_HEADER, row))
        out.append(BoundRecord(InequalityId(d["id"]), float(d["nu"]), float(d["mu"]), float(d["x"]),
                               float(d["lhs"]), float(d["rhs"]), float(d["margin"]), Verdict(d["verdict"])))
    return out


def summarise(ident: InequalityId, records: list, n_skipped: int, wall_time: float = 0.0) -> SweepReport:
    counts = {v: 0 for v in Verdict}
    min_margin = math.inf
    argmin = None
    for r in records:
        counts[r.verdict] += 1
        if not math.isnan(r.margin) and r.margin < min_margin:
            min_margin = r.margin
            argmin = (r.nu, r.mu, r.x)
    return SweepReport(ident, records, counts[Verdict.HOLDS], counts[Verdict.VIOLATED],
                       counts[Verdict.INDETERMINATE], n_skipped,
                       min_margin if argmin is not None else math.nan, argmin, wall_time)


def sweep(id, grid: SweepGrid) -> SweepReport:
    """Check ``id`` at every grid point; off-domain points are counted as skipped."""
    ident = InequalityId(id)
    pts = grid.points()
    if not pts:
        raise UsageError("empty grid")
    t0 = time.perf_counter()
    records = []
    skipped = 0
    for nu, mu, x in pts:
        try:
            records.append(bounds.check_inequality(ident, nu, mu, x))
        except DomainError:
            skipped += 1
    return summarise(ident, records, skipped, time.perf_counter() - t0)


# ---------------------------------------------------------------- monotonicity

MONOTONE_TARGETS = ("f_nu", "q_nu", "g_nu", "logderiv_I", "P_in_order")


@dataclass
class MonotoneReport:
    target: str
    nu: float
    interval: tuple
    n: int
    direction: str
    verdict: Verdict
    worst_difference: float  # smallest oriented difference minus its tolerance
    worst_at: tuple
    n_flat: int = 0
    x: Optional[float] = None
    points: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "target": self.target, "nu": self.nu, "x": self.x, "interval": list(self.interval),
            "n": self.n, "direction": self.direction, "verdict": self.verdict.value,
            "worst_difference": _json_num(self.worst_difference),
            "worst_at": list(self.worst_at), "n_flat": self.n_flat,
        }


def _target_fn(target: str, nu: float, x: Optional[float]):
    if target == "f_nu":
        return lambda t: bounds._f(nu, t)
    if target == "q_nu":
        return lambda t: bounds._q(nu, t)
    if target == "g_nu":
        def g(t):
            p = bounds._p(nu, t)
            return Est.const(2.0 * t) * p - 1.0 - Est.const(1.0 / (8.0 * t))
        return g
    if target == "logderiv_I":
        return lambda t: bounds._ld("I", nu, t)
    if target == "P_in_order":
        if x is None or not x > 0.0:
            raise DomainError("P_in_order needs a fixed x > 0")
        return lambda t: bounds._p(t, x)
    raise UsageError(f"unknown monotonicity target {target!r}; expected one of {MONOTONE_TARGETS}")


def _target_domain(target, nu, lo, hi):
    if target == "P_in_order":
        if not lo > -1.0:
            raise DomainError(f"P_in_order interval must lie in nu > -1, got lo = {lo}")
        return
    if not lo > 0.0:
        raise DomainError(f"{target} needs x > 0 on the whole interval, got lo = {lo}")
    if not nu > -1.0:
        raise DomainError(f"{target} needs nu > -1, got nu = {nu}")


def check_monotone_fd(target: str, nu: float, interval: tuple, n: int, direction: str,
                      x: Optional[float] = None, spacing: Optional[str] = None) -> MonotoneReport:
    """Sign test on the n-1 consecutive differences of ``target`` over ``interval``.

    For ``P_in_order`` the interval is in the order and ``x`` is fixed; otherwise
    the interval is in x at order ``nu``. Spacing defaults to logarithmic for x
    intervals spanning more than a decade and to linear otherwise.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise UsageError(f"interval needs lo < hi, got ({lo}, {hi})")
    if n < 3:
        raise UsageError(f"n must be >= 3, got {n}")
    if direction not in ("increasing", "decreasing"):
        raise UsageError(f"direction must be 'increasing' or 'decreasing', got {direction!r}")
    _target_domain(target, nu, lo, hi)
    fn = _target_fn(target, nu, x)
    if spacing is None:
        spacing = "log" if target != "P_in_order" and hi / lo > 10.0 else "linear"
    ts = Axis.range(lo, hi, n, spacing).points()
    vals = [fn(t) for t in ts]
    sign = 1.0 if direction == "increasing" else -1.0
    worst = math.inf
    worst_at = (ts[0], ts[1])
    n_flat = 0
    violated = False
    for i in range(n - 1):
        a, b = vals[i], vals[i + 1]
        d = sign * (b.v - a.v)
        tol = a.e + b.e + MONOTONE_SLACK * max(abs(a.v), abs(b.v))
        score = d - tol
        if score < worst:
            worst = score
            worst_at = (ts[i], ts[i + 1])
        if d < -tol:
            violated = True
        elif d <= tol:
            n_flat += 1
    verdict = Verdict.VIOLATED if violated else (Verdict.INDETERMINATE if n_flat else Verdict.HOLDS)
    return MonotoneReport(target, float(nu), (lo, hi), n, direction, verdict, worst, worst_at, n_flat, x,
                          [(t, v.v) for t, v in zip(ts, vals)])


# ---------------------------------------------------------------- convexity

@dataclass
class LogConvexReport:
    x: float
    nu_grid: list
    verdict: Verdict
    min_second_difference: float
    argmin: float
    n_turan: int
    max_turan_ratio: float  # max of Delta_cP / cP^2 over interior triples (should be < 0)
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "x": self.x, "nu_grid": list(self.nu_grid), "verdict": self.verdict.value,
            "min_second_difference": self.min_second_difference, "argmin": self.argmin,
            "n_turan": self.n_turan, "max_turan_ratio": _json_num(self.max_turan_ratio),
            "tolerance": self.tolerance,
        }


def check_logconvex_order(x: float, nu_grid: Sequence[float], tol: float = 1e-10) -> LogConvexReport:
    """Second central differences of nu -> ln cP_nu(x) on a uniform grid, plus the
    consequence cP_nu^2 - cP_{nu-1} cP_{nu+1} < 0 at triples on the grid."""
    grid = [float(v) for v in nu_grid]
    if len(grid) < 3:
        raise UsageError(f"nu grid needs at least 3 points, got {len(grid)}")
    steps = np.diff(grid)
    h = float(steps.mean())
    if not (steps > 0).all():
        raise UsageError("nu grid must be strictly increasing")
    if np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(h)):
        raise UsageError("nu grid must be uniformly spaced")
    if not grid[0] > -0.5:
        raise DomainError(f"all orders must exceed -1/2, got {grid[0]}")
    if not x > 0.0:
        raise DomainError(f"x > 0 required, got x = {x}")
    logs = [bounds.log_cal_p(nu, x) for nu in grid]
    worst = math.inf
    arg = grid[1]
    violated = False
    for i in range(1, len(grid) - 1):
        a, b, c = logs[i - 1], logs[i], logs[i + 1]
        sd = a.v - 2.0 * b.v + c.v
        if sd < worst:
            worst = sd
            arg = grid[i]
        if sd < -max(tol, 0.0):
            violated = True
    k = round(1.0 / h)
    n_turan = 0
    max_ratio = -math.inf
    undecided = False
    if k >= 1 and abs(k * h - 1.0) < 1e-9:
        for i in range(k, len(grid) - k):
            a, b, c = logs[i - k], logs[i], logs[i + k]
            s = a.v - 2.0 * b.v + c.v  # > 0 iff Delta_cP < 0
            err = a.e + 2.0 * b.e + c.e
            ratio = -math.expm1(s)  # Delta_cP / cP_nu^2
            n_turan += 1
            max_ratio = max(max_ratio, ratio)
            if s < -err:
                violated = True
            elif s <= err:
                undecided = True
    verdict = Verdict.VIOLATED if violated else (Verdict.INDETERMINATE if undecided else Verdict.HOLDS)
    return LogConvexReport(float(x), grid, verdict, worst, arg, n_turan, max_ratio, tol)


# ---------------------------------------------------------------- oracles

@dataclass
class CrosscheckReport:
    oracle: str
    rel_tol: float
    rows: list  # (nu, mu, x, kernel, oracle, rel_diff, status)
    n_pass: int
    n_fail: int
    n_indeterminate: int
    n_skipped_domain: int
    worst_rel: float

    @property
    def verdict(self) -> Verdict:
        if self.n_fail:
            return Verdict.VIOLATED
        if self.n_indeterminate:
            return Verdict.INDETERMINATE
        return Verdict.HOLDS

    def to_dict(self) -> dict:
        return {
            "oracle": self.oracle, "rel_tol": self.rel_tol,
            "rows": [dict(zip(("nu", "mu", "x", "kernel", "oracle", "rel_diff", "status"),
                              [_json_num(v) for v in row])) for row in self.rows],
            "n_pass": self.n_pass, "n_fail": self.n_fail, "n_indeterminate": self.n_indeterminate,
            "n_skipped_domain": self.n_skipped_domain, "worst_rel": _json_num(self.worst_rel),
        }


def crosscheck_oracles(grid: SweepGrid, rel_tol: float, oracle: str = "int2",
                       oracle_rel_tol: Optional[float] = None) -> CrosscheckReport:
    """Compare ``product_ik`` with an integral oracle at every valid grid point.

    ``int2`` compares P_nu(x) (the mu axis is ignored); ``int1`` compares
    K_nu(x) I_mu(x) and only where mu - nu >= 1/4 and mu + nu > -1.
    """
    if oracle not in ("int1", "int2"):
        raise UsageError(f"oracle must be 'int1' or 'int2', got {oracle!r}")
    q_tol = oracle_rel_tol if oracle_rel_tol is not None else min(1e-8, 0.1 * rel_tol)
    pts = grid.points()
    if not pts:
        raise UsageError("empty grid")
    if oracle == "int2":
        seen = []
        for nu, _, x in pts:
            if (nu, x) not in seen:
                seen.append((nu, x))
        pts = [(nu, UNUSED, x) for nu, x in seen]
    rows = []
    n_pass = n_fail = n_ind = n_skip = 0
    worst = 0.0
    for nu, mu, x in pts:
        if oracle == "int2":
            if not (nu > -0.5 and x > 0.0):
                n_skip += 1
                continue
        else:
            if math.isnan(mu) or not (mu - nu >= INT1_TRUSTED_GAP and mu + nu > -1.0 and x > 0.0):
                n_skip += 1
                continue
        try:
            if oracle == "int2":
                ref = product_ik(nu, nu, x).unscaled()
                val = oracle_int2(nu, x, q_tol).value
            else:
                ref = product_ik(nu, mu, x).unscaled()
                val = oracle_int1(nu, mu, x, q_tol).value
        except ConvergenceError as exc:
            n_ind += 1
            rows.append((nu, mu, x, math.nan, math.nan, math.nan, f"indeterminate: {exc}"))
            continue
        except BesselProdError as exc:
            n_ind += 1
            rows.append((nu, mu, x, math.nan, math.nan, math.nan, f"indeterminate: {exc}"))
            continue
        rel = abs(val - ref) / abs(ref)
        worst = max(worst, rel)
        ok = rel <= rel_tol
        n_pass += ok
        n_fail += not ok
        rows.append((nu, mu, x, ref, val, rel, "pass" if ok else "fail"))
    return CrosscheckReport(oracle, rel_tol, rows, n_pass, n_fail, n_ind, n_skip, worst)
