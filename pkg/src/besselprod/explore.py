"""Numerical brackets for the threshold orders nu* and nu°.

nu* is the smallest order with ``q_nu(x) <= q_nu(1)`` on (0, 1]; it is located
through the excess ``m(nu) = max_{[x_min, 1]} q_nu - q_nu(1)`` (never negative)
falling to a threshold ``eps_m``. nu° is the smallest order for which
``q_nu`` is increasing on (0, 1]; it is located through the most negative
forward difference ``s(nu)`` of ``q_nu`` on a fixed scan, rising to ``-eps_s``.

Both brackets therefore depend on x_min, the scan and the thresholds, and are
reported together with them.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .bounds import q_ratio
from .errors import BracketError, DomainError, UsageError
from .verify import default_x_min

SCAN_POINTS = 1000
EPS_M = 1e-9
EPS_S = 1e-12
INITIAL_BRACKET = (0.15, 0.25)


class QMax(NamedTuple):
    x_star: float
    q_star: float


def scan_grid(x_min: float, x_max: float, n: int = SCAN_POINTS) -> np.ndarray:
    """Hybrid scan: half log-spaced, half linear, merged and sorted (n points)."""
    if not (0.0 < x_min < x_max):
        raise UsageError(f"need 0 < x_min < x_max, got {x_min}, {x_max}")
    n_log = n // 2
    pts = np.concatenate([np.geomspace(x_min, x_max, n_log), np.linspace(x_min, x_max, n - n_log + 2)[1:-1]])
    pts = np.unique(pts)
    pts[0], pts[-1] = x_min, x_max
    return pts


def q_limit_at_zero(nu: float) -> float:
    """``lim_{x -> 0} q_nu(x)``: 1 at nu = 0, 0 for nu > 0, unbounded for -1 < nu < 0."""
    if not nu > -1.0:
        raise DomainError(f"q_nu needs nu > -1, got {nu}")
    if nu == 0.0:
        return 1.0
    return 0.0 if nu > 0.0 else math.inf


def maximize_q(nu: float, x_min: float, x_max: float, n_scan: int = SCAN_POINTS) -> QMax:
    """Global maximum of q_nu on [x_min, x_max]: dense scan, then golden-section
    refinement (in ln x) around the best scan point."""
    if not nu > -1.0:
        raise DomainError(f"q_nu needs nu > -1, got {nu}")
    xs = scan_grid(x_min, x_max, n_scan)
    qs = np.array([q_ratio(nu, float(x)) for x in xs])
    i = int(np.argmax(qs))
    if i == 0 or i == len(xs) - 1:
        return QMax(float(xs[i]), float(qs[i]))
    a, b, c = math.log(xs[i - 1]), math.log(xs[i]), math.log(xs[i + 1])
    res = minimize_scalar(lambda t: -q_ratio(nu, math.exp(t)), bracket=(a, b, c), method="golden",
                          options={"xtol": 1e-10})
    t = min(max(float(res.x), a), c)
    q = q_ratio(nu, math.exp(t))
    if q >= qs[i]:
        return QMax(math.exp(t), q)
    return QMax(float(xs[i]), float(qs[i]))


def max_excess(nu: float, x_min: Optional[float] = None) -> float:
    """m(nu) = sup over (0, 1] of q_nu minus q_nu(1).

    The supremum is the scanned maximum on [x_min, 1], raised to the analytic
    limit at x -> 0 where that is larger (nu = 0 gives 1).
    """
    x_min = default_x_min() if x_min is None else x_min
    sup = max(maximize_q(nu, x_min, 1.0).q_star, q_limit_at_zero(nu))
    return sup - q_ratio(nu, 1.0)


def min_slope(nu: float, x_min: Optional[float] = None, n_scan: int = SCAN_POINTS) -> float:
    """s(nu) = smallest forward difference of q_nu over the scan of (x_min, 1]."""
    x_min = default_x_min() if x_min is None else x_min
    xs = scan_grid(x_min, 1.0, n_scan)
    qs = np.array([q_ratio(nu, float(x)) for x in xs])
    return float(np.min(np.diff(qs)))


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    evidence_lo: float
    evidence_hi: float
    criterion: str  # "max_excess" or "min_slope"
    threshold: float = 0.0

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got {self.lo}, {self.hi}")
        if self.criterion == "max_excess":
            ok = self.evidence_lo > self.threshold >= self.evidence_hi
        elif self.criterion == "min_slope":
            ok = self.evidence_lo < -self.threshold <= self.evidence_hi
        else:
            raise ValueError(f"unknown criterion {self.criterion!r}")
        if not ok:
            raise ValueError("bracket evidence does not straddle the threshold")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def within(self, lo: float, hi: float) -> bool:
        return lo < self.lo and self.hi < hi

    def overlaps(self, other: "Bracket") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


@dataclass
class Exploration:
    criterion: str
    bracket: Bracket
    tol: float
    x_min: float
    epsilon: float
    evidence: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "bracket": [self.bracket.lo, self.bracket.hi],
            "tol": self.tol,
            "x_min": self.x_min,
            "epsilon": self.epsilon,
            "evidence": {"lo": self.bracket.evidence_lo, "hi": self.bracket.evidence_hi, **self.evidence},
            "wall_time": self.wall_time,
        }


def _bisect(fn: Callable[[float], float], passes: Callable[[float], bool], lo: float, hi: float,
            tol: float, label: str, criterion: str, threshold: float):
    f_lo, f_hi = fn(lo), fn(hi)
    if passes(f_lo) or not passes(f_hi):
        raise BracketError(
            f"initial bracket ({lo}, {hi}) for {label} fails its sign conditions "
            f"({criterion}: {f_lo!r} at {lo}, {f_hi!r} at {hi}, threshold {threshold:g})",
            evidence={"lo": lo, "hi": hi, "value_lo": f_lo, "value_hi": f_hi})
    steps = []
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        steps.append((mid, f_mid))
        if passes(f_mid):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return Bracket(lo, hi, f_lo, f_hi, criterion, threshold), steps


def _check_tol(tol):
    if not (0.0 < tol <= 0.05):
        raise UsageError(f"tol must lie in (0, 0.05], got {tol}")


def find_nu_star(tol: float = 0.01, x_min: Optional[float] = None, eps_m: float = EPS_M,
                 bracket: tuple = INITIAL_BRACKET) -> Exploration:
    """Bracket the smallest order with m(nu) <= eps_m, by bisection from ``bracket``."""
    _check_tol(tol)
    x_min = default_x_min() if x_min is None else x_min
    t0 = time.perf_counter()
    br, steps = _bisect(lambda nu: max_excess(nu, x_min), lambda m: m <= eps_m, *bracket, tol,
                        "nu*", "max_excess", eps_m)
    return Exploration("max_excess", br, tol, x_min, eps_m, {"steps": [list(s) for s in steps]},
                       time.perf_counter() - t0)


def find_nu_circ(tol: float = 0.01, x_min: Optional[float] = None, eps_s: float = EPS_S,
                 bracket: tuple = INITIAL_BRACKET) -> Exploration:
    """Bracket the smallest order with s(nu) >= -eps_s, by bisection from ``bracket``."""
    _check_tol(tol)
    x_min = default_x_min() if x_min is None else x_min
    t0 = time.perf_counter()
    br, steps = _bisect(lambda nu: min_slope(nu, x_min), lambda s: s >= -eps_s, *bracket, tol,
                        "nu_circ", "min_slope", eps_s)
    return Exploration("min_slope", br, tol, x_min, eps_s, {"steps": [list(s) for s in steps]},
                       time.perf_counter() - t0)


def compare(star: Exploration, circ: Exploration) -> dict:
    """Whether the two brackets overlap; reported, never asserted."""
    a, b = star.bracket, circ.bracket
    return {
        "nu_star": [a.lo, a.hi],
        "nu_circ": [b.lo, b.hi],
        "overlap": a.overlaps(b),
        "ordering_consistent": a.lo <= b.hi,
    }


def exploration_report(star: Optional[Exploration] = None, circ: Optional[Exploration] = None) -> str:
    out = {}
    if star is not None:
        out["nu_star"] = star.to_dict()
    if circ is not None:
        out["nu_circ"] = circ.to_dict()
    if star is not None and circ is not None:
        out["comparison"] = compare(star, circ)
    return json.dumps(out, indent=2)


