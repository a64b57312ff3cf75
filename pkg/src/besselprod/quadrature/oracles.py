r"""Integral representations of Bessel products, used as independent oracles.

``oracle_int2`` evaluates

.. math:: I_\nu(x) K_\nu(x) = \frac{2 x^\nu}{\sqrt\pi\,\Gamma(\nu+1/2)}
          \int_0^1 t^\nu (1-t^2)^{\nu-1/2} K_\nu(2xt)\,dt

after t = sin(theta), and ``oracle_int1`` the oscillatory

.. math:: K_\nu(x) I_\mu(x) = \int_0^\infty J_{\mu+\nu}(2x\sinh t)\, e^{(\nu-\mu)t}\,dt

after u = 2x sinh(t), summed over the zero intervals of the J kernel with
Wynn's epsilon algorithm accelerating the alternating tail.
"""
from __future__ import annotations

import math

from ..errors import ConvergenceError, DomainError
from ..specfun.bessel_j import bessel_j
from ..specfun.modified import k_only
from ..specfun.result import EPS, EvalResult
from .rules import _adaptive_gk, tanh_sinh

INT1_TRUSTED_GAP = 0.25


def oracle_int2(nu: float, x: float, rel_tol: float = 1e-8) -> EvalResult:
    """``I_nu(x) K_nu(x)`` from the finite K-kernel representation (nu > -1/2)."""
    nu = float(nu)
    x = float(x)
    if not nu > -0.5:
        raise DomainError(f"oracle_int2 needs nu > -1/2, got nu = {nu}")
    if not x > 0.0:
        raise DomainError(f"oracle_int2 needs x > 0, got x = {x}")
    two_nu = 2.0 * nu
    lnx = math.log(x)

    def g(s, c):
        # x^nu s^nu c^(2 nu) K_nu(2 x s), kept in log form so nothing overflows
        if s <= 0.0:
            return 0.0
        m, e, _ = k_only(nu, 2.0 * x * s)
        return m * math.exp(e + nu * (lnx + math.log(s)) + two_nu * math.log(c))

    def lower(th):
        return g(math.sin(th), math.cos(th))

    def upper(ph):
        # reflected half: theta = pi/2 - phi keeps cos^(2 nu) exact near pi/2
        return g(math.cos(ph), math.sin(ph))

    tol = max(rel_tol * 0.1, 1e-15)
    q = 0.25 * math.pi
    pieces = []
    cut = min(q, 20.0 / x)
    pieces.append(tanh_sinh(lower, 0.0, cut, rel_tol=tol))
    if cut < q:
        pieces.append(tanh_sinh(lower, cut, q, rel_tol=tol, abs_tol=1e-300))
    pieces.append(tanh_sinh(upper, 0.0, q, rel_tol=tol, abs_tol=1e-300))
    val = sum(p[0] for p in pieces)
    err = sum(p[1] for p in pieces)
    pre = 2.0 / math.sqrt(math.pi) * math.exp(-math.lgamma(nu + 0.5))
    value = pre * val
    abs_err = pre * err + 16 * EPS * abs(value) * (1.0 + abs(nu * lnx))
    if abs_err > max(rel_tol * abs(value), 1e-300):
        raise ConvergenceError(
            f"oracle_int2 did not reach rel_tol {rel_tol:g} (nu={nu}, x={x})",
            best=EvalResult(value, abs_err))
    return EvalResult(value, abs_err)


def _bisect_zero(f, a, fa, b, tol):
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0 or b - a < tol * max(1.0, m):
            return m
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _j_zeros(order: float, count: int, start: float = 0.0):
    """The first ``count`` positive zeros of J_order beyond ``start``."""
    def f(u):
        return bessel_j(order, u)[0]

    # zeros of J_n are more than pi/2 apart for n > -1, so a 0.5 step cannot skip any
    step = 0.5
    zeros = []
    a = max(start, 1e-3)
    fa = f(a)
    while len(zeros) < count:
        b = a + step
        fb = f(b)
        if fb == 0.0:
            zeros.append(b)
            b += 1e-9
            fb = f(b)
        elif (fa < 0.0) != (fb < 0.0):
            zeros.append(_bisect_zero(f, a, fa, b, 1e-15))
        a, fa = b, fb
    return zeros


def _wynn(partial):
    """Wynn epsilon table on the partial sums; (best estimate, change estimate)."""
    n = len(partial)
    e0 = [0.0] * (n + 1)
    e1 = list(partial)
    estimates = []
    for k in range(1, n):
        nxt = []
        for j in range(len(e1) - 1):
            d = e1[j + 1] - e1[j]
            if d == 0.0:
                nxt.append(math.inf)
            else:
                nxt.append(e0[j + 1] + 1.0 / d)
        e0, e1 = e1, nxt
        if k % 2 == 0 and e1:
            estimates.append(e1[-1])
    estimates = [v for v in estimates if math.isfinite(v)]
    if len(estimates) < 2:
        return partial[-1], abs(partial[-1] - partial[-2])
    return estimates[-1], abs(estimates[-1] - estimates[-2])


def oracle_int1(nu: float, mu: float, x: float, rel_tol: float = 1e-8,
                max_pieces: int = 400) -> EvalResult:
    """``K_nu(x) I_mu(x)`` from the oscillatory J-kernel representation.

    Valid for mu - nu > -1/2 and mu + nu > -1; the tail acceleration is only
    vetted for mu - nu >= 1/4.
    """
    nu = float(nu)
    mu = float(mu)
    x = float(x)
    gap = mu - nu
    order = mu + nu
    if not gap > -0.5:
        raise DomainError(f"oracle_int1 needs mu - nu > -1/2, got mu - nu = {gap}")
    if not order > -1.0:
        raise DomainError(f"oracle_int1 needs mu + nu > -1, got mu + nu = {order}")
    if not x > 0.0:
        raise DomainError(f"oracle_int1 needs x > 0, got x = {x}")
    two_x = 2.0 * x
    lg = math.log(two_x)

    def weight(u):
        r = math.hypot(u, two_x)
        return math.exp(-gap * (math.log(u + r) - lg)) / r

    def f(u):
        return bessel_j(order, u)[0] * weight(u)

    tol = max(0.05 * rel_tol, 1e-14)
    zeros = _j_zeros(order, 8)
    head, head_err = tanh_sinh(f, 0.0, zeros[0], rel_tol=tol)
    # the first few zero intervals carry most of the mass; integrate them directly
    lo = zeros[0]
    for z in zeros[1:4]:
        v, e = _adaptive_gk(f, lo, z, tol, 1e-300, 200)
        head += v
        head_err += e
        lo = z
    zeros = zeros[3:]
    terms = []
    term_err = 0.0
    partial = [head]
    best = prev = head
    change = math.inf
    while len(terms) < max_pieces:
        if len(zeros) < 2:
            zeros = zeros[-1:] + _j_zeros(order, 16, zeros[-1] + 1e-6)
        a, b = zeros[0], zeros[1]
        zeros = zeros[1:]
        v, e = _adaptive_gk(f, a, b, tol, 1e-300, 200)
        terms.append(v)
        term_err += e
        partial.append(partial[-1] + v)
        if len(partial) >= 12:
            best, change = _wynn(partial[-24:])
            scale = abs(best)
            if change <= tol * scale and abs(best - prev) <= tol * scale:
                break
            prev = best
    else:
        raise ConvergenceError(
            f"oracle_int1 tail acceleration stalled (nu={nu}, mu={mu}, x={x})",
            best=EvalResult(best, change))
    abs_err = head_err + term_err + change + abs(best - prev) + 8 * EPS * abs(best)
    if abs_err > rel_tol * abs(best):
        raise ConvergenceError(
            f"oracle_int1 did not reach rel_tol {rel_tol:g} (nu={nu}, mu={mu}, x={x})",
            best=EvalResult(best, abs_err))
    return EvalResult(best, abs_err)
