r"""Bessel function of the first kind :math:`J_\nu(x)` for real order, x >= 0.

Regimes: ascending series for small x, Hankel's large-argument expansion
when it reaches working precision, Miller's backward recurrence normalised
by :math:`(x/2)^a = \sum_j (a+2j)\Gamma(a+j)/j!\,J_{a+2j}(x)` otherwise.
Negative orders come from the real-order series, the Hankel expansion, or
downward recurrence (stable toward negative orders).
"""
from __future__ import annotations

import math

from ..errors import ConvergenceError, DomainError
from .gamma import rgamma
from .result import EPS

_SERIES_XMAX = 13.0
_BIG = 1e200


def _series(nu: float, x: float):
    """Ascending series; error accounts for cancellation via the sum of |terms|."""
    y = -0.25 * x * x
    lead_log = nu * math.log(0.5 * x) if x > 0 else 0.0
    t = rgamma(nu + 1.0)
    s = t
    mag = abs(t)
    for k in range(1, 5000):
        t *= y / (k * (nu + k))
        s += t
        mag += abs(t)
        if k > 2 and abs(t) < 1e-2 * EPS * mag:
            break
    else:
        raise ConvergenceError(f"J series failed (nu={nu}, x={x})")
    scale = math.exp(lead_log)
    return s * scale, (mag * 4 * EPS + EPS * abs(s) * (4 + abs(lead_log))) * scale


def _hankel(nu: float, x: float):
    """Hankel expansion, or None if it cannot reach working precision."""
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    term = 1.0
    prev = math.inf
    k = 0
    while True:
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        a = abs(term)
        if a > prev and k > 2:
            return None
        if k % 2 == 1:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 == 1 else term
        if a < EPS * 0.1 and k > 1:
            break
        prev = a
        if k > 400:
            return None
    chi = x - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * x))
    val = amp * (p * math.cos(chi) - q * math.sin(chi))
    # |chi| ~ x, so the reduction of the phase costs about x ulps.
    err = amp * EPS * (8.0 + x + abs(nu))
    return val, err


def _miller(nu: float, x: float):
    """J_nu(x), J_{nu+1}(x) for nu >= 0 by backward recurrence."""
    n = int(math.floor(nu))
    a = nu - n
    start = max(n + 1, int(x)) + 30 + int(3.0 * math.sqrt(max(x, 1.0)) * 3)
    if start % 2:
        start += 1
    fkp1 = 0.0
    fk = 1e-300
    want = want1 = None
    norm = 0.0
    # weights w_j = (a + 2j) Gamma(a + j) / j!, j = k/2; w_0 = Gamma(a + 1)
    g = math.gamma(a + 1.0)
    weights = [g]
    for j in range(1, start // 2 + 1):
        if j > 1:
            g *= (a + j - 1.0) / j
        weights.append((a + 2 * j) * g)
    for k in range(start, -1, -1):
        if k == n:
            want = fk
        if k == n + 1:
            want1 = fk
        if k % 2 == 0:
            norm += weights[k // 2] * fk
        if k == 0:
            break
        fkm1 = 2.0 * (a + k) / x * fk - fkp1
        fkp1 = fk
        fk = fkm1
        if abs(fk) > _BIG:
            fk /= _BIG
            fkp1 /= _BIG
            norm /= _BIG
            if want is not None:
                want /= _BIG
            if want1 is not None:
                want1 /= _BIG
    scale = math.exp(a * math.log(0.5 * x)) / norm
    j0 = want * scale
    j1 = want1 * scale
    err = EPS * (10.0 + 2.0 * start) * max(abs(j0), EPS * math.sqrt(2.0 / (math.pi * x)))
    return j0, j1, err


def bessel_j(nu: float, x: float):
    """Return ``(J_nu(x), abs_err)``."""
    if x < 0.0:
        raise DomainError(f"J_nu needs x >= 0, got {x}")
    if nu == math.floor(nu) and nu < 0:
        v, e = bessel_j(-nu, x)
        return (v if int(-nu) % 2 == 0 else -v), e
    if x == 0.0:
        if nu == 0.0:
            return 1.0, 0.0
        if nu > 0.0:
            return 0.0, 0.0
        raise DomainError(f"J_{nu}(0) is unbounded")
    if x <= _SERIES_XMAX or (nu > 0 and 0.25 * x * x < 0.1 * (nu + 1.0)):
        return _series(nu, x)
    h = _hankel(nu, x)
    if h is not None:
        return h
    if nu >= 0.0:
        j0, _, err = _miller(nu, x)
        return j0, err
    # negative non-integer order: recur downward from a + m, a + m + 1 >= 0
    m = int(math.ceil(-nu))
    top = nu + m
    jk, jk1, err = _miller(top, x)
    for k in range(m):
        order = top - k  # jk = J_order, jk1 = J_{order+1}
        jm1 = 2.0 * order / x * jk - jk1
        jk1 = jk
        jk = jm1
    return jk, err * (1.0 + m) + EPS * 4 * abs(jk)
