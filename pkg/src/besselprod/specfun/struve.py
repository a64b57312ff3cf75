r"""Modified Struve function :math:`L_\nu` and the difference :math:`I_\nu - L_\nu`.

:math:`L_\nu` by its ascending series (positive terms, explicit geometric
remainder bound) up to ``x = 30``; beyond, :math:`L_\nu = I_\nu + M_\nu`
with the asymptotic expansion of :math:`M_\nu = L_\nu - I_\nu`.

The difference :math:`D_\nu(z) = I_\nu(z) - L_\nu(z)` cancels badly for
large z, so it is computed directly: combined alternating series for small
z, the integral

.. math:: D_\nu(z) = \frac{2 (z/2)^\nu}{\sqrt\pi\,\Gamma(\nu+1/2)}
          \int_0^{\pi/2} \cos^{2\nu}\theta\, e^{-z\sin\theta}\,d\theta

in the middle range, and :math:`-M_\nu` for large z.
"""
from __future__ import annotations

import math

from ..errors import ConvergenceError, DomainError, UnsupportedOrderError
from .gamma import rgamma
from .result import EPS

SERIES_XMAX = 30.0
_D_SERIES_ZMAX = 4.0
_D_ASYMP_ZMIN = 40.0


def _check(nu: float, x: float):
    if not nu > -0.5:
        raise UnsupportedOrderError(f"modified Struve L_nu supported for nu > -1/2, got {nu}")
    if x < 0.0:
        raise DomainError(f"L_nu needs x >= 0, got {x}")


def struve_l_series(nu: float, x: float):
    """``(L_nu(x) * exp(-shift), abs_err, shift)`` from the ascending series."""
    y = 0.25 * x * x
    lead = (nu + 1.0) * math.log(0.5 * x)
    t = rgamma(1.5) * rgamma(nu + 1.5)
    s = t
    for k in range(1, 10000):
        ratio = y / ((k + 0.5) * (k + nu + 0.5))
        t *= ratio
        s += t
        nxt = y / ((k + 1.5) * (k + nu + 1.5))
        if nxt < 1.0:
            tail = t * nxt / (1.0 - nxt)
            if tail < 0.5 * EPS * s:
                break
    else:
        raise ConvergenceError(f"Struve series failed (nu={nu}, x={x})")
    err = s * EPS * (6.0 + 0.5 * math.log2(k + 1) + abs(lead))
    return s, err, lead


def m_asymptotic(nu: float, z: float):
    """``M_nu(z) = L_nu(z) - I_nu(z)`` by the large-z expansion; (value, err)."""
    # term_k = (-1)^(k+1) Gamma(k+1/2) (z/2)^(nu-2k-1) / Gamma(nu+1/2-k) / pi
    half = 0.5 * z
    g = math.sqrt(math.pi)  # Gamma(1/2)
    r = rgamma(nu + 0.5)
    lg = (nu - 1.0) * math.log(half)
    base = math.exp(lg) / math.pi
    rel = EPS * (6.0 + 2.0 * abs(lg))
    term = -g * r * base
    s = term
    prev = abs(term)
    for k in range(1, 300):
        g *= k - 0.5
        r *= nu + 0.5 - k
        term = (-1) ** (k + 1) * g * r * base * half ** (-2 * k)
        a = abs(term)
        if a == 0.0:
            return s, rel * abs(s)
        if a > prev:
            break
        s += term
        if a < 0.5 * EPS * abs(s):
            return s, (rel + k * EPS) * abs(s)
        prev = a
    return s, max(prev, rel * abs(s))


def i_minus_l(nu: float, z: float):
    """``(I_nu(z) - L_nu(z), abs_err)`` for nu > -1/2, z >= 0."""
    _check(nu, z)
    if z == 0.0:
        return (1.0 if nu == 0.0 else 0.0), 0.0
    if z <= _D_SERIES_ZMAX:
        return _d_series(nu, z)
    if z >= _D_ASYMP_ZMIN:
        m, e = m_asymptotic(nu, z)
        if e <= 1e-14 * abs(m):
            return -m, e
    return _d_integral(nu, z)


def _d_series(nu, z):
    # D = (z/2)^nu sum_n (-z/2)^n / (Gamma(n/2+1) Gamma(nu+n/2+1))
    half = 0.5 * z
    s = 0.0
    mag = 0.0
    p = 1.0
    for n in range(0, 400):
        t = p * rgamma(0.5 * n + 1.0) * rgamma(nu + 0.5 * n + 1.0)
        s += t
        mag += abs(t)
        if n > 4 and abs(t) < 0.1 * EPS * abs(s):
            break
        p *= -half
    lead = math.exp(nu * math.log(half))
    return s * lead, (4 * EPS * mag + 4 * EPS * abs(s) * (1 + abs(nu * math.log(half)))) * lead


def _d_integral(nu, z):
    from ..quadrature.rules import tanh_sinh

    two_nu = 2.0 * nu

    def lower(th):
        return math.cos(th) ** two_nu * math.exp(-z * math.sin(th))

    def upper(ph):
        # theta = pi/2 - phi keeps the cos^(2 nu) endpoint at phi = 0 exactly
        return math.sin(ph) ** two_nu * math.exp(-z * math.cos(ph))

    q = 0.25 * math.pi
    cut = min(q, 30.0 / z)
    val, err = tanh_sinh(lower, 0.0, cut, rel_tol=1e-14)
    if cut < q:
        v, e = tanh_sinh(lower, cut, q, rel_tol=1e-14, abs_tol=1e-300)
        val += v
        err += e
    v, e = tanh_sinh(upper, 0.0, q, rel_tol=1e-14, abs_tol=1e-300)
    val += v
    err += e
    pre = 2.0 * math.exp(nu * math.log(0.5 * z)) * rgamma(nu + 0.5) / math.sqrt(math.pi)
    return pre * val, pre * (err + 8 * EPS * val * (1 + abs(nu * math.log(0.5 * z))))
