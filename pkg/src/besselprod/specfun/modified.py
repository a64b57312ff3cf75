r"""Modified Bessel functions :math:`I_\nu` and :math:`K_\nu` of real order.

The evaluation follows the Temme / Steed scheme:

* CF1 (continued fraction for :math:`I'_\nu/I_\nu`) and downward recurrence
  of the unnormalised pair to the reduced order :math:`\mu = \nu - N`,
  :math:`|\mu| \le 1/2`;
* :math:`K_\mu, K_{\mu+1}` from Temme's series for :math:`x < 1` and from
  Steed's CF2 (Thompson-Barnett) for :math:`x \ge 1`;
* upward recurrence for :math:`K`;
* :math:`I_\nu` from its positive-term power series when that is cheap,
  from the large-argument expansion for large x, and otherwise from CF1
  plus downward recurrence normalised by the Wronskian against :math:`K_\mu`.

Every magnitude is carried as a mantissa and a natural-log exponent, so
neither :math:`I_{50}(10^{-6})` nor :math:`K_{50}(10^{-6})` overflows and the
exponential factors of products cancel exactly.
"""
from __future__ import annotations

import math
from typing import NamedTuple

from ..errors import ConvergenceError, DomainError, UnsupportedOrderError
from .gamma import rgamma
from .result import EPS

ORDER_LIMIT = 1000.0
_FPMIN = 1e-300
_BIG = 1e200
_LNBIG = math.log(_BIG)
_XMIN = 2.0
_K_TEMME_MAX = 1.0

# 1/Gamma(1+z) = sum_k A[k] z^k; only the even-index tail is needed for gam1.
_EULER = 0.5772156649015329
_A4 = -0.0420026350340952
_A6 = -0.0421977345555443
_A8 = 0.0072189432466630


class IK(NamedTuple):
    """I and K of one order as ``mantissa * exp(exponent)`` plus log-derivatives."""

    i_m: float
    i_e: float
    k_m: float
    k_e: float
    li: float  # x I'/I
    lk: float  # x K'/K
    i_rel: float
    k_rel: float
    li_err: float  # absolute
    lk_err: float


def _temme_gammas(mu: float):
    gampl = rgamma(1.0 + mu)
    gammi = rgamma(1.0 - mu)
    gam2 = 0.5 * (gammi + gampl)
    if abs(mu) < 1e-2:
        m2 = mu * mu
        gam1 = -(_EULER + m2 * (_A4 + m2 * (_A6 + m2 * _A8)))
    else:
        gam1 = (gammi - gampl) / (2.0 * mu)
    return gam1, gam2, gampl, gammi


def _cf1(nu: float, x: float):
    xi = 1.0 / x
    xi2 = 2.0 * xi
    h = nu * xi
    if h < _FPMIN:
        h = _FPMIN
    b = xi2 * nu
    d = 0.0
    c = h
    maxit = 20000 + int(4 * x)
    for it in range(1, maxit):
        b += xi2
        d = 1.0 / (b + d)
        c = b + 1.0 / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < EPS:
            return h, it
    raise ConvergenceError(f"CF1 for I_nu failed to converge (nu={nu}, x={x})")


def _k_temme(xmu: float, x: float):
    """K_mu(x), K_{mu+1}(x) for |mu| <= 1/2, small x (unscaled)."""
    xmu2 = xmu * xmu
    x2 = 0.5 * x
    pimu = math.pi * xmu
    fact = 1.0 if abs(pimu) < EPS else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = xmu * d
    fact2 = 1.0 if abs(e) < EPS else math.sinh(e) / e
    gam1, gam2, gampl, gammi = _temme_gammas(xmu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    d = x2 * x2
    total1 = p
    for i in range(1, 500):
        ff = (i * ff + p + q) / (i * i - xmu2)
        c *= d / i
        p /= i - xmu
        q /= i + xmu
        delta = c * ff
        total += delta
        total1 += c * (p - i * ff)
        if abs(delta) < abs(total) * EPS:
            return total, total1 * 2.0 / x, i
    raise ConvergenceError(f"Temme series for K failed (mu={xmu}, x={x})")


def _k_steed(xmu: float, x: float):
    """exp(x) K_mu(x), exp(x) K_{mu+1}(x) for |mu| <= 1/2, x >= 1."""
    xmu2 = xmu * xmu
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - xmu2
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 20000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < EPS:
            break
    else:
        raise ConvergenceError(f"CF2 for K failed (mu={xmu}, x={x})")
    h = a1 * h
    rkmu = math.sqrt(math.pi / (2.0 * x)) / s
    rk1 = rkmu * (xmu + x + 0.5 - h) / x
    return rkmu, rk1, i


def _i_series(nu: float, x: float):
    """I_nu(x) = (x/2)^nu / Gamma(nu+1) * S for nu >= 0; positive terms only.

    Returns ``(S, log_prefactor, x I'/I, nterms)``; S is kept below overflow by
    rescaling into the exponent.
    """
    y = 0.25 * x * x
    t = 1.0
    s = 1.0
    s1 = nu
    shift = 0.0
    for k in range(1, 100000):
        t *= y / (k * (nu + k))
        s += t
        s1 += (nu + 2 * k) * t
        if t < EPS * s:
            break
        if s > _BIG:
            s /= _BIG
            s1 /= _BIG
            t /= _BIG
            shift += _LNBIG
    else:
        raise ConvergenceError(f"power series for I_nu failed (nu={nu}, x={x})")
    pre = nu * math.log(0.5 * x) - math.lgamma(nu + 1.0) + shift
    return s, pre, s1 / s, k


def _i_asymptotic(nu: float, x: float):
    """exp(-x) sqrt(2 pi x) I_nu(x) by the large-argument expansion, or None
    when the expansion cannot reach working precision."""
    mu4 = 4.0 * nu * nu
    term = 1.0
    s = 1.0
    ds = 0.0  # x * d/dx of the sum
    prev = math.inf
    for k in range(1, 200):
        term *= -(mu4 - (2 * k - 1) ** 2) / (k * 8.0 * x)
        a = abs(term)
        if a > prev:
            return None
        s += term
        ds += -k * term
        if a < 0.5 * EPS * abs(s):
            return s, x - 0.5 + ds / s, k
        prev = a
    return None


def _use_series(nu: float, x: float) -> bool:
    return x < _XMIN or 0.25 * x * x <= 8.0 * (nu + 1.0)


def _k_part(nu: float, x: float):
    """K_nu(x) = m * exp(e) for nu >= 0 with x K'/K, relative error and the
    reduced-order pair used for the Wronskian."""
    nl = int(nu + 0.5)
    xmu = nu - nl
    xi = 1.0 / x
    if x < _K_TEMME_MAX:
        rkmu, rk1, it2 = _k_temme(xmu, x)
        kshift = 0.0
    else:
        rkmu, rk1, it2 = _k_steed(xmu, x)
        kshift = -x
    reduced = (rkmu, rk1, kshift)
    for i in range(1, nl + 1):
        rktemp = (xmu + i) * 2.0 * xi * rk1 + rkmu
        rkmu = rk1
        rk1 = rktemp
        if abs(rk1) > _BIG:
            rk1 /= _BIG
            rkmu /= _BIG
            kshift += _LNBIG
    ratio = x * rk1 / rkmu
    lk = nu - ratio
    k_rel = EPS * (10.0 + 1.5 * nl + 0.1 * math.sqrt(it2) + abs(kshift))
    # the exponent bookkeeping cancels in the ratio
    lk_err = (abs(nu) + abs(ratio)) * EPS * (10.0 + 1.5 * nl + math.sqrt(it2))
    return rkmu, kshift, lk, k_rel, lk_err, reduced


def k_only(nu: float, x: float):
    """``(m, e, rel)`` with K_nu(x) = m * exp(e); skips the I computation."""
    if not x > 0.0:
        raise DomainError(f"x must be > 0, got {x}")
    m, e, _, rel, _, _ = _k_part(abs(nu), x)
    return m, e, rel


def ik_core(nu: float, x: float) -> IK:
    """I_nu(x), K_nu(x) for nu >= 0, x > 0."""
    if not nu >= 0.0:
        raise DomainError("ik_core needs nu >= 0")
    if not x > 0.0:
        raise DomainError(f"x must be > 0, got {x}")
    nl = int(nu + 0.5)
    xmu = nu - nl
    xi = 1.0 / x
    rkmu, kshift, lk, k_rel, lk_err, (k_mu, k_mu1, k_mu_shift) = _k_part(nu, x)

    asym = None
    if not _use_series(nu, x) and x >= 30.0:
        asym = _i_asymptotic(nu, x)
    if _use_series(nu, x):
        s, pre, li, nt = _i_series(nu, x)
        i_m, i_e = s, pre
        pre_mag = abs(nu * math.log(0.5 * x)) + abs(math.lgamma(nu + 1.0))
        i_rel = EPS * (8.0 + 0.5 * math.log2(nt + 1) + 2.0 * pre_mag)
        li_err = abs(li) * EPS * (6.0 + 2.0 * math.log2(nt + 1))
    elif asym is not None:
        s, li, nt = asym
        i_m, i_e = s / math.sqrt(2.0 * math.pi * x), x
        i_rel = EPS * (8.0 + 0.5 * nt + abs(x))
        li_err = EPS * (8.0 + nt + 4.0 * x)
    else:
        # CF1 + downward recurrence to the reduced order, normalised by the
        # Wronskian against K_mu.
        h, it1 = _cf1(nu, x)
        li = x * h
        li_err = abs(li) * EPS * (6.0 + math.sqrt(it1))
        ril = 1.0
        ripl = h
        ishift = 0.0
        fact = nu * xi
        for _ in range(nl):
            ritemp = fact * ril + ripl
            fact -= xi
            ripl = fact * ritemp + ril
            ril = ritemp
            if abs(ril) > _BIG:
                ril /= _BIG
                ripl /= _BIG
                ishift += _LNBIG
        f = ripl / ril
        rkmup = xmu * xi * k_mu - k_mu1
        rimu = xi / (f * k_mu - rkmup)
        i_m = rimu / ril
        i_e = -k_mu_shift - ishift
        i_rel = k_rel + EPS * (10.0 + 12.0 * nl + 0.1 * math.sqrt(it1) + abs(i_e))
    return IK(i_m, i_e, rkmu, kshift, li, lk, i_rel, k_rel, li_err, lk_err)


def check_order(nu: float, x: float, family: str) -> None:
    if math.isnan(nu) or math.isnan(x):
        raise DomainError(f"{family}: NaN argument")
    if abs(nu) > ORDER_LIMIT:
        raise UnsupportedOrderError(
            f"{family}: order {nu} outside the supported range |nu| <= {ORDER_LIMIT:g}")


def is_integer(nu: float) -> bool:
    return nu == math.floor(nu)


class Signed(NamedTuple):
    """A signed magnitude ``m * exp(e)`` with relative error ``rel``."""

    m: float
    e: float
    rel: float
    ld: float  # x F'/F
    ld_err: float

    def ratio(self, other: "Signed") -> float:
        return (self.m / other.m) * math.exp(self.e - other.e)


def i_signed(nu: float, x: float, core: IK | None = None) -> Signed:
    """I_nu(x) for any real order; negative non-integer orders by reflection
    I_{-a} = I_a + (2/pi) sin(a pi) K_a. ``core`` may pass a precomputed ik_core(|nu|, x)."""
    a = abs(nu)
    if core is None:
        core = ik_core(a, x)
    if nu >= 0.0 or is_integer(nu):
        return Signed(core.i_m, core.i_e, core.i_rel, core.li, core.li_err)
    # sin(pi a) = (-1)^k sin(pi (a - k)): the reduction is exact, so sin keeps
    # full relative accuracy near integer orders
    k = round(a)
    s = (-1.0 if k % 2 else 1.0) * 2.0 / math.pi * math.sin(math.pi * (a - k))
    e = max(core.i_e, core.k_e)
    t_i = core.i_m * math.exp(core.i_e - e)
    t_k = s * core.k_m * math.exp(core.k_e - e)
    m = t_i + t_k
    if m == 0.0:
        raise ConvergenceError(f"I_{nu}({x}) cancels to zero in the reflection formula")
    err = abs(t_i) * core.i_rel + abs(t_k) * (core.k_rel + 2 * EPS) + 2 * EPS * abs(m)
    ld = (t_i * core.li + t_k * core.lk) / m
    rel = err / abs(m)
    ld_err = (abs(t_i) * (core.li_err + abs(core.li) * core.i_rel)
              + abs(t_k) * (core.lk_err + abs(core.lk) * core.k_rel)) / abs(m) + abs(ld) * rel
    return Signed(m, e, rel, ld, ld_err)


def k_signed(nu: float, x: float, core: IK | None = None) -> Signed:
    if core is None:
        core = ik_core(abs(nu), x)
    return Signed(core.k_m, core.k_e, core.k_rel, core.lk, core.lk_err)
