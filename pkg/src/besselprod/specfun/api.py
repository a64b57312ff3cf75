from __future__ import annotations

import enum
import math

from ..errors import DomainError, UnsupportedOrderError
from . import struve
from .bessel_j import bessel_j
from .modified import check_order, i_signed, ik_core, is_integer, k_signed
from .result import EPS, EvalResult, from_mant_exp


class BesselFamily(str, enum.Enum):
    J = "J"
    I = "I"  # noqa: E741
    K = "K"
    L = "L"


def _family(family) -> BesselFamily:
    try:
        return BesselFamily(family.value if isinstance(family, BesselFamily) else str(family).upper())
    except ValueError:
        raise DomainError(f"unknown Bessel family {family!r}") from None


def bessel(family, nu: float, x: float, scaled: bool = False) -> EvalResult:
    """Evaluate J, I, K or the modified Struve L at real order ``nu``.

    With ``scaled`` set, I and L are returned as ``exp(-x) F`` and K as
    ``exp(x) K`` (``scale_exponent`` is ``+x`` / ``-x``). J carries no
    exponential factor and is always returned unscaled.
    """
    fam = _family(family)
    nu = float(nu)
    x = float(x)
    check_order(nu, x, fam.value)
    if x < 0.0:
        raise DomainError(f"{fam.value}_nu needs x >= 0, got {x}")
    if fam is BesselFamily.J:
        v, e = bessel_j(nu, x)
        return EvalResult(v, e)
    if fam is BesselFamily.K:
        if x == 0.0:
            raise DomainError("K_nu is singular at x = 0")
        k = k_signed(nu, x)
        return from_mant_exp(k.m, k.e, k.rel, scaled, -x)
    if fam is BesselFamily.I:
        if x == 0.0:
            if nu == 0.0:
                return EvalResult(1.0, 0.0, scaled, 0.0)
            if nu > 0.0 or is_integer(nu):
                return EvalResult(0.0, 0.0, scaled, 0.0)
            raise DomainError(f"I_{nu}(0) is unbounded")
        i = i_signed(nu, x)
        return from_mant_exp(i.m, i.e, i.rel, scaled, x)
    # modified Struve
    struve._check(nu, x)
    if x == 0.0:
        return EvalResult(0.0, 0.0, scaled, 0.0)
    if x <= struve.SERIES_XMAX:
        s, err, lead = struve.struve_l_series(nu, x)
        return from_mant_exp(s, lead, err / s, scaled, x)
    i = i_signed(nu, x)
    m, em = struve.m_asymptotic(nu, x)
    scale = math.exp(-i.e)
    mant = i.m + m * scale
    rel = (abs(i.m) * i.rel + em * scale) / abs(mant)
    return from_mant_exp(mant, i.e, rel, scaled, x)


def product_ik(nu: float, mu: float, x: float) -> EvalResult:
    """``I_mu(x) * K_nu(x)`` with the exponential factors cancelled exactly.

    The equal-order product ``P_nu(x) = I_nu(x) K_nu(x)`` is ``product_ik(nu, nu, x)``.
    """
    nu = float(nu)
    mu = float(mu)
    x = float(x)
    check_order(nu, x, "K")
    check_order(mu, x, "I")
    if not x > 0.0:
        raise DomainError(f"product_ik needs x > 0, got {x}")
    core = ik_core(abs(nu), x) if abs(nu) == abs(mu) else None
    i = i_signed(mu, x, core)
    k = k_signed(nu, x, core)
    return from_mant_exp(i.m * k.m, i.e + k.e, i.rel + k.rel + 2 * EPS, False, 0.0)


def log_derivative(family, nu: float, x: float) -> EvalResult:
    """``x F'_nu(x) / F_nu(x)`` for F = I or K, from the kernels' ratio data."""
    fam = _family(family)
    nu = float(nu)
    x = float(x)
    check_order(nu, x, fam.value)
    if not x > 0.0:
        raise DomainError(f"log_derivative needs x > 0, got {x}")
    if fam is BesselFamily.I:
        if nu <= -1.0 and not is_integer(nu):
            raise UnsupportedOrderError(f"x I'/I is supported for nu > -1 (or integer nu), got {nu}")
        s = i_signed(nu, x)
    elif fam is BesselFamily.K:
        s = k_signed(nu, x)
    else:
        raise DomainError("log_derivative is defined for the I and K families only")
    return EvalResult(s.ld, s.ld_err + 4.0 * EPS * abs(s.ld))


def p_value(nu: float, x: float) -> float:
    """Plain float ``I_nu(x) K_nu(x)``."""
    return product_ik(nu, nu, x).unscaled()
