from __future__ import annotations

import math

from ..errors import DomainError, PoleError
from .result import EPS, EvalResult

# math.gamma / math.lgamma are accurate to a few ulps on the working range.
_GAMMA_REL = 8 * EPS


def gamma_fn(x: float, log_scale: bool = False) -> EvalResult:
    """Gamma function, or ``ln Gamma`` when ``log_scale`` is set.

    For ``x > 170`` the unscaled value overflows; the result is then returned
    scaled (``value * exp(scale_exponent)`` is the true value).
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("gamma_fn: x is NaN")
    if log_scale:
        if not x > 0.0:
            raise DomainError(f"gamma_fn(log_scale=True) needs x > 0, got {x}")
        v = math.lgamma(x)
        return EvalResult(v, _GAMMA_REL * max(abs(v), 1.0))
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma_fn has a pole at x = {x}")
    if x > 170.0:
        lg = math.lgamma(x)
        return EvalResult(1.0, _GAMMA_REL * max(lg, 1.0), True, lg)
    v = math.gamma(x)
    return EvalResult(v, abs(v) * _GAMMA_REL)


def rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x > 170.0:
        return math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)
