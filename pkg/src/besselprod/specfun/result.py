from __future__ import annotations

import math
from dataclasses import dataclass

EPS = 2.220446049250313e-16
# Allowance added to every kernel error estimate.
ROUNDING_ULPS = 4.0


@dataclass(frozen=True)
class EvalResult:
    """A real value with an absolute-error estimate.

    When ``scaled`` is true the true quantity is ``value * exp(scale_exponent)``;
    ``abs_err`` is expressed in the same (scaled) units as ``value``.
    """

    value: float
    abs_err: float
    scaled: bool = False
    scale_exponent: float = 0.0

    def __post_init__(self):
        if not self.scaled and self.scale_exponent != 0.0:
            raise ValueError("unscaled result must have scale_exponent == 0")
        if math.isfinite(self.value) and not (self.abs_err >= 0.0 and math.isfinite(self.abs_err)):
            raise ValueError(f"abs_err must be finite and >= 0, got {self.abs_err!r}")

    @property
    def rel_err(self) -> float:
        if self.value == 0.0:
            return math.inf
        return self.abs_err / abs(self.value)

    def unscaled(self) -> float:
        """The true value as a float (may overflow to inf or underflow to 0)."""
        if not self.scaled:
            return self.value
        return _mul_exp(self.value, self.scale_exponent)

    def __float__(self) -> float:
        return self.unscaled()


def _mul_exp(m: float, e: float) -> float:
    if m == 0.0:
        return 0.0
    lg = math.log(abs(m)) + e
    if lg > 709.78:
        return math.copysign(math.inf, m)
    if lg < -745.0:
        return math.copysign(0.0, m)
    return m * math.exp(e) if abs(e) < 700 else math.copysign(math.exp(lg), m)


def from_mant_exp(m: float, e: float, rel: float, scaled_request: bool, shift: float) -> EvalResult:
    """Build a result for the quantity ``m * exp(e)``.

    ``shift`` is the exponent removed when the caller asked for a scaled value;
    if the requested representation is not a normal float, the result falls
    back to an explicitly scaled one so that nothing is silently lost.
    """
    rel = rel + ROUNDING_ULPS * EPS
    if scaled_request:
        rest = e - shift
        if _representable(m, rest):
            v = _mul_exp(m, rest)
            return EvalResult(v, abs(v) * rel, True, shift)
    elif _representable(m, e):
        v = _mul_exp(m, e)
        return EvalResult(v, abs(v) * rel)
    return EvalResult(m, abs(m) * rel, True, e)


def _representable(m: float, e: float) -> bool:
    if m == 0.0:
        return True
    lg = math.log(abs(m)) + e
    return -700.0 < lg < 700.0
