"""Adaptive quadrature and the integral-representation oracles for Bessel products."""
from .oracles import INT1_TRUSTED_GAP, oracle_int1, oracle_int2
from .rules import (
    DEFAULT_MAX_SUBDIVISIONS,
    DEFAULT_REL_TOL,
    IntegrationSpec,
    integrate,
    tanh_sinh,
)

__all__ = [
    "DEFAULT_MAX_SUBDIVISIONS",
    "DEFAULT_REL_TOL",
    "INT1_TRUSTED_GAP",
    "IntegrationSpec",
    "integrate",
    "oracle_int1",
    "oracle_int2",
    "tanh_sinh",
]
