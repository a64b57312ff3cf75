"""Special-function kernels: Gamma, J, I, K, modified Struve L and the product I*K."""
from .api import BesselFamily, bessel, log_derivative, p_value, product_ik
from .constants import B_L, C_L, CONSTANTS, EULER_GAMMA, LN2_MINUS_GAMMA, MathConstants
from .gamma import gamma_fn
from .modified import ORDER_LIMIT
from .result import EvalResult
from .struve import i_minus_l

__all__ = [
    "B_L",
    "C_L",
    "CONSTANTS",
    "EULER_GAMMA",
    "LN2_MINUS_GAMMA",
    "ORDER_LIMIT",
    "BesselFamily",
    "EvalResult",
    "MathConstants",
    "bessel",
    "gamma_fn",
    "i_minus_l",
    "log_derivative",
    "p_value",
    "product_ik",
]
