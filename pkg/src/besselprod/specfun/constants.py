"""Named constants used by the bound formulas."""
from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class MathConstants:
    b_L: float = 0.674885
    c_L: float = 0.7857468704
    euler_gamma: float = 0.5772156649015329
    ln2_minus_gamma: float = math.log(2.0) - 0.5772156649015329
    notes: dict = field(default_factory=lambda: {
        "b_L": "Landau's order-uniform bound |J_nu(x)| < b_L nu^(-1/3); hard-coded decimal. "
               "Equals 2^(1/3) max_t Ai(-t); the sup of Ai over t > 0 gives 0.447 instead.",
        "c_L": "Landau's argument-uniform bound |J_nu(x)| <= c_L |x|^(-1/3); "
               "equals sup_{t>0} t^(1/3) J_0(t).",
        "euler_gamma": "Euler-Mascheroni constant.",
        "ln2_minus_gamma": "lim_{x->0} I_0(x)K_0(x) + ln x.",
    }, compare=False)


CONSTANTS = MathConstants()
B_L = CONSTANTS.b_L
C_L = CONSTANTS.c_L
EULER_GAMMA = CONSTANTS.euler_gamma
LN2_MINUS_GAMMA = CONSTANTS.ln2_minus_gamma
