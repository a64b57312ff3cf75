"""Bounds and Turan-type inequalities for I_nu K_nu as tolerance-aware predicates.

Every inequality lives in ``REGISTRY`` under a stable id. An entry holds one
or more *parts* (the separate sides of a two-sided statement, or the separate
halves of a monotonicity claim), each with its own domain and relation.
``check_inequality`` evaluates the applicable parts with propagated error
estimates and reports the worst one.

Margins are oriented so that a positive margin always means "the inequality
holds". A strict relation holds when ``margin > err``; a non-strict one when
``margin >= -err`` (equality cannot be certified in floating point, but it
cannot be refuted either). Anything else between ``-err`` and ``err`` is
indeterminate.

Turan-type expressions are reported normalised by ``F_nu^2``: the left-hand
side is ``1 - F_{nu-1} F_{nu+1} / F_nu^2`` so that no square overflows.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import Callable, NamedTuple, Optional

from .errors import BesselProdError, DomainError
from .specfun import B_L, C_L, LN2_MINUS_GAMMA, log_derivative, product_ik
from .specfun.modified import check_order, i_signed, k_signed
from .specfun.result import EPS, EvalResult
from .specfun.struve import i_minus_l

UNUSED = math.nan  # mu for single-order inequalities
WRONSKIAN_TOL = 1e-10
LC_STEP = 0.1


class InequalityId(str, enum.Enum):
    U1 = "U1"
    U2 = "U2"
    U3 = "U3"
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    TP = "TP"
    TI = "TI"
    TK = "TK"
    TC = "TC"
    LD = "LD"
    WR = "WR"
    LC = "LC"


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class BoundRecord:
    """One inequality check at one parameter point."""

    id: InequalityId
    nu: float
    mu: float
    x: float
    lhs: float
    rhs: float
    margin: float
    verdict: Verdict
    err: float = 0.0
    part: str = ""
    strict: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["id"] = self.id.value
        d["verdict"] = self.verdict.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BoundRecord":
        d = dict(d)
        d["id"] = InequalityId(d["id"])
        d["verdict"] = Verdict(d["verdict"])
        for k in ("nu", "mu", "x", "lhs", "rhs", "margin", "err"):
            if k in d:
                d[k] = float(d[k])
        return cls(**d)


# ---------------------------------------------------------------- estimates

@dataclass(frozen=True)
class Est:
    """A value with an absolute error bound, propagated to first order."""

    v: float
    e: float = 0.0

    @classmethod
    def of(cls, r: EvalResult) -> "Est":
        v = r.unscaled()
        return cls(v, abs(v) * r.rel_err if r.scaled else r.abs_err)

    @classmethod
    def const(cls, c: float) -> "Est":
        return cls(c, 2.0 * EPS * abs(c))

    def _lift(self, o):
        return o if isinstance(o, Est) else Est(float(o), 0.0)

    def __add__(self, o):
        o = self._lift(o)
        v = self.v + o.v
        return Est(v, self.e + o.e + EPS * abs(v))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        v = self.v - o.v
        return Est(v, self.e + o.e + EPS * abs(v))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        v = self.v * o.v
        return Est(v, abs(self.v) * o.e + abs(o.v) * self.e + self.e * o.e + EPS * abs(v))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        v = self.v / o.v
        rel = (self.e / abs(self.v) if self.v else 0.0) + o.e / abs(o.v)
        if self.v == 0.0:
            return Est(0.0, self.e / abs(o.v))
        return Est(v, abs(v) * (rel + EPS))

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __neg__(self):
        return Est(-self.v, self.e)


def _p(nu: float, x: float) -> Est:
    return Est.of(product_ik(nu, nu, x))


def _ld(fam: str, nu: float, x: float) -> Est:
    return Est.of(log_derivative(fam, nu, x))


def _pos_x(x: float) -> None:
    if not x > 0.0:
        raise DomainError(f"x > 0 required, got x = {x}")


# ------------------------------------------------------------ bound formulas

def _cbrt(t: float) -> float:
    return math.copysign(abs(t) ** (1.0 / 3.0), t)


def _u1(nu, mu):
    return B_L / ((mu - nu) * _cbrt(mu + nu))


_U2_CONST = 2.0 * math.pi ** 1.5 * C_L / (math.sqrt(3.0) * math.gamma(2.0 / 3.0) * math.gamma(5.0 / 6.0))


def _u2(x):
    return _U2_CONST / _cbrt(2.0 * x)


def _u3(nu, mu, x):
    d = mu - nu
    g = math.exp(math.lgamma((1.0 + 3.0 * d) / 6.0) - math.lgamma((5.0 + 3.0 * d) / 6.0))
    return math.gamma(2.0 / 3.0) * g * C_L / (2.0 ** (2.0 / 3.0) * _cbrt(2.0 * x))


def upper_bound(id, nu: Optional[float], mu: Optional[float], x: float) -> float:
    """Value of the U1, U2 or U3 upper bound for ``K_nu(x) I_mu(x)``.

    U2 does not depend on the orders; ``nu``/``mu`` may be ``None`` there.
    """
    ident = InequalityId(id)
    _pos_x(x)
    if ident is InequalityId.U1:
        _require(REGISTRY[ident].domain, nu, mu, x)
        return _u1(nu, mu)
    if ident is InequalityId.U2:
        if nu is not None and mu is not None:
            _require(REGISTRY[ident].domain, nu, mu, x)
        return _u2(x)
    if ident is InequalityId.U3:
        _require(REGISTRY[ident].domain, nu, mu, x)
        return _u3(nu, mu, x)
    raise DomainError(f"{ident.value} is not an upper bound id")


def _l1(nu: float, x: float) -> Est:
    d, de = i_minus_l(nu, 2.0 * x)
    pre = math.exp(math.lgamma(nu) - math.log(2.0) - nu * math.log(x))
    rel = EPS * (4.0 + abs(math.lgamma(nu)) + abs(nu * math.log(x)))
    return Est(pre * d, pre * de + abs(pre * d) * rel)


def _l2(nu: float, x: float) -> float:
    g = math.exp(math.lgamma(nu) - math.lgamma(nu + 0.5))
    return 1.0 / (2.0 * nu) - 2.0 * x * g / (math.sqrt(math.pi) * (1.0 + 2.0 * nu))


def _l3(nu: float, x: float) -> float:
    return 1.0 / (2.0 * nu) - x * x / (4.0 * nu * (nu * nu - 1.0))


def lower_bound(id, nu: float, x: float) -> float:
    """Value of the L1, L2 or L3 lower bound for ``I_nu(x) K_nu(x)``."""
    ident = InequalityId(id)
    _pos_x(x)
    if ident not in (InequalityId.L1, InequalityId.L2, InequalityId.L3):
        raise DomainError(f"{ident.value} is not a lower bound id")
    _require(REGISTRY[ident].domain, nu, UNUSED, x)
    if ident is InequalityId.L1:
        return _l1(nu, x).v
    if ident is InequalityId.L2:
        return _l2(nu, x)
    return _l3(nu, x)


def f_shifted_log(nu: float, x: float) -> float:
    """``I_nu(x) K_nu(x) + ln x``."""
    return _f(nu, x).v


def _f(nu, x) -> Est:
    _pos_x(x)
    if not nu > -1.0:
        raise DomainError(f"f_nu needs nu > -1, got nu = {nu}")
    return _p(nu, x) + Est.const(math.log(x))


def g_nu(nu: float, x: float) -> float:
    """``2x P_nu(x) - 1 - 1/(8x)``; tends to 0 as x grows."""
    _pos_x(x)
    return 2.0 * x * product_ik(nu, nu, x).value - 1.0 - 1.0 / (8.0 * x)


def tail_gap(nu: float, x: float) -> float:
    """``P_nu(x) - 1/(2x) - 1/(16 x^2)``, negative for nu >= 1/2."""
    _pos_x(x)
    return product_ik(nu, nu, x).value - 0.5 / x - 1.0 / (16.0 * x * x)


def q_ratio(nu: float, x: float) -> float:
    """``q_nu(x) = P_nu(x) / (1 + |ln x|)``."""
    return _q(nu, x).v


def _q(nu, x) -> Est:
    _pos_x(x)
    if not nu > -1.0:
        raise DomainError(f"q_nu needs nu > -1, got nu = {nu}")
    return _p(nu, x) / Est.const(1.0 + abs(math.log(x)))


def log_cal_p(nu: float, x: float) -> Est:
    """``ln of sqrt(pi) Gamma(nu + 1/2) P_nu(x) / (2 x^nu)``."""
    _pos_x(x)
    if not nu > -0.5:
        raise DomainError(f"cal_p needs nu > -1/2, got nu = {nu}")
    p = _p(nu, x)
    lg = math.lgamma(nu + 0.5)
    base = 0.5 * math.log(math.pi) + lg - math.log(2.0) - nu * math.log(x)
    v = base + math.log(p.v)
    return Est(v, p.e / p.v + EPS * (4.0 + abs(lg) + abs(nu * math.log(x)) + abs(v)))


def cal_p(nu: float, x: float) -> float:
    """``sqrt(pi) Gamma(nu + 1/2) P_nu(x) / (2 x^nu)``."""
    return math.exp(log_cal_p(nu, x).v)


def _lc_second_difference(nu: float, x: float, h: float = LC_STEP) -> Est:
    # terms linear in nu cancel analytically; only lgamma and ln P remain
    a, b = nu - h, nu + h
    if not a > -0.5:
        raise DomainError(f"order nu - h = {a} must exceed -1/2")
    _pos_x(x)
    pa, pn, pb = _p(a, x), _p(nu, x), _p(b, x)
    lg = [math.lgamma(t + 0.5) for t in (a, nu, b)]
    lin = (2.0 * nu - a - b) * math.log(x)
    v = (lg[0] - 2.0 * lg[1] + lg[2]) + (math.log(pa.v) - 2.0 * math.log(pn.v) + math.log(pb.v)) - lin
    err = (pa.e / pa.v + 2.0 * pn.e / pn.v + pb.e / pb.v
           + EPS * (8.0 + 4.0 * sum(abs(t) for t in lg) + abs(lin)))
    return Est(v, err)


# --------------------------------------------------------------- Turan data

class _Fam(str, enum.Enum):
    P = "P"
    I = "I"  # noqa: E741
    K = "K"


def _turan_ratio(family: str, nu: float, x: float) -> Est:
    """``F_{nu-1} F_{nu+1} / F_nu^2`` with errors; exponents cancel exactly."""
    fam = _Fam(str(family).upper())
    _pos_x(x)
    if fam is _Fam.P:
        a, b, c = _p(nu - 1.0, x), _p(nu + 1.0, x), _p(nu, x)
        return a * b / (c * c)
    for order in (nu - 1.0, nu, nu + 1.0):
        check_order(order, x, fam.value)
    fn = i_signed if fam is _Fam.I else k_signed
    a, b, c = fn(nu - 1.0, x), fn(nu + 1.0, x), fn(nu, x)
    v = (a.m * b.m / (c.m * c.m)) * math.exp(a.e + b.e - 2.0 * c.e)
    rel = a.rel + b.rel + 2.0 * c.rel + 4.0 * EPS
    return Est(v, abs(v) * rel)


def turan_ratio(family: str, nu: float, x: float) -> float:
    """``1 - F_{nu-1}(x) F_{nu+1}(x) / F_nu(x)^2`` for F in {P, I, K}."""
    return (1.0 - _turan_ratio(family, nu, x)).v


def _f_square(family: str, nu: float, x: float) -> float:
    fam = _Fam(str(family).upper())
    if fam is _Fam.P:
        return product_ik(nu, nu, x).value ** 2
    s = (i_signed if fam is _Fam.I else k_signed)(nu, x)
    lg = 2.0 * (math.log(abs(s.m)) + s.e)
    return math.inf if lg > 709.0 else math.exp(lg)


def turan_delta(family: str, nu: float, x: float) -> float:
    """``F_nu(x)^2 - F_{nu-1}(x) F_{nu+1}(x)`` for F in {P, I, K}."""
    return turan_ratio(family, nu, x) * _f_square(family, nu, x)


class TuranBracket(NamedTuple):
    lower: Optional[float]  # None where the lower bound does not apply (nu <= 1)
    upper: float


def combined_turan_bounds(nu: float, x: float) -> TuranBracket:
    """The two expressions P^2/(1-nu) (nu > 1) and P^2/(nu+1) (nu > 0) around Delta_P."""
    _pos_x(x)
    if not nu > 0.0:
        raise DomainError(f"combined Turan bounds need nu > 0, got nu = {nu}")
    p2 = product_ik(nu, nu, x).value ** 2
    lower = p2 / (1.0 - nu) if nu > 1.0 else None
    return TuranBracket(lower, p2 / (nu + 1.0))


# ------------------------------------------------------------------ registry

class Constraint(NamedTuple):
    text: str
    test: Callable[[float, float, float], bool]


@dataclass(frozen=True)
class Part:
    """One side of an inequality: ``lhs <rel> rhs`` on its own domain."""

    name: str
    relation: str  # "<", "<=", ">", ">=", "=="
    evaluate: Callable[[float, float, float], tuple]
    domain: tuple = ()
    tolerance: Optional[Callable[[Est], float]] = None

    @property
    def strict(self) -> bool:
        return self.relation in ("<", ">")


@dataclass(frozen=True)
class Entry:
    id: InequalityId
    statement: str
    domain: tuple
    parts: tuple
    uses_mu: bool = False
    notes: str = ""

    def table_row(self) -> dict:
        return {
            "id": self.id.value,
            "statement": self.statement,
            "domain": [c.text for c in self.domain],
            "parts": [
                {
                    "name": p.name,
                    "relation": p.relation,
                    "strict": p.strict,
                    "domain": [c.text for c in p.domain],
                }
                for p in self.parts
            ],
            "uses_mu": self.uses_mu,
            "notes": self.notes,
        }


def _c(text, fn):
    return Constraint(text, fn)


X_POS = _c("x > 0", lambda nu, mu, x: x > 0.0)


def _require(constraints, nu, mu, x):
    for c in constraints:
        if not c.test(nu, mu, x):
            raise DomainError(f"outside domain: requires {c.text} (nu={nu}, mu={mu}, x={x})")


def _applies(constraints, nu, mu, x):
    return all(c.test(nu, mu, x) for c in constraints)


def _e(v):
    return v if isinstance(v, Est) else Est.const(v)


def _sqrt_x2_nu2(nu, x):
    return Est.const(math.hypot(x, nu))


def _turan_parts(fam, upper_name, upper, lower_parts=()):
    return (Part(upper_name, "<", lambda nu, mu, x: (1.0 - _turan_ratio(fam, nu, x), _e(upper(nu)))),
            *lower_parts)


def _wronskian(nu, mu, x):
    # I' = I_{nu+1} + (nu/x) I and K' = -K_{nu+1} + (nu/x) K turn the Wronskian
    # into a sum of two positive products for nu > -1, free of cancellation
    lhs = Est.of(product_ik(nu, nu + 1.0, x)) + Est.of(product_ik(nu + 1.0, nu, x))
    return lhs, Est.const(1.0 / x)


def _build_registry() -> dict:
    r = {}

    def add(entry):
        r[entry.id] = entry

    add(Entry(InequalityId.U1, "K_nu(x) I_mu(x) < b_L / ((mu - nu) (mu + nu)^(1/3))",
              (_c("nu > 0", lambda nu, mu, x: nu > 0.0), _c("mu > nu", lambda nu, mu, x: mu > nu), X_POS),
              (Part("upper", "<", lambda nu, mu, x: (Est.of(product_ik(nu, mu, x)), Est.const(_u1(nu, mu)))),),
              uses_mu=True))
    add(Entry(InequalityId.U2,
              "K_nu(x) I_mu(x) <= 2 pi^(3/2) c_L / (sqrt(3) Gamma(2/3) Gamma(5/6) (2x)^(1/3))",
              (_c("nu > 0", lambda nu, mu, x: nu > 0.0), _c("mu >= nu", lambda nu, mu, x: mu >= nu), X_POS),
              (Part("upper", "<=", lambda nu, mu, x: (Est.of(product_ik(nu, mu, x)), Est.const(_u2(x)))),),
              uses_mu=True))
    add(Entry(InequalityId.U3,
              "K_nu(x) I_mu(x) <= Gamma(2/3) Gamma((1+3(mu-nu))/6) c_L / "
              "(2^(2/3) Gamma((5+3(mu-nu))/6) (2x)^(1/3))",
              (_c("mu - nu > -1/3", lambda nu, mu, x: mu - nu > -1.0 / 3.0),
               _c("mu + nu > -1", lambda nu, mu, x: mu + nu > -1.0), X_POS),
              (Part("upper", "<=", lambda nu, mu, x: (Est.of(product_ik(nu, mu, x)),
                                                       Est(_u3(nu, mu, x), 16 * EPS * _u3(nu, mu, x)))),),
              uses_mu=True))
    add(Entry(InequalityId.L1, "I_nu(x) K_nu(x) > Gamma(nu) / (2 x^nu) [I_nu(2x) - L_nu(2x)]",
              (_c("nu > 0", lambda nu, mu, x: nu > 0.0), X_POS),
              (Part("lower", ">", lambda nu, mu, x: (_p(nu, x), _l1(nu, x)),
                    (_c("nu != 1/2", lambda nu, mu, x: nu != 0.5),)),
               Part("equality case", ">=", lambda nu, mu, x: (_p(nu, x), _l1(nu, x)),
                    (_c("nu = 1/2", lambda nu, mu, x: nu == 0.5),))),
              notes="equality at nu = 1/2, checked as >= there"))
    add(Entry(InequalityId.L2,
              "I_nu(x) K_nu(x) > 1/(2nu) - 2x Gamma(nu) / (sqrt(pi) (1+2nu) Gamma(nu+1/2))",
              (_c("nu > 0", lambda nu, mu, x: nu > 0.0), X_POS),
              (Part("lower", ">", lambda nu, mu, x: (_p(nu, x), Est(_l2(nu, x), 16 * EPS * (1.0 / nu + x)))),)))
    add(Entry(InequalityId.L3, "I_nu(x) K_nu(x) >= 1/(2nu) - x^2 / (4 nu (nu^2 - 1))",
              (_c("nu > 1", lambda nu, mu, x: nu > 1.0), X_POS),
              (Part("lower", ">=", lambda nu, mu, x: (_p(nu, x), Est(_l3(nu, x), 8 * EPS * (1.0 / nu + x * x)))),)))
    add(Entry(InequalityId.T1,
              "f_nu(x) = I_nu K_nu + ln x satisfies f_nu(x) <= f_nu(1) on (0,1]; ln2 - gamma < f_0(x)",
              (_c("nu >= 0", lambda nu, mu, x: nu >= 0.0), X_POS, _c("x <= 1", lambda nu, mu, x: x <= 1.0)),
              (Part("f0 lower", ">", lambda nu, mu, x: (_f(0.0, x), Est.const(LN2_MINUS_GAMMA)),
                    (_c("nu = 0", lambda nu, mu, x: nu == 0.0),)),
               Part("f <= f(1)", "<=", lambda nu, mu, x: (_f(nu, x), _p(nu, 1.0))))))
    add(Entry(InequalityId.T2, "I_nu(x) K_nu(x) - 1/(2x) < 1/(16 x^2)",
              (_c("nu >= 1/2", lambda nu, mu, x: nu >= 0.5), X_POS),
              (Part("tail", "<", lambda nu, mu, x: (_p(nu, x) - Est.const(0.5 / x),
                                                   Est.const(1.0 / (16.0 * x * x)))),)))

    def q_inc(nu, mu, x):
        s = _ld("I", nu, x) + _ld("K", nu, x)
        return s * Est.const(1.0 - math.log(x)) + 1.0, Est(0.0)

    def q_dec(nu, mu, x):
        s = _ld("I", nu, x) + _ld("K", nu, x)
        return s * Est.const(1.0 + math.log(x)) - 1.0, Est(0.0)

    add(Entry(InequalityId.T3,
              "q_nu = P_nu / (1 + |ln x|): increasing on (0,1] for nu >= 1/2, decreasing on [1,inf) "
              "for nu > -1, hence q_nu(x) <= q_nu(1)",
              (_c("nu > -1", lambda nu, mu, x: nu > -1.0), X_POS),
              (Part("q <= q(1) on (0,1]", "<=", lambda nu, mu, x: (_q(nu, x), _p(nu, 1.0)),
                    (_c("nu >= 1/2", lambda nu, mu, x: nu >= 0.5), _c("x <= 1", lambda nu, mu, x: x <= 1.0))),
               Part("q <= q(1) on [1,inf)", "<=", lambda nu, mu, x: (_q(nu, x), _p(nu, 1.0)),
                    (_c("x >= 1", lambda nu, mu, x: x >= 1.0),)),
               Part("q increasing", ">", q_inc,
                    (_c("nu >= 1/2", lambda nu, mu, x: nu >= 0.5), _c("x < 1", lambda nu, mu, x: x < 1.0))),
               Part("q decreasing", "<", q_dec, (_c("x > 1", lambda nu, mu, x: x > 1.0),))),
              notes="derivative parts: (xI'/I + xK'/K)(1 - ln x) + 1 > 0 on (0,1), "
                    "(xI'/I + xK'/K)(1 + ln x) - 1 < 0 on (1,inf)"))
    add(Entry(InequalityId.TP, "(P_nu^2 - P_{nu-1} P_{nu+1}) / P_nu^2 < 1/(nu + 1/2)",
              (_c("nu > 1/2", lambda nu, mu, x: nu > 0.5), X_POS),
              _turan_parts("P", "upper", lambda nu: 1.0 / (nu + 0.5))))
    add(Entry(InequalityId.TI, "0 < (I_nu^2 - I_{nu-1} I_{nu+1}) / I_nu^2 < 1/(nu + 1)",
              (_c("nu > -1", lambda nu, mu, x: nu > -1.0), X_POS),
              _turan_parts("I", "upper", lambda nu: 1.0 / (nu + 1.0), (
                  Part("positive", ">", lambda nu, mu, x: (1.0 - _turan_ratio("I", nu, x), Est(0.0))),))))
    add(Entry(InequalityId.TK, "1/(1 - |nu|) < (K_nu^2 - K_{nu-1} K_{nu+1}) / K_nu^2 < 0",
              (X_POS,),
              (Part("negative", "<", lambda nu, mu, x: (1.0 - _turan_ratio("K", nu, x), Est(0.0))),
               Part("lower", ">", lambda nu, mu, x: (1.0 - _turan_ratio("K", nu, x),
                                                    Est.const(1.0 / (1.0 - abs(nu)))),
                    (_c("|nu| > 1", lambda nu, mu, x: abs(nu) > 1.0),))),
              notes="lower side only for |nu| > 1"))
    add(Entry(InequalityId.TC, "1/(1 - nu) < (P_nu^2 - P_{nu-1} P_{nu+1}) / P_nu^2 < 1/(nu + 1)",
              (_c("nu > 0", lambda nu, mu, x: nu > 0.0), X_POS),
              _turan_parts("P", "upper", lambda nu: 1.0 / (nu + 1.0), (
                  Part("lower", ">", lambda nu, mu, x: (1.0 - _turan_ratio("P", nu, x),
                                                       Est.const(1.0 / (1.0 - nu))),
                       (_c("nu > 1", lambda nu, mu, x: nu > 1.0),)),)),
              notes="lower side only for nu > 1"))
    add(Entry(InequalityId.LD,
              "nu < xI'/I < sqrt(x^2 + nu^2); -nu - x < xK'/K < -sqrt(x^2 + nu^2)",
              (X_POS,),
              (Part("xI'/I > nu", ">", lambda nu, mu, x: (_ld("I", nu, x), Est(nu)),
                    (_c("nu > -1", lambda nu, mu, x: nu > -1.0),)),
               Part("xI'/I < sqrt(x^2+nu^2)", "<", lambda nu, mu, x: (_ld("I", nu, x), _sqrt_x2_nu2(nu, x)),
                    (_c("nu > -1", lambda nu, mu, x: nu > -1.0),)),
               Part("xK'/K < -sqrt(x^2+nu^2)", "<", lambda nu, mu, x: (_ld("K", nu, x), -_sqrt_x2_nu2(nu, x))),
               Part("xK'/K > -nu - x", ">", lambda nu, mu, x: (_ld("K", nu, x), Est.const(-nu - x)),
                    (_c("nu > 1/2", lambda nu, mu, x: nu > 0.5),)))))
    add(Entry(InequalityId.WR, "K_nu(x) I_nu'(x) - K_nu'(x) I_nu(x) = 1/x",
              (_c("nu > -1", lambda nu, mu, x: nu > -1.0), X_POS),
              (Part("identity", "==", _wronskian,
                    tolerance=lambda rhs: WRONSKIAN_TOL * abs(rhs.v)),),
              notes=f"identity checked to relative tolerance {WRONSKIAN_TOL:g}"))
    add(Entry(InequalityId.LC,
              f"ln cP(nu-h) - 2 ln cP(nu) + ln cP(nu+h) > 0, cP = sqrt(pi) Gamma(nu+1/2) P_nu / (2x^nu), "
              f"h = {LC_STEP:g}",
              (_c(f"nu - {LC_STEP:g} > -1/2", lambda nu, mu, x: nu - LC_STEP > -0.5), X_POS),
              (Part("convexity", ">", lambda nu, mu, x: (_lc_second_difference(nu, x), Est(0.0))),)))
    return r


REGISTRY: dict = _build_registry()


def registry_table() -> list:
    """Machine-readable description of every registered inequality."""
    return [REGISTRY[i].table_row() for i in InequalityId]


# ------------------------------------------------------------------- checking

def _classify(margin: float, err: float, strict: bool) -> Verdict:
    if margin > err:
        return Verdict.HOLDS
    if margin < -err:
        return Verdict.VIOLATED
    if not strict:
        return Verdict.HOLDS
    return Verdict.INDETERMINATE


_RANK = {Verdict.VIOLATED: 0, Verdict.INDETERMINATE: 1, Verdict.HOLDS: 2}


def _check_part(ident, part, nu, mu, x) -> BoundRecord:
    try:
        lhs, rhs = part.evaluate(nu, mu, x)
        lhs, rhs = _e(lhs), _e(rhs)
    except DomainError:
        raise
    except (BesselProdError, ArithmeticError) as exc:
        return BoundRecord(ident, nu, mu, x, math.nan, math.nan, math.nan, Verdict.INDETERMINATE,
                           math.nan, part.name, part.strict, f"evaluation failed: {exc}")
    err = lhs.e + rhs.e
    if part.relation == "==":
        margin = part.tolerance(rhs) - abs(lhs.v - rhs.v)
        verdict = _classify(margin, err, True)
    else:
        margin = rhs.v - lhs.v if part.relation in ("<", "<=") else lhs.v - rhs.v
        verdict = _classify(margin, err, part.strict)
    if not math.isfinite(margin):
        verdict = Verdict.INDETERMINATE
    return BoundRecord(ident, nu, mu, x, lhs.v, rhs.v, margin, verdict, err, part.name, part.strict)


def check_inequality(id, nu: float, mu: float = UNUSED, x: float = math.nan) -> BoundRecord:
    """Check one registered inequality at one point; raises DomainError off-domain.

    For multi-part inequalities the record of the worst part (by verdict, then
    by margin relative to its error) is returned.
    """
    ident = InequalityId(id)
    entry = REGISTRY[ident]
    nu = float(nu)
    mu = float(mu) if mu is not None else UNUSED
    x = float(x)
    if entry.uses_mu and math.isnan(mu):
        raise DomainError(f"{ident.value} needs a second order mu")
    if math.isnan(nu) or math.isnan(x):
        raise DomainError("nu and x must be numbers")
    _require(entry.domain, nu, mu, x)
    parts = [p for p in entry.parts if _applies(p.domain, nu, mu, x)]
    if not parts:
        texts = "; ".join(" and ".join(c.text for c in p.domain) for p in entry.parts)
        raise DomainError(f"outside domain of {ident.value}: no part applies (needs {texts})")
    mu_rec = mu if entry.uses_mu else UNUSED
    records = [_check_part(ident, p, nu, mu_rec, x) for p in parts]
    return min(records, key=_worst_key)


def check_parts(id, nu: float, mu: float = UNUSED, x: float = math.nan) -> list:
    """All applicable part records (no reduction to the worst one)."""
    ident = InequalityId(id)
    entry = REGISTRY[ident]
    _require(entry.domain, nu, mu, x)
    mu_rec = mu if entry.uses_mu else UNUSED
    return [_check_part(ident, p, nu, mu_rec, x) for p in entry.parts if _applies(p.domain, nu, mu, x)]


def _worst_key(rec: BoundRecord):
    if math.isnan(rec.margin):
        return (_RANK[rec.verdict], -math.inf)
    scale = rec.err if rec.err > 0 else EPS
    return (_RANK[rec.verdict], rec.margin / scale)


__all__ = [
    "REGISTRY",
    "UNUSED",
    "BoundRecord",
    "Entry",
    "Est",
    "InequalityId",
    "Part",
    "TuranBracket",
    "Verdict",
    "cal_p",
    "check_inequality",
    "check_parts",
    "combined_turan_bounds",
    "f_shifted_log",
    "g_nu",
    "log_cal_p",
    "lower_bound",
    "q_ratio",
    "registry_table",
    "tail_gap",
    "turan_delta",
    "turan_ratio",
    "upper_bound",
]
