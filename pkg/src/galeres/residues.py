"""Toric residue series for codimension-two essential Cayley systems.

The system is the trinomial family

    f1 = x1 + y1 * t1^g1
    f2 = x2 + y2 * t2^g2
    f3 = x3 + y3 * t1^a1 t2^a2 + z3 * t1^b1 t2^b2

in the fixed variable order (x1, y1, x2, y2, x3, y3, z3).  The residue sum
R(c, a) is built as an exact Laurent series for c = (1,1,1) and reached at
general c through the derivative shift relations; a numeric local-residue
oracle cross-checks values and the sign law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classify import CayleyStructure
from .configs import PreconditionError
from .exact import IntMatrix
from .laurent import LaurentPolynomial, RationalFunction, TruncatedSeries
from .polygon import minkowski_sum, strictly_inside

CAYLEY_VARS = ("x1", "y1", "x2", "y2", "x3", "y3", "z3")

# weight used for residue-series truncation: series are graded by the
# x3-pole order m1 + m2 + c3
SERIES_WEIGHT = (0, 0, 0, 0, -1, 0, 0)


class ConditioningError(RuntimeError):
    """A numeric residue ran into a near-degenerate Jacobian or root."""


@dataclass(frozen=True)
class CayleySystem:
    gamma: tuple[int, int]
    alpha: tuple[int, int]
    beta: tuple[int, int]

    def __post_init__(self):
        g1, g2 = self.gamma
        if g1 <= 0 or g2 <= 0:
            raise PreconditionError("gamma exponents must be positive")
        if self.alpha == (0, 0) or self.beta == (0, 0):
            raise PreconditionError("alpha and beta must be nonzero")
        if self.alpha[1] == 0 and self.beta[1] == 0:
            raise PreconditionError("alpha, beta both on the t1 axis: not essential")
        if self.alpha[0] == 0 and self.beta[0] == 0:
            raise PreconditionError("alpha, beta both on the t2 axis: not essential")

    @property
    def vars(self):
        return CAYLEY_VARS

    def matrix(self) -> IntMatrix:
        """The 5 x 7 configuration matrix in the fixed column order."""
        g1, g2 = self.gamma
        a1, a2 = self.alpha
        b1, b2 = self.beta
        return IntMatrix(
            [
                [1, 1, 0, 0, 0, 0, 0],
                [0, 0, 1, 1, 0, 0, 0],
                [0, 0, 0, 0, 1, 1, 1],
                [0, g1, 0, 0, 0, a1, b1],
                [0, 0, 0, g2, 0, a2, b2],
            ]
        )

    def point_sets(self):
        return (
            ((0, 0), (self.gamma[0], 0)),
            ((0, 0), (0, self.gamma[1])),
            ((0, 0), self.alpha, self.beta),
        )

    @classmethod
    def f2(cls) -> "CayleySystem":
        return cls((1, 1), (1, 0), (0, 1))

    @classmethod
    def from_structure(cls, structure: CayleyStructure) -> "CayleySystem":
        return cls(structure.gamma, structure.alpha, structure.beta)

    def to_json(self) -> dict:
        return {
            "gamma": list(self.gamma),
            "alpha": list(self.alpha),
            "beta": list(self.beta),
        }


def degree_vector(c, a) -> tuple[int, ...]:
    """The homogeneity (-c, -a) of R(c, a)."""
    return (-c[0], -c[1], -c[2], -a[0], -a[1])


@dataclass(frozen=True)
class ResidueSeriesResult:
    system: CayleySystem
    c: tuple[int, int, int]
    a: tuple[int, int]
    order: int                       # truncation in m1 + m2
    series: TruncatedSeries
    solved: tuple = ()               # ((m1, m2), (nu1, nu2)) pairs used

    @property
    def degree(self):
        return degree_vector(self.c, self.a)

    def to_json(self) -> dict:
        payload = self.series.to_json()
        payload.update(
            {
                "system": self.system.to_json(),
                "c": list(self.c),
                "a": list(self.a),
                "m_order": self.order,
            }
        )
        return payload


def residue_series(sys: CayleySystem, a, order: int) -> ResidueSeriesResult:
    """The Laurent series of R((1,1,1), a), truncated at m1 + m2 <= order.

    Terms are contributed by the pairs m in N^2 for which

        a + m1*alpha + m2*beta = (nu1*g1, nu2*g2)

    has an integer solution nu(m); the term is then

        (-1)^(m1+m2+nu1+nu2) C(m1+m2, m1)
            * y3^m1 z3^m2 x3^(-m1-m2-1)
            * x1^(nu1-1) y1^(-nu1) x2^(nu2-1) y2^(-nu2).

    The sign packages the alternating trinomial expansion with the exact
    one-dimensional residue factor (-1)^(nu_i - 1) obtained by summing over
    the gamma_i-th roots; an empty series just means no m solves the
    congruence within the truncation order.
    """
    a = (int(a[0]), int(a[1]))
    g1, g2 = sys.gamma
    terms = {}
    solved = []
    for m1 in range(order + 1):
        for m2 in range(order + 1 - m1):
            t1 = a[0] + m1 * sys.alpha[0] + m2 * sys.beta[0]
            t2 = a[1] + m1 * sys.alpha[1] + m2 * sys.beta[1]
            if t1 % g1 or t2 % g2:
                continue
            nu1, nu2 = t1 // g1, t2 // g2
            sign = -1 if (m1 + m2 + nu1 + nu2) % 2 else 1
            coeff = sign * math.comb(m1 + m2, m1)
            exp = (nu1 - 1, -nu1, nu2 - 1, -nu2, -m1 - m2 - 1, m1, m2)
            terms[exp] = coeff
            solved.append(((m1, m2), (nu1, nu2)))
    poly = LaurentPolynomial(CAYLEY_VARS, terms)
    series = TruncatedSeries(poly, SERIES_WEIGHT, order + 1)
    return ResidueSeriesResult(sys, (1, 1, 1), a, order, series, tuple(solved))


# per-direction shift data: (index of c to bump, a-shift builder, order delta)
_SHIFTS = {
    "x1": (0, lambda s: (0, 0), 0),
    "y1": (0, lambda s: (s.gamma[0], 0), 0),
    "x2": (1, lambda s: (0, 0), 0),
    "y2": (1, lambda s: (0, s.gamma[1]), 0),
    "x3": (2, lambda s: (0, 0), 0),
    "y3": (2, lambda s: s.alpha, -1),
    "z3": (2, lambda s: s.beta, -1),
}


def shift_c(result: ResidueSeriesResult, direction: str) -> ResidueSeriesResult:
    """Move to the series of R at a shifted degree via d_var R(c,a) = -c_i R(...).

    Differentiating with respect to x1..y2, x3 preserves the truncation order;
    y3 and z3 consume one order of truncation.  All six relations follow from
    differentiation under the residue integral.
    """
    if direction not in _SHIFTS:
        raise PreconditionError(f"unknown shift direction {direction!r}")
    ci, a_shift, dorder = _SHIFTS[direction]
    new_order = result.order + dorder
    if new_order < 0:
        raise PreconditionError("truncation order exhausted by the shift")
    var_idx = CAYLEY_VARS.index(direction)
    scaled = result.series.poly.derivative(var_idx) * Fraction(-1, result.c[ci])
    new_c = tuple(v + (1 if k == ci else 0) for k, v in enumerate(result.c))
    da = a_shift(result.system)
    new_a = (result.a[0] + da[0], result.a[1] + da[1])
    series = TruncatedSeries(scaled, SERIES_WEIGHT, new_order + new_c[2])
    return ResidueSeriesResult(result.system, new_c, new_a, new_order, series)


def series_for_degree(sys: CayleySystem, c, a, order: int) -> ResidueSeriesResult:
    """R(c, a) reached from c = (1,1,1) through x-direction shifts only.

    The x-shifts change no homogeneity in a and keep the truncation order, so
    this is the canonical path; `shift_c` along other paths must agree
    (mixed partial derivatives commute).
    """
    c = tuple(int(v) for v in c)
    if any(v < 1 for v in c):
        raise PreconditionError("c must be a positive integer triple")
    res = residue_series(sys, a, order)
    for var, count in zip(("x1", "x2", "x3"), (c[0] - 1, c[1] - 1, c[2] - 1)):
        for _ in range(count):
            res = shift_c(res, var)
    return res


def euler_jacobi_test(sys: CayleySystem, c, a) -> bool:
    """(-c, -a) lies in the Euler-Jacobi cone iff c > 0 and a is interior to
    c1*conv(A1) + c2*conv(A2) + c3*conv(A3) (exact half-plane tests)."""
    if any(v <= 0 for v in c):
        return False
    scaled = []
    for ci, pts in zip(c, sys.point_sets()):
        scaled.append([(ci * p[0], ci * p[1]) for p in pts])
    hull = minkowski_sum(scaled)
    return strictly_inside(hull, (int(a[0]), int(a[1])))


# ---------------------------------------------------------------------------
# numeric oracle
# ---------------------------------------------------------------------------


def _as_param_vector(params) -> list[complex]:
    if isinstance(params, dict):
        return [complex(params[v]) for v in CAYLEY_VARS]
    vals = [complex(v) for v in params]
    if len(vals) != 7:
        raise PreconditionError("expected seven parameter values")
    return vals


def _poly_roots(coeff_by_exp: dict[int, complex]) -> list[complex]:
    """Roots in C* of a univariate Laurent polynomial given as exp -> coeff."""
    exps = [e for e, c in coeff_by_exp.items() if abs(c) > 0]
    if not exps:
        return []
    lo = min(exps)
    deg = max(exps) - lo
    if deg == 0:
        return []
    coeffs = [0j] * (deg + 1)
    for e, c in coeff_by_exp.items():
        coeffs[max(exps) - e] = c
    roots = np.roots(coeffs)
    return [complex(r) for r in roots if abs(r) > 1e-10]


def numeric_residue_oracle(sys: CayleySystem, a, pair: str, params) -> complex:
    """Sum of local residues of t^a/(f1 f2 f3) dt1/t1 ^ dt2/t2 over V_ij.

    c is fixed at (1,1,1) and the common zeros must be simple; each local
    residue is t^a / (f_k * t1 * t2 * Jac(f_i, f_j)) at the zero.
    """
    if pair not in ("12", "13", "23"):
        raise PreconditionError("pair must be one of '12', '13', '23'")
    x1, y1, x2, y2, x3, y3, z3 = _as_param_vector(params)
    g1, g2 = sys.gamma
    a1, a2 = sys.alpha
    b1, b2 = sys.beta

    def f1(t1):
        return x1 + y1 * t1 ** g1

    def f2(t2):
        return x2 + y2 * t2 ** g2

    def f3(t1, t2):
        return x3 + y3 * t1 ** a1 * t2 ** a2 + z3 * t1 ** b1 * t2 ** b2

    def t_power(t, k):
        return t ** k

    if abs(y1) < 1e-14 or abs(y2) < 1e-14:
        raise ConditioningError("degenerate binomial: y1, y2 must be nonzero")
    roots1 = _poly_roots({g1: y1, 0: x1})
    roots2 = _poly_roots({g2: y2, 0: x2})
    points = []
    if pair == "12":
        points = [(t1, t2) for t1 in roots1 for t2 in roots2]
    elif pair == "13":
        for t1 in roots1:
            by_exp: dict[int, complex] = {0: x3}
            by_exp[a2] = by_exp.get(a2, 0) + y3 * t_power(t1, a1)
            by_exp[b2] = by_exp.get(b2, 0) + z3 * t_power(t1, b1)
            points.extend((t1, t2) for t2 in _poly_roots(by_exp))
    else:
        for t2 in roots2:
            by_exp = {0: x3}
            by_exp[a1] = by_exp.get(a1, 0) + y3 * t_power(t2, a2)
            by_exp[b1] = by_exp.get(b1, 0) + z3 * t_power(t2, b2)
            points.extend((t1, t2) for t1 in _poly_roots(by_exp))

    def d_f3_t1(t1, t2):
        return a1 * y3 * t1 ** (a1 - 1) * t2 ** a2 + b1 * z3 * t1 ** (b1 - 1) * t2 ** b2

    def d_f3_t2(t1, t2):
        return a2 * y3 * t1 ** a1 * t2 ** (a2 - 1) + b2 * z3 * t1 ** b1 * t2 ** (b2 - 1)

    total = 0j
    scale = max(abs(x1), abs(y1), abs(x2), abs(y2), abs(x3), abs(y3), abs(z3), 1.0)
    for t1, t2 in points:
        if pair == "12":
            jac = (g1 * y1 * t1 ** (g1 - 1)) * (g2 * y2 * t2 ** (g2 - 1))
            remaining = f3(t1, t2)
        elif pair == "13":
            jac = (g1 * y1 * t1 ** (g1 - 1)) * d_f3_t2(t1, t2)
            remaining = f2(t2)
        else:
            # ordered pair (f2, f3): Jac = df2/dt1 * df3/dt2 - df2/dt2 * df3/dt1
            jac = -(g2 * y2 * t2 ** (g2 - 1)) * d_f3_t1(t1, t2)
            remaining = f1(t1)
        if abs(jac) < 1e-9 * scale:
            raise ConditioningError("near-degenerate Jacobian at a common zero")
        if abs(remaining) < 1e-12 * scale:
            raise ConditioningError("common zero of all three polynomials")
        total += t1 ** a[0] * t2 ** a[1] / (remaining * t1 * t2 * jac)
    return total


# ---------------------------------------------------------------------------
# closed-form fixtures for the Appell F2 configuration
# ---------------------------------------------------------------------------


def _v(name):
    return LaurentPolynomial.variable(CAYLEY_VARS, name)


def f2_fixtures() -> dict[str, RationalFunction]:
    """The five closed-form rational solutions of the F2 configuration.

    R12, R1, R2, R3 have homogeneity (-1,-1,-1,0,0); R_112_11 is the residue
    at c = (1,1,2), a = (1,1), the Euler-Jacobi interior degree.
    """
    x1, y1, x2, y2, x3, y3, z3 = (_v(n) for n in CAYLEY_VARS)
    disc = y1 * y2 * x3 - x1 * y2 * y3 - y1 * x2 * z3
    return {
        "R12": RationalFunction(y1 * y2, x1 * x2 * disc),
        "R1": RationalFunction(y1, x1 * x2 * (y1 * x3 - x1 * y3)),
        "R2": RationalFunction(y2, x1 * x2 * (y2 * x3 - x2 * z3)),
        "R3": RationalFunction(
            LaurentPolynomial.constant(CAYLEY_VARS, 1), x1 * x2 * x3
        ),
        "R_112_11": RationalFunction(y1 * y2, disc * disc),
    }
