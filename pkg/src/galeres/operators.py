"""Weyl-algebra operators acting on exact rational functions and series.

Provides the toric and Euler generators of an A-hypergeometric ideal, exact
operator application via iterated quotient-rule differentiation (with shared
derivative tables, since denominators stay powers of one polynomial), the
stability search, and Laurent expansion of a rational function at a vertex of
its denominator's Newton polytope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product

from .configs import PreconditionError
from .exact import IntMatrix, kernel_basis
from .laurent import LaurentPolynomial, RationalFunction, TruncatedSeries


class DegenerateWeightError(PreconditionError):
    """The weight does not pick a unique vertex of the Newton polytope."""


@dataclass(frozen=True)
class OpTerm:
    coeff: object           # int or Fraction
    xexp: tuple[int, ...]   # monomial multiplier, exponents >= 0
    dexp: tuple[int, ...]   # derivative multi-index


class DifferentialOperator:
    """Normally ordered sum of terms c * x^u * d^v."""

    __slots__ = ("vars", "terms", "tag")

    def __init__(self, variables, terms, tag: str = ""):
        self.vars = tuple(variables)
        self.terms = tuple(t for t in terms if t.coeff != 0)
        self.tag = tag

    @classmethod
    def euler(cls, variables, row, alpha_i, tag=""):
        n = len(tuple(variables))
        terms = []
        for j, a in enumerate(row):
            if a:
                e = tuple(1 if k == j else 0 for k in range(n))
                terms.append(OpTerm(a, e, e))
        zero = (0,) * n
        terms.append(OpTerm(-alpha_i, zero, zero))
        return cls(variables, terms, tag or "euler")

    @classmethod
    def toric(cls, variables, nu, tag=""):
        n = len(tuple(variables))
        plus = tuple(max(v, 0) for v in nu)
        minus = tuple(max(-v, 0) for v in nu)
        zero = (0,) * n
        return cls(
            variables,
            [OpTerm(1, zero, plus), OpTerm(-1, zero, minus)],
            tag or f"toric{tuple(nu)}",
        )

    def apply_polynomial(self, p: LaurentPolynomial) -> LaurentPolynomial:
        """Exact termwise action on a Laurent polynomial (or series chunk)."""
        out = LaurentPolynomial.zero(self.vars)
        for t in self.terms:
            q = p
            for i, k in enumerate(t.dexp):
                if k:
                    q = q.derivative(i, k)
            if t.coeff != 1:
                q = q * t.coeff
            if any(t.xexp):
                q = q.shift(t.xexp)
            out = out + q
        return out

    def max_dorder(self) -> int:
        return max((sum(t.dexp) for t in self.terms), default=0)

    def __str__(self):
        def mono(exp, symbols):
            return "*".join(
                f"{s}^{k}" if k > 1 else s for s, k in zip(symbols, exp) if k
            )

        parts = []
        dsyms = [f"d_{v}" for v in self.vars]
        for t in self.terms:
            body = "*".join(x for x in (mono(t.xexp, self.vars), mono(t.dexp, dsyms)) if x)
            if not body:
                parts.append(str(t.coeff))
            elif t.coeff == 1:
                parts.append(body)
            elif t.coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{t.coeff}*{body}")
        return (self.tag + ": " if self.tag else "") + " + ".join(parts).replace(
            "+ -", "- "
        )

    __repr__ = __str__


def hypergeometric_generators(
    A: IntMatrix, alpha, bound: int, variables=None
) -> list[DifferentialOperator]:
    """Euler operators of A with parameter alpha, plus the toric operators
    d^{nu+} - d^{nu-} for kernel vectors nu = B*lam with |lam|_inf <= bound.

    The bounded toric set is a falsification harness, not a generating proof:
    a passing report means "annihilated up to the bound".
    """
    if len(alpha) != A.rows:
        raise PreconditionError("alpha must have one entry per row of A")
    names = tuple(variables) if variables else tuple(f"x{i}" for i in range(1, A.cols + 1))
    if len(names) != A.cols:
        raise PreconditionError("one variable name per column required")
    ops = [
        DifferentialOperator.euler(names, A.data[i], alpha[i], tag=f"euler[{i + 1}]")
        for i in range(A.rows)
    ]
    K = kernel_basis(A)
    seen = set()
    for lam in product(range(-bound, bound + 1), repeat=K.cols):
        if not any(lam):
            continue
        first = next(v for v in lam if v)
        if first < 0:
            continue  # nu and -nu give the same operator up to sign
        nu = tuple(sum(K.data[i][j] * lam[j] for j in range(K.cols)) for i in range(K.rows))
        if nu in seen:
            continue
        seen.add(nu)
        ops.append(DifferentialOperator.toric(names, nu, tag=f"toric{lam}"))
    return ops


class DerivativeTable:
    """Shared cache of iterated derivatives of one rational function.

    d^v (P/Q) is maintained as N_v / Q^{k_v}; one quotient-rule step per new
    multi-index, reusing the parent along the first-positive-coordinate chain.
    A-homogeneous inputs keep N_v small (supports live in a rank-2 lattice
    slice), which is what makes the stability search cheap.
    """

    def __init__(self, f: RationalFunction):
        self.q = f.den
        self.nvars = len(f.vars)
        zero = (0,) * self.nvars
        self._memo = {zero: (f.num, 1)}
        self._dq = [self.q.derivative(i) for i in range(self.nvars)]
        self._qpow = {0: LaurentPolynomial.constant(f.vars, 1), 1: self.q}

    def qpower(self, k: int) -> LaurentPolynomial:
        if k not in self._qpow:
            self._qpow[k] = self.qpower(k - 1) * self.q
        return self._qpow[k]

    def get(self, v: tuple[int, ...]) -> tuple[LaurentPolynomial, int]:
        got = self._memo.get(v)
        if got is not None:
            return got
        i = next(idx for idx, k in enumerate(v) if k > 0)
        parent = tuple(k - 1 if idx == i else k for idx, k in enumerate(v))
        n, k = self.get(parent)
        nn = n.derivative(i) * self.q - (k * n) * self._dq[i]
        out = (nn, k + 1)
        self._memo[v] = out
        return out

    def as_rational(self, v: tuple[int, ...]) -> RationalFunction:
        n, k = self.get(v)
        return RationalFunction(n, self.qpower(k))


def apply_operator(
    op: DifferentialOperator, f: RationalFunction, table: DerivativeTable | None = None
) -> RationalFunction:
    """Apply a normally ordered operator to P/Q, exactly."""
    if table is None:
        table = DerivativeTable(f)
    kmax = 1
    pieces = []
    for t in op.terms:
        n, k = table.get(t.dexp)
        pieces.append((t, n, k))
        kmax = max(kmax, k)
    total = LaurentPolynomial.zero(f.vars)
    for t, n, k in pieces:
        contrib = n * table.qpower(kmax - k)
        if t.coeff != 1:
            contrib = contrib * t.coeff
        if any(t.xexp):
            contrib = contrib.shift(t.xexp)
        total = total + contrib
    return RationalFunction(total, table.qpower(kmax))


@dataclass(frozen=True)
class AnnihilationReport:
    passed: bool
    failures: tuple[str, ...]
    operator_count: int
    bound: int

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failures": list(self.failures),
            "operator_count": self.operator_count,
            "bound": self.bound,
        }


def annihilation_check(
    A: IntMatrix, alpha, f: RationalFunction, bound: int = 3, variables=None
) -> AnnihilationReport:
    """Apply every bounded generator to f; passed iff all results vanish."""
    ops = hypergeometric_generators(A, alpha, bound, variables or f.vars)
    table = DerivativeTable(f)
    failures = []
    for op in ops:
        if not apply_operator(op, f, table).is_zero:
            failures.append(str(op))
    return AnnihilationReport(not failures, tuple(failures), len(ops), bound)


@dataclass(frozen=True)
class StabilityReport:
    stable_up_to_bound: bool
    killing_derivative: tuple[int, ...] | None
    bound: int

    def to_json(self) -> dict:
        return {
            "stable_up_to_bound": self.stable_up_to_bound,
            "killing_derivative": list(self.killing_derivative)
            if self.killing_derivative
            else None,
            "bound": self.bound,
        }


def stability_check(f: RationalFunction, bound: int = 6) -> StabilityReport:
    """Search for an iterated derivative annihilating f, in graded order.

    The first level is the cheap screen (variables the reduced representation
    does not genuinely depend on die at order one); deeper levels share the
    derivative table.  If d^v f = 0 then every larger multi-index also kills
    f, so the graded scan finds a minimal witness.
    """
    table = DerivativeTable(f)
    n = len(f.vars)
    for level in range(1, bound + 1):
        for combo in combinations_with_replacement(range(n), level):
            v = [0] * n
            for i in combo:
                v[i] += 1
            v = tuple(v)
            num, _ = table.get(v)
            if num.is_zero:
                return StabilityReport(False, v, bound)
    return StabilityReport(True, None, bound)


def laurent_expand(f: RationalFunction, w, order: int) -> TruncatedSeries:
    """Expand P/Q at the w-minimal vertex of the Newton polytope of Q.

    The weight must attain its minimum on N(Q) at a unique monomial nu0; the
    geometric series in the shifted monomials then has strictly positive
    weights and the truncation terminates.  The returned series carries every
    term of weight <= max(order, order - w(nu0)), which guarantees that
    Q * S - P only has terms of w-weight > order.

    Raises DegenerateWeightError when the minimizing vertex is not unique;
    perturb w (e.g. by a small multiple of a generic vector) and retry.
    """
    w = tuple(int(x) for x in w)
    if len(w) != len(f.vars):
        raise PreconditionError("weight length must match the variable count")
    q = f.den
    p = f.num
    weights = {e: sum(a * b for a, b in zip(w, e)) for e in q.terms}
    wmin = min(weights.values())
    vertex = [e for e, wt in weights.items() if wt == wmin]
    if len(vertex) != 1:
        raise DegenerateWeightError(
            f"weight {w} attains its minimum at {len(vertex)} monomials of the "
            "denominator; perturb the weight to pick a unique vertex"
        )
    nu0 = vertex[0]
    q0 = q.terms[nu0]
    order_eff = max(order, order - wmin)
    if p.is_zero:
        return TruncatedSeries(p, w, order_eff)
    p_min = p.weight_min(w)
    frontier = order_eff - p_min + wmin  # geometric-part weight budget
    ratio = {}
    for e, c in q.terms.items():
        if e == nu0:
            continue
        delta = tuple(a - b for a, b in zip(e, nu0))
        if weights[e] - wmin <= 0:
            raise DegenerateWeightError("vertex is not the strict minimum")
        ratio[delta] = Fraction(-c) / Fraction(q0)
    geom_total = {(0,) * len(w): Fraction(1)}
    layer = dict(geom_total)
    # every ratio monomial has weight >= 1, so round k only produces terms of
    # weight >= k and the pruned layer empties after at most `frontier` rounds
    for _ in range(max(frontier, 0)):
        nxt = {}
        for e, c in layer.items():
            for d, rc in ratio.items():
                ne = tuple(a + b for a, b in zip(e, d))
                if sum(a * b for a, b in zip(w, ne)) > frontier:
                    continue
                nxt[ne] = nxt.get(ne, 0) + c * rc
        layer = {e: c for e, c in nxt.items() if c != 0}
        if not layer:
            break
        for e, c in layer.items():
            geom_total[e] = geom_total.get(e, 0) + c
    inv_part = LaurentPolynomial(f.vars, geom_total).shift(tuple(-x for x in nu0)) * (
        Fraction(1) / Fraction(q0)
    )
    series_poly = (p * inv_part).restrict_weight(w, order_eff)
    return TruncatedSeries(series_poly, w, order_eff)
