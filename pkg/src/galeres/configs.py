"""Planar vector configurations, Gale duality bookkeeping, and the
balanced / splitting / uniform / irreducible predicates.

Configurations are multisets: repeated vectors are allowed and indices are
distinct carriers of possibly equal vectors.  All reported index sets are
1-based, matching the usual mathematical labelling b_1, ..., b_n.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import IntMatrix, NumberField, NumberFieldElement, row_space_contains
from .laurent import LaurentPolynomial


class PreconditionError(ValueError):
    """A mathematical precondition of an operation failed."""


# ---------------------------------------------------------------------------
# scalar contexts
# ---------------------------------------------------------------------------


class RationalContext:
    """Exact arithmetic over Q; entries are ints or Fractions."""

    kind = "rational"

    def is_zero(self, x) -> bool:
        return x == 0

    def vec_is_zero(self, v) -> bool:
        return v[0] == 0 and v[1] == 0

    def det(self, u, v):
        return u[0] * v[1] - u[1] * v[0]

    def parallel(self, u, v) -> bool:
        return u[0] * v[1] - u[1] * v[0] == 0

    def direction_key(self, v):
        """Canonical key of the line R*v: primitive, first nonzero positive."""
        x, y = v
        if isinstance(x, Fraction) or isinstance(y, Fraction):
            fx, fy = Fraction(x), Fraction(y)
            m = math.lcm(fx.denominator, fy.denominator)
            x, y = int(fx * m), int(fy * m)
        g = math.gcd(x, y)
        if g:
            x, y = x // g, y // g
        if x < 0 or (x == 0 and y < 0):
            x, y = -x, -y
        return (x, y)

    def value_key(self, x):
        return Fraction(x) if not isinstance(x, (int, Fraction)) else x

    def symmetric_multiset(self, values) -> bool:
        counts = Counter(self.value_key(v) for v in values)
        return all(counts[v] == counts[-v] for v in counts)

    def embed(self, q):
        return q

    def ratio(self, u, v):
        """Scalar s with u = s*v, for parallel nonzero u, v."""
        if v[0] != 0:
            return Fraction(u[0]) / Fraction(v[0])
        return Fraction(u[1]) / Fraction(v[1])

    def is_positive(self, x) -> bool:
        return x > 0

    def abs(self, x):
        return -x if x < 0 else x

    def to_float(self, x) -> float:
        return float(x)

    def format(self, x):
        from .exact import format_rational

        return format_rational(x)


class NumberFieldContext:
    """Exact arithmetic in a fixed number field Q[x]/(p)."""

    kind = "number_field"

    def __init__(self, fld: NumberField, embedding_root: float | None = None):
        self.field = fld
        if embedding_root is None:
            roots = fld.real_roots()
            if not roots:
                raise ValueError("number field has no real embedding")
            embedding_root = max(roots)
        self.root = embedding_root

    def _lift(self, x):
        if isinstance(x, NumberFieldElement):
            return x
        return self.field.from_rational(x)

    def is_zero(self, x) -> bool:
        return self._lift(x).is_zero()

    def vec_is_zero(self, v) -> bool:
        return self.is_zero(v[0]) and self.is_zero(v[1])

    def det(self, u, v):
        return self._lift(u[0]) * v[1] - self._lift(u[1]) * v[0]

    def parallel(self, u, v) -> bool:
        return self.det(u, v).is_zero()

    def direction_key(self, v):
        x, y = self._lift(v[0]), self._lift(v[1])
        if x.is_zero():
            return ("v",)  # the vertical line
        t = y / x
        return ("s", t.coeffs)

    def value_key(self, x):
        return self._lift(x).coeffs

    def symmetric_multiset(self, values) -> bool:
        counts = Counter(self.value_key(v) for v in values)
        neg = Counter(self.value_key(-self._lift(v)) for v in values)
        return counts == neg

    def embed(self, q):
        return self.field.from_rational(q)

    def ratio(self, u, v):
        vx = self._lift(v[0])
        if not vx.is_zero():
            return self._lift(u[0]) / vx
        return self._lift(u[1]) / self._lift(v[1])

    def is_positive(self, x) -> bool:
        return self._lift(x).evaluate(self.root) > 0

    def abs(self, x):
        x = self._lift(x)
        return x if self.is_positive(x) or x.is_zero() else -x

    def to_float(self, x) -> float:
        return self._lift(x).evaluate(self.root)

    def format(self, x):
        return self._lift(x).to_json()


class NumericContext:
    """Double-precision sampling mode with absolute tolerance 1e-9 taken
    after normalization to unit max-norm (vectors for direction tests, the
    value multiset for symmetry tests).  Exact mode is the authoritative one;
    this exists for sampling experiments."""

    kind = "numeric"

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    def is_zero(self, x) -> bool:
        return abs(x) <= self.tol

    def vec_is_zero(self, v) -> bool:
        return abs(v[0]) <= self.tol and abs(v[1]) <= self.tol

    def _unit(self, v):
        m = max(abs(v[0]), abs(v[1]))
        if m == 0:
            return (0.0, 0.0)
        return (v[0] / m, v[1] / m)

    def det(self, u, v):
        return u[0] * v[1] - u[1] * v[0]

    def parallel(self, u, v) -> bool:
        a = self._unit(u)
        b = self._unit(v)
        return abs(a[0] * b[1] - a[1] * b[0]) <= self.tol

    def direction_key(self, v):
        x, y = self._unit(v)
        if x < 0 or (abs(x) <= self.tol and y < 0):
            x, y = -x, -y
        return (round(x, 9), round(y, 9))

    def value_key(self, x):
        return round(x, 9)

    def symmetric_multiset(self, values) -> bool:
        # greedy matching of negated pairs within tolerance, on the multiset
        # rescaled to unit max-norm so the test is scale-free
        vals = sorted(values)
        if not vals:
            return True
        scale = max(abs(v) for v in vals)
        if scale > 0:
            vals = [v / scale for v in vals]
        lo, hi = 0, len(vals) - 1
        while lo < hi:
            if abs(vals[lo] + vals[hi]) > self.tol:
                return False
            lo += 1
            hi -= 1
        if lo == hi:
            return abs(vals[lo]) <= self.tol
        return True

    def embed(self, q):
        return float(q)

    def ratio(self, u, v):
        return u[0] / v[0] if abs(v[0]) > self.tol else u[1] / v[1]

    def is_positive(self, x) -> bool:
        return x > 0

    def abs(self, x):
        return abs(x)

    def to_float(self, x) -> float:
        return float(x)

    def format(self, x):
        return float(x)


RATIONAL = RationalContext()


# ---------------------------------------------------------------------------
# configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Configuration:
    """An integer d x n configuration of full rank d (the matrix A)."""

    A: IntMatrix
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.A.rank() != self.A.rows:
            raise PreconditionError("configuration matrix must have full row rank")
        if self.labels and len(self.labels) != self.A.cols:
            raise ValueError("one label per column required")

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def d(self) -> int:
        return self.A.rows

    @property
    def codimension(self) -> int:
        return self.n - self.d


class PlanarConfig:
    """A list of n plane vectors over a scalar context (a Gale dual)."""

    __slots__ = ("vectors", "context")

    def __init__(self, vectors: Iterable, context=RATIONAL):
        self.vectors = tuple((v[0], v[1]) for v in vectors)
        self.context = context

    @classmethod
    def from_matrix(cls, B: IntMatrix) -> "PlanarConfig":
        if B.cols != 2:
            raise PreconditionError("a planar Gale dual needs exactly 2 columns")
        return cls(B.data, RATIONAL)

    @property
    def n(self) -> int:
        return len(self.vectors)

    def vector(self, i: int):
        """1-based access, matching the labelling b_1 ... b_n."""
        return self.vectors[i - 1]

    def transform(self, g) -> "PlanarConfig":
        """Apply an invertible 2x2 matrix g (rows) on the left of each b_i."""
        (a, b), (c, d) = g
        return PlanarConfig(
            [(a * x + b * y, c * x + d * y) for x, y in self.vectors], self.context
        )

    def __repr__(self):
        return f"PlanarConfig({list(self.vectors)!r})"


@dataclass(frozen=True)
class Cocircuit:
    """All indices whose vectors lie on one line through the origin."""

    indices: tuple[int, ...]  # 1-based, sorted
    direction: tuple          # a representative vector spanning the line


@dataclass(frozen=True)
class ValidationReport:
    nonconfluent: bool
    pyramid_free: bool
    distinct_dual: bool
    zero_indices: tuple[int, ...] = ()
    crowded_line: tuple[int, ...] = ()
    sum_vector: tuple = (0, 0)

    @property
    def ok(self) -> bool:
        return self.nonconfluent and self.pyramid_free and self.distinct_dual

    def failures(self) -> list[str]:
        out = []
        if not self.nonconfluent:
            out.append("nonconfluent")
        if not self.pyramid_free:
            out.append("pyramid_free")
        if not self.distinct_dual:
            out.append("distinct_dual")
        return out

    def to_json(self) -> dict:
        return {
            "nonconfluent": self.nonconfluent,
            "pyramid_free": self.pyramid_free,
            "distinct_dual": self.distinct_dual,
            "zero_indices": list(self.zero_indices),
            "crowded_line": list(self.crowded_line),
        }


def validate(B: PlanarConfig, A: IntMatrix | None = None) -> ValidationReport:
    """Check nonconfluence, the no-pyramid and distinct-points assumptions.

    Reports, never raises.  When the primal matrix A is supplied, the
    equivalent formulation of nonconfluence -- (1,...,1) in the row span of
    A -- is computed as well and the two answers are required to agree.
    """
    ctx = B.context
    sx = sy = None
    for x, y in B.vectors:
        sx = x if sx is None else sx + x
        sy = y if sy is None else sy + y
    nonconfluent = ctx.vec_is_zero((sx, sy))
    if A is not None:
        dual_check = row_space_contains(A, [1] * A.cols)
        if dual_check != nonconfluent:
            raise AssertionError(
                "sum-of-rows and row-span nonconfluence checks disagree"
            )
    zero_idx = tuple(
        i + 1 for i, v in enumerate(B.vectors) if ctx.vec_is_zero(v)
    )
    pyramid_free = not zero_idx
    crowded: tuple[int, ...] = ()
    distinct = True
    if pyramid_free:
        groups: dict = {}
        for i, v in enumerate(B.vectors):
            groups.setdefault(ctx.direction_key(v), []).append(i + 1)
        for idx in groups.values():
            if len(idx) >= B.n - 2:
                crowded = tuple(idx)
                distinct = False
                break
    return ValidationReport(
        nonconfluent, pyramid_free, distinct, zero_idx, crowded, (sx, sy)
    )


def cocircuits(B: PlanarConfig) -> list[Cocircuit]:
    """Partition the indices by the line through the origin they span."""
    ctx = B.context
    groups: dict = {}
    for i, v in enumerate(B.vectors):
        if ctx.vec_is_zero(v):
            raise PreconditionError(f"b_{i + 1} is zero; cocircuits undefined")
        groups.setdefault(ctx.direction_key(v), []).append(i + 1)
    out = [
        Cocircuit(tuple(idx), B.vector(idx[0]))
        for idx in groups.values()
    ]
    out.sort(key=lambda c: c.indices[0])
    return out


def _indices_of(J) -> tuple[int, ...]:
    if isinstance(J, Cocircuit):
        return J.indices
    return tuple(sorted(int(j) for j in J))


def circuit_dual(B: PlanarConfig, J, j: int) -> list:
    """The multiset {det(b_i, b_j) : i not in J}, in index order.

    Up to a nonzero constant this is the Gale dual of the circuit A(J^c);
    the choice of j in J only rescales it.
    """
    idx = _indices_of(J)
    if j not in idx:
        raise PreconditionError(f"index {j} does not belong to the cocircuit {idx}")
    ctx = B.context
    bj = B.vector(j)
    member = set(idx)
    return [ctx.det(B.vector(i), bj) for i in range(1, B.n + 1) if i not in member]


@dataclass(frozen=True)
class CocircuitStatus:
    balanced: bool
    splitting: bool


def cocircuit_status(B: PlanarConfig, J, pivot: int | None = None) -> CocircuitStatus:
    """balanced: dual multiset symmetric under negation; splitting: sum zero."""
    idx = _indices_of(J)
    ctx = B.context
    j = pivot if pivot is not None else idx[0]
    dual = circuit_dual(B, idx, j)
    balanced = ctx.symmetric_multiset(dual)
    sx = sy = 0
    for i in idx:
        x, y = B.vector(i)
        sx, sy = sx + x, sy + y
    return CocircuitStatus(balanced, ctx.vec_is_zero((sx, sy)))


def _set_partitions(items: Sequence[int]):
    """All set partitions, by the standard recursive insertion scheme."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in _set_partitions(rest):
        for k in range(len(partial)):
            yield partial[:k] + [[first] + partial[k]] + partial[k + 1 :]
        yield [[first]] + partial


def zero_sum_partitions(B: PlanarConfig) -> list[tuple[tuple[int, ...], ...]]:
    """All partitions of the index set into >= 2 zero-sum parts, finest first.

    Exhaustive over set partitions (Bell(7) = 877), n <= 9 by design.
    """
    if B.n > 9:
        raise PreconditionError("partition enumeration is limited to n <= 9")
    ctx = B.context
    found = []
    for partition in _set_partitions(list(range(1, B.n + 1))):
        if len(partition) < 2:
            continue
        good = True
        for part in partition:
            sx = sy = 0
            for i in part:
                x, y = B.vector(i)
                sx, sy = sx + x, sy + y
            if not ctx.vec_is_zero((sx, sy)):
                good = False
                break
        if good:
            found.append(tuple(tuple(sorted(p)) for p in sorted(partition)))
    found.sort(key=lambda p: (-len(p), p))
    return found


@dataclass(frozen=True)
class Profile:
    uniform: bool
    balanced: bool
    nonconfluent: bool
    irreducible: bool
    decompositions: tuple = ()

    def to_json(self) -> dict:
        return {
            "uniform": self.uniform,
            "balanced": self.balanced,
            "nonconfluent": self.nonconfluent,
            "irreducible": self.irreducible,
            "decompositions": [[list(p) for p in d] for d in self.decompositions],
        }


def profile(B: PlanarConfig) -> Profile:
    """Uniformity, balance, nonconfluence and irreducibility in one report."""
    ctx = B.context
    for i, v in enumerate(B.vectors):
        if ctx.vec_is_zero(v):
            raise PreconditionError(f"b_{i + 1} is zero")
    cocs = cocircuits(B)
    uniform = len(cocs) == B.n
    balanced = all(cocircuit_status(B, c).balanced for c in cocs)
    report = validate(B)
    decomps = tuple(zero_sum_partitions(B))
    return Profile(uniform, balanced, report.nonconfluent, not decomps, decomps)


def circuit_discriminant(
    B: PlanarConfig, I, variables: Sequence[str] | None = None
) -> LaurentPolynomial:
    """The binomial discriminant of the circuit A(I), up to integer constant.

    With c the primitive integer circuit dual (first nonzero entry positive),

        prod_{c_i>0} c_i^{c_i} * prod_{c_i<0} x_i^{-c_i}
      - prod_{c_i<0} c_i^{-c_i} * prod_{c_i>0} x_i^{c_i},

    normalized so the lex-leading coefficient is positive (the discriminant is
    only defined up to a constant).
    """
    if B.context.kind != "rational":
        raise PreconditionError("circuit discriminants require the rational context")
    idx = tuple(sorted(int(i) for i in I))
    comp = tuple(i for i in range(1, B.n + 1) if i not in idx)
    comp_cocircuits = {c.indices for c in cocircuits(B)}
    if comp not in comp_cocircuits:
        raise PreconditionError(
            f"complement {comp} is not a cocircuit, so A({idx}) is not a circuit"
        )
    j = comp[0] if comp else None
    if j is None:
        raise PreconditionError("empty complement: the circuit dual is undefined")
    raw = circuit_dual(B, comp, j)
    # raw is indexed by the circuit I in index order
    ints = []
    for v in raw:
        f = Fraction(v)
        if f.denominator != 1:
            raise PreconditionError("circuit dual is not integral")
        ints.append(f.numerator)
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v != 0), 0)
    if lead < 0:
        ints = [-v for v in ints]
    names = tuple(variables) if variables else tuple(f"x{i}" for i in range(1, B.n + 1))
    if len(names) != B.n:
        raise ValueError("need one variable name per configuration index")
    coef1, coef2 = 1, 1
    exp1 = [0] * B.n
    exp2 = [0] * B.n
    for pos, c in zip(idx, ints):
        if c > 0:
            coef1 *= c ** c
            exp2[pos - 1] = c
        elif c < 0:
            coef2 *= c ** (-c)
            exp1[pos - 1] = -c
    poly = LaurentPolynomial(names, {tuple(exp1): coef1}) - LaurentPolynomial(
        names, {tuple(exp2): coef2}
    )
    # sign normalization: the term carrying the highest-index variables gets a
    # positive coefficient (the discriminant is defined up to a constant)
    lead = max(poly.terms, key=lambda e: tuple(reversed(e)))
    if poly.terms[lead] < 0:
        poly = -poly
    return poly
