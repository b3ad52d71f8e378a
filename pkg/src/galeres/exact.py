"""Exact scalar arithmetic and integer linear algebra.

Rationals are plain `int` / `fractions.Fraction` (the stdlib type already
keeps gcd-reduced, positive-denominator canonical form).  On top of that this
module provides integer matrices with Hermite/Smith normal forms and saturated
kernel lattice bases, plus minimal number-field arithmetic Q[x]/(p(x)) for a
fixed monic integer minimal polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def parse_rational(value) -> Fraction:
    """Accept int, Fraction, or a "p/q" / "p" string."""
    if isinstance(value, bool):
        raise ValueError("boolean is not a rational scalar")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"cannot parse rational from {value!r}")


def format_rational(q) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class IntMatrix:
    """Immutable integer matrix with exact rank / normal-form helpers."""

    __slots__ = ("data", "rows", "cols")

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if not data:
            raise ValueError("matrix needs at least one row")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("rows must have equal length")
        # width 0 is allowed: an n x 0 matrix models a trivial kernel basis
        self.data = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.data))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = other.transpose().data
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.data]
        )

    def mul_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def submatrix_columns(self, cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[r[j] for j in cols] for r in self.data])

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def rank(self) -> int:
        return _rank_fraction([list(map(Fraction, r)) for r in self.data])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"IntMatrix[{body}]"


def _rank_fraction(m: list[list[Fraction]]) -> int:
    rows, cols = len(m), len(m[0]) if m else 0
    rank = 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns (H, U) with H = U*M, |det U| = 1.

    Pivots are positive, entries above each pivot are reduced into [0, pivot),
    and zero rows sink to the bottom.  The row lattice of H equals that of M,
    so HNF is the canonical form used whenever two lattices are compared.
    """
    h = [list(r) for r in M.data]
    u = [[1 if i == j else 0 for j in range(M.rows)] for i in range(M.rows)]
    rows, cols = M.rows, M.cols
    r = 0
    for c in range(cols):
        # clear the column below position r with gcd row operations
        pivot = None
        for i in range(r, rows):
            if h[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        h[r], h[pivot] = h[pivot], h[r]
        u[r], u[pivot] = u[pivot], u[r]
        for i in range(r + 1, rows):
            while h[i][c] != 0:
                q = h[r][c] // h[i][c]
                h[r] = [a - q * b for a, b in zip(h[r], h[i])]
                u[r] = [a - q * b for a, b in zip(u[r], u[i])]
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        r += 1
        if r == rows:
            break
    return IntMatrix(h), IntMatrix(u)


def column_hermite_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style HNF: returns (H, V) with H = M*V, V unimodular."""
    ht, ut = hermite_normal_form(M.transpose())
    return ht.transpose(), ut.transpose()


def column_hnf(M: IntMatrix) -> IntMatrix:
    """Canonical column HNF, the comparison form for column lattices."""
    return column_hermite_form(M)[0]


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (S, U, V) with S = U*M*V diagonal,
    positive invariant factors d_1 | d_2 | ... and U, V unimodular."""
    s = [list(r) for r in M.data]
    rows, cols = M.rows, M.cols
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        if i != j:
            s[i], s[j] = s[j], s[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for r in s:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] != 0 and (
                    best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])
                ):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        # clear row and column t; restart whenever a remainder survives
        # (the pivot shrinks each time, so this terminates)
        dirty = False
        for i in range(t + 1, rows):
            q = s[i][t] // s[t][t]
            if q:
                s[i] = [a - q * b for a, b in zip(s[i], s[t])]
                u[i] = [a - q * b for a, b in zip(u[i], u[t])]
            if s[i][t] != 0:
                dirty = True
        for j in range(t + 1, cols):
            q = s[t][j] // s[t][t]
            if q:
                for r in s:
                    r[j] -= q * r[t]
                for r in v:
                    r[j] -= q * r[t]
            if s[t][j] != 0:
                dirty = True
        if dirty:
            continue
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        # divisibility chain: fold a bad row into row t and redo the block
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if s[i][j] % s[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            s[t] = [a + b for a, b in zip(s[t], s[bad])]
            u[t] = [a + b for a, b in zip(u[t], u[bad])]
            continue
        t += 1
    return IntMatrix(s), IntMatrix(u), IntMatrix(v)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Z-basis of the saturated integer kernel {v in Z^n : A v = 0}.

    Returned as an n x m matrix whose columns generate the full lattice, not a
    finite-index sublattice: row-reducing A^T with a unimodular transform maps
    Z^n bijectively, so the rows of the transform matching zero rows of the
    Hermite form are exactly the kernel.  m = 0 (trivial kernel) yields a
    matrix with zero columns represented as n x 0 via an empty column list.
    """
    ht, ut = hermite_normal_form(A.transpose())
    zero_rows = [i for i in range(ht.rows) if all(x == 0 for x in ht.data[i])]
    if not zero_rows:
        return IntMatrix([[] for _ in range(A.cols)])
    cols = [ut.data[i] for i in zero_rows]
    return IntMatrix(zip(*cols))


def row_space_contains(A: IntMatrix, vec: Sequence) -> bool:
    """Exact test for membership of `vec` in the Q-row-space of A."""
    m = [list(map(Fraction, r)) for r in A.data]
    target = [Fraction(x) for x in vec]
    rank_a = _rank_fraction([r[:] for r in m])
    rank_ext = _rank_fraction([r[:] for r in m] + [target])
    return rank_a == rank_ext


def solve_row_transform(A: IntMatrix, M: IntMatrix) -> list[list[Fraction]]:
    """Solve T*A = M for T over Q (requires rows of M inside rowspace of A).

    A is d x n of rank d; T comes out d' x d where M is d' x n.
    """
    # solve A^T x = m^T column by column via Gaussian elimination
    at = [[Fraction(A.data[i][j]) for i in range(A.rows)] for j in range(A.cols)]
    result = []
    for row in M.data:
        aug = [at[i][:] + [Fraction(row[i])] for i in range(A.cols)]
        sol = _solve_unique(aug, A.rows)
        if sol is None:
            raise ValueError("row of M lies outside the row space of A")
        result.append(sol)
    return result


def _solve_unique(aug: list[list[Fraction]], nvars: int):
    rows = len(aug)
    r = 0
    pivots = []
    for c in range(nvars):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if aug[i][nvars] != 0:
            return None  # inconsistent
    if len(pivots) < nvars:
        return None  # underdetermined; callers need full-rank systems
    sol = [Fraction(0)] * nvars
    for idx, c in enumerate(pivots):
        sol[c] = aug[idx][nvars]
    return sol


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------


class NumberField:
    """Q[x]/(p(x)) for a fixed monic integer polynomial p.

    Coefficients are constant-term first, so x^3 + x^2 - 2x - 1 is
    (-1, -2, 1, 1).  Contexts are immutable values; elements from distinct
    contexts never mix (no automatic composita).
    """

    __slots__ = ("minpoly", "degree")

    def __init__(self, minpoly: Sequence[int]):
        mp = tuple(int(c) for c in minpoly)
        if len(mp) < 2 or mp[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        self.minpoly = mp
        self.degree = len(mp) - 1

    def element(self, coeffs) -> "NumberFieldElement":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            cs = self._reduce(cs)
        cs += [Fraction(0)] * (self.degree - len(cs))
        return NumberFieldElement(self, tuple(cs))

    def zero(self) -> "NumberFieldElement":
        return self.element([])

    def one(self) -> "NumberFieldElement":
        return self.element([1])

    def gen(self) -> "NumberFieldElement":
        return self.element([0, 1])

    def from_rational(self, q) -> "NumberFieldElement":
        return self.element([Fraction(q)])

    def _reduce(self, coeffs: list[Fraction]) -> list[Fraction]:
        cs = coeffs[:]
        d = self.degree
        while len(cs) > d:
            top = cs.pop()
            if top == 0:
                continue
            # x^{d+k} = -(p_0 x^k + ... + p_{d-1} x^{d-1+k})
            k = len(cs) - d
            for i in range(d):
                cs[k + i] -= top * self.minpoly[i]
        return cs

    def real_roots(self) -> list[float]:
        """Real roots of the minimal polynomial, ascending (numeric)."""
        import numpy as np

        roots = np.roots(list(reversed(self.minpoly)))
        return sorted(float(r.real) for r in roots if abs(r.imag) < 1e-9)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self) -> int:
        return hash(self.minpoly)

    def __repr__(self) -> str:
        return f"NumberField{self.minpoly}"


class NumberFieldElement:
    """Residue class in Q[x]/(p), stored as the reduced coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise ValueError("mixed number-field contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return NumberFieldElement(
            self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b != 0:
                    prod[i + j] += a * b
        return self.field.element(prod)

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero number-field element")
        # invariant: r = s * self (mod p); run Euclid on (p, self)
        p = [Fraction(c) for c in self.field.minpoly]
        a = list(self.coeffs)
        r0, r1 = p, _poly_trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _poly_deg(r1) > 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if _poly_deg(r1) < 0:
            raise ZeroDivisionError("element is a zero divisor (minpoly not irreducible?)")
        c = r1[0]
        inv = [x / c for x in s1]
        return self.field.element(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, root: float) -> float:
        """Numeric value under the embedding sending the generator to `root`."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * root + float(c)
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (
            isinstance(other, NumberFieldElement)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.minpoly, self.coeffs))

    def to_json(self) -> dict:
        return {
            "coeffs": [format_rational(c) for c in self.coeffs],
            "minpoly": list(self.field.minpoly),
        }

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            elif i == 1:
                parts.append(f"{format_rational(c)}*x" if c != 1 else "x")
            else:
                parts.append(f"{format_rational(c)}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(parts) if parts else "0"


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_deg(p: list[Fraction]) -> int:
    return len(_poly_trim(p)) - 1


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = _poly_trim(a[:])
    b = _poly_trim(b[:])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        a = _poly_trim([a[i] - f * b[i - k] if i >= k else a[i] for i in range(len(a))])
    return _poly_trim(q), a


HEPTAGON_MINPOLY = (-1, -2, 1, 1)  # x^3 + x^2 - 2x - 1


def heptagon_field() -> NumberField:
    """The cubic field of the regular-heptagon coordinate 2*cos(2*pi/7)."""
    return NumberField(HEPTAGON_MINPOLY)
