"""Multivariate Laurent polynomials, rational functions, truncated series.

Coefficients are exact (int or Fraction; integer values are kept as plain
ints so the hot paths stay in fast machine arithmetic).  Exponent vectors may
be negative.  Rational functions are reduced by monomial content only, with
equality decided by cross multiplication -- no multivariate gcd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import format_rational, parse_rational


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPolynomial:
    """Sparse Laurent polynomial over Q in a fixed ordered variable tuple."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            for exp, c in terms.items():
                if c == 0:
                    continue
                e = tuple(int(x) for x in exp)
                if len(e) != len(self.vars):
                    raise ValueError("exponent length does not match variables")
                clean[e] = _norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c):
        v = tuple(variables)
        return cls(v, {(0,) * len(v): c})

    @classmethod
    def monomial(cls, variables, exp, c=1):
        return cls(variables, {tuple(exp): c})

    @classmethod
    def variable(cls, variables, name):
        v = tuple(variables)
        i = v.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(v)))
        return cls(v, {exp: 1})

    # -- helpers -----------------------------------------------------------
    def _check(self, other: "LaurentPolynomial"):
        if self.vars != other.vars:
            raise ValueError("mixed variable contexts")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.vars, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm_coeff(s)
            else:
                out.pop(e, None)
        return LaurentPolynomial(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.vars, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPolynomial.zero(self.vars)
            return LaurentPolynomial(
                self.vars, {e: _norm_coeff(c * other) for e, c in self.terms.items()}
            )
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPolynomial(self.vars, {e: _norm_coeff(c) for e, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are rational functions, not polynomials")
        result = LaurentPolynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def derivative(self, var_index: int, order: int = 1):
        """Exact partial derivative; Laurent exponents use falling factorials."""
        if order == 0:
            return self
        out = {}
        for e, c in self.terms.items():
            k = e[var_index]
            f = 1
            for j in range(order):
                f *= k - j
            if f == 0:
                continue
            ne = list(e)
            ne[var_index] = k - order
            out[tuple(ne)] = _norm_coeff(c * f)
        return LaurentPolynomial(self.vars, out)

    def shift(self, delta: Sequence[int]):
        """Multiply by the monomial x^delta."""
        d = tuple(delta)
        return LaurentPolynomial(
            self.vars, {tuple(a + b for a, b in zip(e, d)): c for e, c in self.terms.items()}
        )

    def content_exponent(self) -> tuple[int, ...]:
        """Componentwise minimum exponent over the support (monomial content)."""
        if not self.terms:
            raise ValueError("zero polynomial has no content")
        exps = list(self.terms)
        return tuple(min(e[i] for e in exps) for i in range(len(self.vars)))

    def weight_min(self, w: Sequence[int]):
        if not self.terms:
            return None
        return min(sum(a * b for a, b in zip(w, e)) for e in self.terms)

    def restrict_weight(self, w: Sequence[int], max_weight: int):
        return LaurentPolynomial(
            self.vars,
            {
                e: c
                for e, c in self.terms.items()
                if sum(a * b for a, b in zip(w, e)) <= max_weight
            },
        )

    def leading_term_lex(self):
        if not self.terms:
            return None
        e = max(self.terms)
        return e, self.terms[e]

    def evaluate(self, values: Sequence):
        """Evaluate at a point; negative exponents require invertible values."""
        total = 0
        for e, c in self.terms.items():
            val = 1
            for x, k in zip(values, e):
                if k == 0:
                    continue
                if k < 0 and isinstance(x, int):
                    x = Fraction(x)  # keep integer points exact under inversion
                val = val * x ** k
            total = total + c * val
        return total

    # -- comparisons & io ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.vars, other)
        return (
            isinstance(other, LaurentPolynomial)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k != 0
            )
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "variables": list(self.vars),
            "terms": [
                {"exp": list(e), "coeff": format_rational(c)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, payload: dict):
        return cls(
            tuple(payload["variables"]),
            {tuple(t["exp"]): parse_rational(t["coeff"]) for t in payload["terms"]},
        )


class RationalFunction:
    """Quotient of Laurent polynomials, reduced by monomial content only.

    Equality is decided by cross multiplication, so representatives need not
    be fully reduced.  The denominator's lex-leading coefficient is kept
    positive for deterministic printing.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial, den: LaurentPolynomial):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        num._check(den)
        if num.is_zero:
            den = LaurentPolynomial.constant(num.vars, 1)
        else:
            cn = num.content_exponent()
            cd = den.content_exponent()
            common = tuple(min(a, b) for a, b in zip(cn, cd))
            if any(common):
                shift = tuple(-x for x in common)
                num = num.shift(shift)
                den = den.shift(shift)
        lead = den.leading_term_lex()
        if lead is not None and lead[1] < 0:
            num = -num
            den = -den
        self.num = num
        self.den = den

    @classmethod
    def from_polynomial(cls, p: LaurentPolynomial):
        return cls(p, LaurentPolynomial.constant(p.vars, 1))

    @classmethod
    def zero(cls, variables):
        return cls.from_polynomial(LaurentPolynomial.zero(variables))

    @property
    def vars(self):
        return self.num.vars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.from_polynomial(
                LaurentPolynomial.constant(self.vars, other)
            )
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.from_polynomial(
                LaurentPolynomial.constant(self.vars, other)
            )
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den)
        if isinstance(other, LaurentPolynomial):
            other = RationalFunction.from_polynomial(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return RationalFunction(self.num, self.den * other)
        if isinstance(other, LaurentPolynomial):
            other = RationalFunction.from_polynomial(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self, var_index: int):
        """Quotient rule, exact: (P' Q - P Q') / Q^2."""
        return RationalFunction(
            self.num.derivative(var_index) * self.den
            - self.num * self.den.derivative(var_index),
            self.den * self.den,
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.from_polynomial(
                LaurentPolynomial.constant(self.vars, other)
            )
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def evaluate(self, values: Sequence):
        return self.num.evaluate(values) / self.den.evaluate(values)

    def __str__(self):
        if self.den == LaurentPolynomial.constant(self.vars, 1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"numerator": self.num.to_json(), "denominator": self.den.to_json()}


@dataclass(frozen=True)
class TruncatedSeries:
    """A weight-truncated Laurent series: complete through <w, u> <= order.

    `poly` holds exactly the terms of the underlying exact series whose
    w-weight is at most `order`; nothing beyond the frontier is stored.
    """

    poly: LaurentPolynomial
    weight: tuple[int, ...]
    order: int

    @property
    def vars(self):
        return self.poly.vars

    def terms(self):
        return self.poly.sorted_terms()

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(
            self.poly.restrict_weight(self.weight, order), self.weight, order
        )

    def agrees_with(self, other: "TruncatedSeries", through: int | None = None) -> bool:
        """Term-by-term equality on the common complete frontier."""
        if self.vars != other.vars or self.weight != other.weight:
            return False
        frontier = min(self.order, other.order)
        if through is not None:
            frontier = min(frontier, through)
        return self.poly.restrict_weight(self.weight, frontier) == other.poly.restrict_weight(
            other.weight, frontier
        )

    def to_json(self) -> dict:
        payload = self.poly.to_json()
        payload["weight"] = list(self.weight)
        payload["order"] = self.order
        return payload
