"""Oriented affine hyperplane arrangements for degree (-c, -a) series supports.

For an integer Gale dual B (rows b_j) and v with A*v = (-c, -a), the lattice
points of the degree fiber are u = v + B*lam; the negative support of lam is
the set of j with <b_j, lam> < -v_j, and cells are the support fibers.
Minimal cells (inclusion-minimal supports realized by lattice points) carry
the logarithm-free series; boundedness is decided exactly on the recession
cone of the matching central arrangement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .configs import PreconditionError
from .exact import IntMatrix


@dataclass(frozen=True)
class Arrangement:
    rows: tuple[tuple[int, int], ...]   # the b_j, integer
    v: tuple[int, ...]
    A: IntMatrix | None = None          # optional primal matrix for degree checks

    def __post_init__(self):
        if len(self.rows) != len(self.v):
            raise PreconditionError("need one offset v_j per hyperplane")
        if self.A is not None and self.A.cols != len(self.rows):
            raise PreconditionError("A and B disagree on the number of indices")

    @classmethod
    def from_gale(cls, B: IntMatrix, v, A: IntMatrix | None = None) -> "Arrangement":
        if B.cols != 2:
            raise PreconditionError("arrangement requires a planar Gale dual")
        return cls(tuple((r[0], r[1]) for r in B.data), tuple(int(x) for x in v), A)

    @property
    def n(self) -> int:
        return len(self.rows)

    def degree(self):
        if self.A is None:
            return None
        return self.A.mul_vector(self.v)


def negative_support(arr: Arrangement, lam) -> tuple[int, ...]:
    """{j : <b_j, lam> < -v_j}, 1-based."""
    s, t = lam
    return tuple(
        j + 1
        for j, (b, vj) in enumerate(zip(arr.rows, arr.v))
        if b[0] * s + b[1] * t < -vj
    )


@dataclass(frozen=True)
class Cell:
    support: tuple[int, ...]
    sample: tuple[int, int]
    bounded: bool
    rays: tuple[tuple[int, int], ...]  # recession-cone generators (may be ())

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "sample": list(self.sample),
            "bounded": self.bounded,
            "rays": [list(r) for r in self.rays],
        }


@dataclass(frozen=True)
class MinimalCellSet:
    cells: tuple[Cell, ...]
    box: int

    def supports(self) -> list[tuple[int, ...]]:
        return [c.support for c in self.cells]

    def to_json(self) -> dict:
        return {"box": self.box, "cells": [c.to_json() for c in self.cells]}


def _primitive(d: tuple[int, int]) -> tuple[int, int]:
    g = math.gcd(d[0], d[1])
    return (d[0] // g, d[1] // g) if g else d


def _vertex_radius(arr: Arrangement) -> int:
    """Ceiling of the largest coordinate among pairwise line intersections."""
    best = 0
    for (b1, v1), (b2, v2) in combinations(zip(arr.rows, arr.v), 2):
        det = b1[0] * b2[1] - b1[1] * b2[0]
        if det == 0:
            continue
        s = Fraction(-v1 * b2[1] + v2 * b1[1], det)
        t = Fraction(-v2 * b1[0] + v1 * b2[0], det)
        best = max(best, math.ceil(abs(s)), math.ceil(abs(t)))
    return best


def _recession_rays(arr: Arrangement, support) -> tuple[tuple[int, int], ...]:
    """Generators of {d : <b_j,d> <= 0 for j in S, >= 0 otherwise} among the
    candidate directions (every extreme ray is orthogonal to some b_j, and the
    half-plane / line cases are covered by the b_j themselves)."""
    member = set(support)
    candidates = set()
    for b in arr.rows:
        p = _primitive(b)
        r = _primitive((-b[1], b[0]))
        candidates.update({p, (-p[0], -p[1]), r, (-r[0], -r[1])})
    rays = []
    for d in candidates:
        ok = True
        for j, b in enumerate(arr.rows, start=1):
            pairing = b[0] * d[0] + b[1] * d[1]
            if (j in member and pairing > 0) or (j not in member and pairing < 0):
                ok = False
                break
        if ok:
            rays.append(d)
    return tuple(sorted(rays))


def _enumerate_supports(arr: Arrangement, box: int) -> dict:
    found: dict[tuple[int, ...], tuple[int, int]] = {}
    rows = arr.rows
    negv = [-x for x in arr.v]
    n = len(rows)
    for s in range(-box, box + 1):
        base = [rows[j][0] * s for j in range(n)]
        for t in range(-box, box + 1):
            sup = tuple(
                j + 1 for j in range(n) if base[j] + rows[j][1] * t < negv[j]
            )
            if sup not in found:
                found[sup] = (s, t)
    return found


def minimal_cells(
    arr: Arrangement, box: int = 12, auto_double: bool = True, max_box: int = 400
) -> MinimalCellSet:
    """Inclusion-minimal negative supports realized by lattice points.

    The box must reach past every vertex of the line arrangement (checked);
    with auto_double the enumeration grows until one doubling leaves the
    support family unchanged.
    """
    needed = _vertex_radius(arr) + 1
    if box < needed:
        if not auto_double:
            raise PreconditionError(
                f"box half-width {box} too small: arrangement vertices need >= {needed}"
            )
        box = needed
    while True:
        supports = _enumerate_supports(arr, box)
        if not auto_double:
            break
        if 2 * box > max_box:
            raise PreconditionError("support family did not stabilize under doubling")
        bigger = _enumerate_supports(arr, 2 * box)
        if set(bigger) == set(supports):
            supports = bigger
            box = 2 * box
            break
        box = 2 * box
    keys = list(supports)
    minimal = [
        sup
        for sup in keys
        if not any(set(other) < set(sup) for other in keys)
    ]
    cells = []
    for sup in sorted(minimal):
        rays = _recession_rays(arr, sup)
        cells.append(Cell(sup, supports[sup], bounded=not rays, rays=rays))
    return MinimalCellSet(tuple(cells), box)


def map_exponent(arr: Arrangement, u) -> tuple[int, int]:
    """The unique lambda with u = v + B*lambda; errors if u is off the fiber."""
    u = tuple(int(x) for x in u)
    if len(u) != arr.n:
        raise PreconditionError("exponent length mismatch")
    if arr.A is not None and arr.A.mul_vector(u) != arr.A.mul_vector(arr.v):
        raise PreconditionError("exponent degree A*u does not match the arrangement degree")
    rhs = [a - b for a, b in zip(u, arr.v)]
    pivot = None
    for i, j in combinations(range(arr.n), 2):
        det = arr.rows[i][0] * arr.rows[j][1] - arr.rows[i][1] * arr.rows[j][0]
        if det:
            pivot = (i, j, det)
            break
    if pivot is None:
        raise PreconditionError("Gale dual rows do not span the plane")
    i, j, det = pivot
    s_num = rhs[i] * arr.rows[j][1] - rhs[j] * arr.rows[i][1]
    t_num = rhs[j] * arr.rows[i][0] - rhs[i] * arr.rows[j][0]
    if s_num % det or t_num % det:
        raise PreconditionError("exponent does not lie on the lattice fiber")
    lam = (s_num // det, t_num // det)
    for k in range(arr.n):
        if arr.rows[k][0] * lam[0] + arr.rows[k][1] * lam[1] != rhs[k]:
            raise PreconditionError("exponent does not lie on the lattice fiber")
    return lam


@dataclass(frozen=True)
class SupportCellReport:
    cell: Cell | None
    supports_found: tuple[tuple[int, ...], ...]
    reason: str | None

    @property
    def ok(self) -> bool:
        return self.cell is not None


def series_support_cell(arr: Arrangement, series, box: int = 12) -> SupportCellReport:
    """Map every series exponent into the arrangement plane and check that the
    union of negative supports is exactly one minimal support."""
    if hasattr(series, "poly"):
        exponents = list(series.poly.terms)
    elif hasattr(series, "terms"):
        exponents = list(series.terms)
    else:
        exponents = [tuple(e) for e in series]
    if not exponents:
        return SupportCellReport(None, (), "series has no terms (empty support)")
    seen = set()
    union: set[int] = set()
    for u in exponents:
        lam = map_exponent(arr, u)
        sup = negative_support(arr, lam)
        seen.add(sup)
        union.update(sup)
    union_t = tuple(sorted(union))
    cells = minimal_cells(arr, box=box)
    for cell in cells.cells:
        if cell.support == union_t:
            return SupportCellReport(cell, tuple(sorted(seen)), None)
    return SupportCellReport(
        None,
        tuple(sorted(seen)),
        f"support union {union_t} is not an inclusion-minimal support",
    )


def isolating_direction(
    arr: Arrangement, cells: MinimalCellSet | None = None, limit: int = 10
):
    """Search for integer w (entries in [-limit, limit], not parallel to any
    b_j) such that exactly one minimal cell has <w, .> bounded below, i.e.
    lies in a half-space {<w, lam> > rho}.  Returns (w, cell) or None.

    Meant for the Euler-Jacobi regime, where every minimal cell is unbounded.
    """
    if cells is None:
        cells = minimal_cells(arr)
    line_keys = {_primitive(b) for b in arr.rows}
    line_keys |= {(-a, -b) for a, b in line_keys}
    scan = sorted(
        (
            (abs(w1) + abs(w2), (w1, w2))
            for w1 in range(-limit, limit + 1)
            for w2 in range(-limit, limit + 1)
            if (w1, w2) != (0, 0)
        ),
    )
    for _, w in scan:
        if _primitive(w) in line_keys:
            continue
        isolated = [
            c
            for c in cells.cells
            if all(w[0] * r[0] + w[1] * r[1] >= 0 for r in c.rays)
        ]
        if len(isolated) == 1:
            return w, isolated[0]
    return None
