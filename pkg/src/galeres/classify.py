"""Classification of planar Gale-dual configurations (n = 4..7).

Implements the seven-vector classification into types a-e, the balanced
classification into types i-v, GL(2)-equivalence search, the P^k pair
machinery for uniform configurations, and essential-Cayley detection for
5 x 7 integer configurations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .configs import (
    Cocircuit,
    NumberFieldContext,
    NumericContext,
    PlanarConfig,
    PreconditionError,
    RationalContext,
    cocircuit_status,
    cocircuits,
    validate,
    zero_sum_partitions,
)
from .exact import (
    IntMatrix,
    NumberField,
    heptagon_field,
    kernel_basis,
    solve_row_transform,
)


class InvariantViolation(AssertionError):
    """The classification theorem's exhaustiveness was contradicted."""


@dataclass(frozen=True)
class ClassificationResult:
    label: str
    witness: dict

    def to_json(self) -> dict:
        def clean(v):
            if isinstance(v, tuple):
                return [clean(x) for x in v]
            if isinstance(v, Fraction):
                from .exact import format_rational

                return format_rational(v)
            if hasattr(v, "to_json"):
                return v.to_json()
            return v

        return {"label": self.label, **{k: clean(v) for k, v in self.witness.items()}}


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _vec_sum(B: PlanarConfig, indices):
    sx = sy = 0
    for i in indices:
        x, y = B.vector(i)
        sx, sy = sx + x, sy + y
    return (sx, sy)


def _opposite_pairs(B: PlanarConfig) -> list[tuple[int, int]]:
    ctx = B.context
    out = []
    for i, j in combinations(range(1, B.n + 1), 2):
        if ctx.vec_is_zero(_vec_sum(B, (i, j))):
            out.append((i, j))
    return out


def _spans(B: PlanarConfig, indices) -> bool:
    ctx = B.context
    idx = list(indices)
    for i, j in combinations(idx, 2):
        if not ctx.parallel(B.vector(i), B.vector(j)):
            return True
    return False


def _subconfig(B: PlanarConfig, indices) -> PlanarConfig:
    return PlanarConfig([B.vector(i) for i in indices], B.context)


def _first_nonsplitting_unbalanced(B: PlanarConfig, cocs) -> Cocircuit | None:
    for c in cocs:
        st = cocircuit_status(B, c)
        if not st.splitting and not st.balanced:
            return c
    return None


def _is_irreducible_five(B: PlanarConfig, indices) -> bool:
    """A 5-vector zero-sum subconfiguration is reducible iff it contains a
    zero-sum pair or triple."""
    ctx = B.context
    for r in (2, 3):
        for sub in combinations(indices, r):
            if ctx.vec_is_zero(_vec_sum(B, sub)):
                return False
    return True


def _all_balanced(B: PlanarConfig) -> bool:
    return all(cocircuit_status(B, c).balanced for c in cocircuits(B))


# ---------------------------------------------------------------------------
# GL(2) equivalence
# ---------------------------------------------------------------------------


def _common_context(B: PlanarConfig, C: PlanarConfig):
    kb, kc = B.context.kind, C.context.kind
    if kb == kc:
        if kb == "number_field" and B.context.field != C.context.field:
            raise PreconditionError("mixed number-field contexts (no composita)")
        return B, C, B.context
    if "numeric" in (kb, kc):
        num = B.context if kb == "numeric" else C.context
        bf = PlanarConfig(
            [(B.context.to_float(x), B.context.to_float(y)) for x, y in B.vectors], num
        )
        cf = PlanarConfig(
            [(C.context.to_float(x), C.context.to_float(y)) for x, y in C.vectors], num
        )
        return bf, cf, num
    # rational embeds into the number field
    fld_cfg, rat_cfg = (B, C) if kb == "number_field" else (C, B)
    ctx = fld_cfg.context
    lifted = PlanarConfig(
        [(ctx.embed(x), ctx.embed(y)) for x, y in rat_cfg.vectors], ctx
    )
    if kb == "number_field":
        return B, lifted, ctx
    return lifted, C, ctx


def _multiset_key(ctx, cfg: PlanarConfig):
    from collections import Counter

    return Counter((ctx.value_key(x), ctx.value_key(y)) for x, y in cfg.vectors)


def _div(ctx, a, b):
    if ctx.kind == "rational":
        return Fraction(a) / Fraction(b)
    if ctx.kind == "number_field":
        return ctx._lift(a) / ctx._lift(b)
    return a / b


def gl2_equivalence(B: PlanarConfig, C: PlanarConfig):
    """Search for invertible g with g*B = C as multisets; None if there is none.

    For each ordered independent pair in C and one fixed independent pair in
    B, the candidate g is uniquely determined and tested; the first valid map
    in the deterministic enumeration order is returned.
    """
    if B.n != C.n:
        return None
    B, C, ctx = _common_context(B, C)
    target = _multiset_key(ctx, C)
    base = None
    for p, q in combinations(range(1, B.n + 1), 2):
        if not ctx.parallel(B.vector(p), B.vector(q)):
            base = (p, q)
            break
    if base is None:
        return _gl2_collinear(B, C, ctx, target)
    bp, bq = B.vector(base[0]), B.vector(base[1])
    d = ctx.det(bp, bq)
    for r in range(1, C.n + 1):
        for s in range(1, C.n + 1):
            if r == s:
                continue
            cr, cs = C.vector(r), C.vector(s)
            if ctx.parallel(cr, cs):
                continue
            # g * [bp bq] = [cr cs]  (columns)
            g = (
                (
                    _div(ctx, cr[0] * bq[1] - cs[0] * bp[1], d),
                    _div(ctx, cs[0] * bp[0] - cr[0] * bq[0], d),
                ),
                (
                    _div(ctx, cr[1] * bq[1] - cs[1] * bp[1], d),
                    _div(ctx, cs[1] * bp[0] - cr[1] * bq[0], d),
                ),
            )
            if _multiset_key(ctx, B.transform(g)) == target:
                return g
    return None


def _gl2_collinear(B, C, ctx, target):
    # both configurations on single lines: scale one direction to the other
    if any(
        not ctx.parallel(C.vector(r), C.vector(s))
        for r, s in combinations(range(1, C.n + 1), 2)
    ):
        return None
    u = B.vector(1)
    for r in range(1, C.n + 1):
        w = C.vector(r)
        s = _div(ctx, w[0], u[0]) if not ctx.is_zero(u[0]) else _div(ctx, w[1], u[1])
        if ctx.is_zero(s):
            continue
        # complete u to a basis and map u -> s*u-direction image w
        g = _collinear_map(ctx, u, w, s)
        if g is not None and _multiset_key(ctx, B.transform(g)) == target:
            return g
    return None


def _collinear_map(ctx, u, w, s):
    # find g with g*u = w; use the rotation completing u, w to bases
    uperp = (-u[1], u[0])
    wperp = (-w[1], w[0])
    d = ctx.det(u, uperp)
    if ctx.is_zero(d):
        return None
    # columns: g * [u uperp] = [w wperp]
    return (
        (
            _div(ctx, w[0] * uperp[1] - wperp[0] * u[1], d),
            _div(ctx, wperp[0] * u[0] - w[0] * uperp[0], d),
        ),
        (
            _div(ctx, w[1] * uperp[1] - wperp[1] * u[1], d),
            _div(ctx, wperp[1] * u[0] - w[1] * uperp[0], d),
        ),
    )


# ---------------------------------------------------------------------------
# the heptagon template
# ---------------------------------------------------------------------------


def heptagon_template(numeric: bool = False) -> PlanarConfig:
    """The uniform balanced seven-vector normal form over Q[x]/(x^3+x^2-2x-1).

    Rows, with x the field generator (x = 2cos(2k*pi/7) in a real embedding):
    (1,0), (0,1), (-1,x), (-x,x^2-1), (1-x^2,1-x^2), (x^2-1,-x), (x,-1).
    """
    fld = heptagon_field()
    x = fld.gen()
    one = fld.one()
    x2 = x * x
    rows = [
        (one, fld.zero()),
        (fld.zero(), one),
        (-one, x),
        (-x, x2 - 1),
        (1 - x2, 1 - x2),
        (x2 - 1, -x),
        (x, -one),
    ]
    if numeric:
        root = max(fld.real_roots())
        return PlanarConfig(
            [(a.evaluate(root), b.evaluate(root)) for a, b in rows], NumericContext()
        )
    return PlanarConfig(rows, NumberFieldContext(fld))


def _certify_heptagon(B: PlanarConfig):
    kind = B.context.kind
    if kind == "rational":
        return None
    if kind == "number_field":
        if B.context.field != heptagon_field():
            raise PreconditionError(
                "heptagon certification is implemented for Q[x]/(x^3+x^2-2x-1) only"
            )
        return gl2_equivalence(B, heptagon_template())
    return gl2_equivalence(B, heptagon_template(numeric=True))


# ---------------------------------------------------------------------------
# the decision tree
# ---------------------------------------------------------------------------


def classify(B: PlanarConfig, certify: bool = True) -> ClassificationResult:
    """Classify a nonconfluent planar configuration with 4 <= n <= 7 vectors.

    The decision order for n = 7 is a, c, d, e, b so that each later test may
    assume the earlier ones failed; the theorem guarantees the cases are
    mutually exclusive (asserted by `theorem_matchers` in the test suite).
    """
    n = B.n
    if not 4 <= n <= 7:
        raise PreconditionError(f"classification requires 4 <= n <= 7, got {n}")
    report = validate(B)
    if not report.ok:
        raise PreconditionError(
            "validation failed: " + ", ".join(report.failures())
        )
    cocs = cocircuits(B)

    if n == 4:
        # every cocircuit is non-splitting and unbalanced
        bad = _first_nonsplitting_unbalanced(B, cocs)
        if bad is None:
            raise InvariantViolation("n=4 configuration with no unbalanced cocircuit")
        return ClassificationResult("a", {"cocircuit": bad.indices})

    if n == 5:
        pairs = _opposite_pairs(B)
        if pairs:
            pair = pairs[0]
            rest = tuple(i for i in range(1, 6) if i not in pair)
            return ClassificationResult("c", {"parts": (pair, rest)})
        bad = _first_nonsplitting_unbalanced(B, cocs)
        if bad is not None:
            return ClassificationResult("a", {"cocircuit": bad.indices})
        return ClassificationResult("b", {"note": "irreducible, all cocircuits balanced (pentagon class)"})

    if n == 6:
        bad = _first_nonsplitting_unbalanced(B, cocs)
        if bad is not None:
            return ClassificationResult("a", {"cocircuit": bad.indices})
        if all(cocircuit_status(B, c).splitting for c in cocs):
            return ClassificationResult(
                "c", {"parts": tuple(c.indices for c in cocs)}
            )
        return _classify6_b(B)

    # n == 7
    bad = _first_nonsplitting_unbalanced(B, cocs)
    if bad is not None:
        return ClassificationResult("a", {"cocircuit": bad.indices})
    if all(cocircuit_status(B, c).splitting for c in cocs):
        return ClassificationResult("c", {"parts": tuple(c.indices for c in cocs)})
    d_wit = _find_d_partition(B)
    if d_wit is not None:
        return ClassificationResult("d", {"parts": d_wit})
    e_wit = _find_e_partition(B)
    if e_wit is not None:
        pair, five, vertex = e_wit
        return ClassificationResult(
            "e", {"pair": pair, "five": five, "pair_parallel_member": vertex}
        )
    # residual case: irreducible with all cocircuits balanced
    if zero_sum_partitions(B) or not _all_balanced(B):
        raise InvariantViolation("classification fell through every case of the theorem")
    witness: dict = {}
    if certify:
        g = _certify_heptagon(B)
        if B.context.kind == "rational":
            raise InvariantViolation(
                "a rational configuration classified as type b; "
                "no lattice configuration can be heptagon-equivalent"
            )
        if g is None:
            raise InvariantViolation("type-b configuration failed heptagon certification")
        witness["gl2_to_heptagon"] = g
    return ClassificationResult("b", witness)


def _find_d_partition(B: PlanarConfig):
    """Lexicographically least zero-sum 2+2+3 partition with a spanning triple."""
    pairs = _opposite_pairs(B)
    best = None
    for a, b in combinations(pairs, 2):
        if set(a) & set(b):
            continue
        rest = tuple(i for i in range(1, B.n + 1) if i not in a and i not in b)
        if not B.context.vec_is_zero(_vec_sum(B, rest)):
            continue
        if not _spans(B, rest):
            continue
        parts = tuple(sorted((tuple(a), tuple(b)))) + (rest,)
        if best is None or parts < best:
            best = parts
    return best


def _find_e_partition(B: PlanarConfig):
    ctx = B.context
    for pair in _opposite_pairs(B):
        five = tuple(i for i in range(1, B.n + 1) if i not in pair)
        sub = _subconfig(B, five)
        if not _is_irreducible_five(B, five):
            continue
        if not _all_balanced(sub):
            continue
        # the pair's line passes through a "pentagon vertex": some member of
        # the five-vector part is parallel to the pair
        vertex = None
        d = B.vector(pair[0])
        for i in five:
            if ctx.parallel(B.vector(i), d):
                vertex = i
                break
        return tuple(pair), five, vertex
    return None


def _classify6_b(B: PlanarConfig):
    """n = 6 residual case: two triangles {l*e1, l*e2, -l*(e1+e2)}."""
    ctx = B.context
    for part1 in combinations(range(1, 7), 3):
        if not ctx.vec_is_zero(_vec_sum(B, part1)):
            continue
        part2 = tuple(i for i in range(1, 7) if i not in part1)
        if not ctx.vec_is_zero(_vec_sum(B, part2)):
            continue
        if not (_spans(B, part1) and _spans(B, part2)):
            continue
        lam = _triangle_scaling(B, part1, part2)
        if lam is not None:
            return ClassificationResult(
                "b", {"parts": (part1, part2), "lambdas": (1, lam)}
            )
    raise InvariantViolation("n=6 configuration matched no case of the list")


def _triangle_scaling(B: PlanarConfig, part1, part2):
    """If g maps part1 to {e1,e2,-e1-e2}, part2 must be a lambda-scaled copy;
    returns lambda (any ordering of part1 as (e1, e2) is tried)."""
    ctx = B.context
    from itertools import permutations

    for u_i, v_i, w_i in permutations(part1):
        u, v, w = B.vector(u_i), B.vector(v_i), B.vector(w_i)
        d = ctx.det(u, v)
        if ctx.is_zero(d):
            continue
        if not ctx.vec_is_zero((u[0] + v[0] + w[0], u[1] + v[1] + w[1])):
            continue
        # coordinates of part2 members in the basis (u, v); need the multiset
        # {(l,0), (0,l), (-l,-l)}
        coords = []
        for i in part2:
            b = B.vector(i)
            x = _div(ctx, ctx.det(b, v), d)
            y = _div(ctx, ctx.det(u, b), d)
            coords.append((x, y))
        for x, y in coords:
            if ctx.is_zero(y) and not ctx.is_zero(x):
                lam = x
                want = {
                    (ctx.value_key(lam), ctx.value_key(lam * 0)),
                    (ctx.value_key(lam * 0), ctx.value_key(lam)),
                    (ctx.value_key(-lam), ctx.value_key(-lam)),
                }
                got = {(ctx.value_key(a), ctx.value_key(b)) for a, b in coords}
                if got == want:
                    return lam
    return None


# ---------------------------------------------------------------------------
# theorem matchers (independent of the decision order; used by property tests)
# ---------------------------------------------------------------------------


def theorem_matchers(B: PlanarConfig) -> dict[str, bool]:
    """Evaluate each case of the seven-vector theorem independently."""
    cocs = cocircuits(B)
    match_a = _first_nonsplitting_unbalanced(B, cocs) is not None
    match_c = all(cocircuit_status(B, c).splitting for c in cocs) and len(cocs) >= 2
    match_d = _find_d_partition(B) is not None
    match_e = _find_e_partition(B) is not None
    match_b = not zero_sum_partitions(B) and _all_balanced(B)
    return {"a": match_a, "b": match_b, "c": match_c, "d": match_d, "e": match_e}


# ---------------------------------------------------------------------------
# balanced classification (types i-v)
# ---------------------------------------------------------------------------


def classify_balanced7(B: PlanarConfig) -> ClassificationResult:
    """Classify a balanced seven-vector configuration into the types
    i (heptagon), ii (pair + pentagon), iii, iv (the binomial families),
    or v (collinear)."""
    if B.n != 7:
        raise PreconditionError("balanced classification requires n = 7")
    ctx = B.context
    for i, v in enumerate(B.vectors):
        if ctx.vec_is_zero(v):
            raise PreconditionError(f"b_{i + 1} is zero")
    cocs = cocircuits(B)
    if len(cocs) == 1:
        return ClassificationResult("v", {"line": cocs[0].indices})
    if not all(cocircuit_status(B, c).balanced for c in cocs):
        raise PreconditionError("configuration is not balanced")
    by_size = sorted(cocs, key=lambda c: -len(c.indices))
    if len(by_size[0].indices) == 5:
        return _classify_iv(B, by_size[0])
    pairs = _opposite_pairs(B)
    disjoint = [
        (a, b) for a, b in combinations(pairs, 2) if not set(a) & set(b)
    ]
    if disjoint:
        return _classify_iii(B)
    if pairs:
        res = _find_e_partition(B)
        if res is None:
            raise InvariantViolation("balanced pair configuration is not of type ii")
        pair, five, vertex = res
        lam = None
        if vertex is not None:
            lam = ctx.abs(ctx.ratio(B.vector(pair[0]), B.vector(vertex)))
        return ClassificationResult(
            "ii", {"pair": pair, "pentagon": five, "vertex": vertex, "lambda": lam}
        )
    g = _certify_heptagon(B) if ctx.kind != "rational" else None
    if ctx.kind == "rational":
        raise InvariantViolation(
            "a rational balanced configuration cannot be uniform (type i)"
        )
    if g is None:
        raise InvariantViolation("uniform balanced configuration failed heptagon certificate")
    return ClassificationResult("i", {"gl2_to_heptagon": g})


def _classify_iii(B: PlanarConfig):
    """Type iii: {e1, e2, -e1-e2, l*e1, -l*e1, m*e2, -m*e2} up to GL(2)."""
    ctx = B.context
    pairs = _opposite_pairs(B)
    for a, b in combinations(pairs, 2):
        if set(a) & set(b):
            continue
        triple = tuple(i for i in range(1, 8) if i not in a and i not in b)
        if not ctx.vec_is_zero(_vec_sum(B, triple)):
            continue
        if not _spans(B, triple):
            continue
        # each pair must be parallel to a member of the triple
        ref_a = ref_b = None
        for t in triple:
            if ctx.parallel(B.vector(t), B.vector(a[0])):
                ref_a = t
            elif ctx.parallel(B.vector(t), B.vector(b[0])):
                ref_b = t
        if ref_a is None or ref_b is None:
            continue
        lam = ctx.abs(ctx.ratio(B.vector(a[0]), B.vector(ref_a)))
        mu = ctx.abs(ctx.ratio(B.vector(b[0]), B.vector(ref_b)))
        return ClassificationResult(
            "iii",
            {
                "lambda": lam,
                "mu": mu,
                "parts": (a, b, triple),
                "axes": (ref_a, ref_b),
            },
        )
    raise InvariantViolation("two disjoint opposite pairs but no type-iii structure")


def _classify_iv(B: PlanarConfig, line: Cocircuit):
    """Type iv: five vectors on a line (paired around a leftover) plus two
    independent vectors summing into the line."""
    ctx = B.context
    on_line = line.indices
    off = tuple(i for i in range(1, 8) if i not in on_line)
    if len(on_line) != 5 or len(off) != 2:
        raise PreconditionError("type iv requires exactly five collinear vectors")
    # pair up the on-line vectors; one leftover remains
    ratios = {
        i: ctx.ratio(B.vector(i), B.vector(on_line[0])) for i in on_line
    }
    used = set()
    pair_ratios = []
    leftover = None
    for i in on_line:
        if i in used:
            continue
        partner = next(
            (
                j
                for j in on_line
                if j != i and j not in used and ctx.is_zero(ratios[i] + ratios[j])
            ),
            None,
        )
        if partner is None:
            if leftover is not None:
                raise InvariantViolation("five-line cocircuit is not balanced as type iv")
            leftover = i
        else:
            used.update((i, partner))
            pair_ratios.append(((i, partner), ratios[i]))
    if leftover is None:
        raise InvariantViolation("type iv needs an unpaired vector on the line")
    ref = ratios[leftover]
    lam = ctx.abs(_div(ctx, pair_ratios[0][1], ref))
    mu = ctx.abs(_div(ctx, pair_ratios[1][1], ref))
    return ClassificationResult(
        "iv",
        {
            "lambda": lam,
            "mu": mu,
            "line": on_line,
            "pairs": (pair_ratios[0][0], pair_ratios[1][0]),
            "leftover": leftover,
            "off_line": off,
        },
    )


# ---------------------------------------------------------------------------
# P^k machinery (uniform configurations)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PkPartition:
    sets: dict  # k -> frozenset of unordered 1-based pairs
    disjoint: bool
    covering: bool

    def to_json(self) -> dict:
        return {
            "sets": {str(k): sorted(map(list, v)) for k, v in self.sets.items()},
            "disjoint": self.disjoint,
            "covering": self.covering,
        }


def pk_partition(B: PlanarConfig) -> PkPartition:
    """P^k = {(i, j) : det(b_k, b_i) = -det(b_k, b_j)}, for uniform B.

    For a balanced configuration indexed counterclockwise these sets are the
    disjoint triples {(k-3, k+3), (k-2, k+2), (k-1, k+1)} mod n.
    """
    ctx = B.context
    n = B.n
    for i, j in combinations(range(1, n + 1), 2):
        if ctx.parallel(B.vector(i), B.vector(j)):
            raise PreconditionError("pk_partition requires a uniform configuration")
    sets = {}
    for k in range(1, n + 1):
        bk = B.vector(k)
        dets = {i: ctx.det(bk, B.vector(i)) for i in range(1, n + 1) if i != k}
        pk = set()
        for i, j in combinations([i for i in range(1, n + 1) if i != k], 2):
            if ctx.is_zero(dets[i] + dets[j]):
                pk.add((i, j))
        sets[k] = frozenset(pk)
    all_pairs = [p for v in sets.values() for p in v]
    disjoint = len(all_pairs) == len(set(all_pairs))
    covering = set().union(*sets.values()) == {
        (i, j) for i, j in combinations(range(1, n + 1), 2)
    } if sets else False
    return PkPartition(sets, disjoint, covering)


def ccw_indexing(B: PlanarConfig) -> tuple[int, ...]:
    """Indices sorted counterclockwise by angle in the real embedding."""
    ctx = B.context
    angles = []
    for i in range(1, B.n + 1):
        x, y = B.vector(i)
        angles.append((math.atan2(ctx.to_float(y), ctx.to_float(x)) % (2 * math.pi), i))
    angles.sort()
    return tuple(i for _, i in angles)


# ---------------------------------------------------------------------------
# essential Cayley detection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CayleyStructure:
    r: int
    groups: tuple[tuple[int, ...], ...]      # 1-based column groups (G1, G2, G3)
    point_sets: tuple[tuple[tuple[int, int], ...], ...]
    gamma: tuple[int, int]
    alpha: tuple[int, int]
    beta: tuple[int, int]
    transform: tuple                          # T with T*A = M over Q
    normal_form: IntMatrix                    # M, original column order

    def to_json(self) -> dict:
        from .exact import format_rational

        return {
            "r": self.r,
            "groups": [list(g) for g in self.groups],
            "point_sets": [[list(p) for p in ps] for ps in self.point_sets],
            "gamma": list(self.gamma),
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "transform": [[format_rational(x) for x in row] for row in self.transform],
            "normal_form": self.normal_form.to_lists(),
        }


def essential_cayley(A: IntMatrix):
    """Detect the essential Cayley structure of a 5 x 7 configuration.

    Returns a CayleyStructure when the Gale dual classifies as type d, or
    (None, diagnostic) otherwise.  The trinomial-system data (gamma, alpha,
    beta) is read off integer vectors in the row space of A with prescribed
    zero patterns; T certifies the change of coordinates exactly.
    """
    if A.rows != 5 or A.cols != 7:
        raise PreconditionError("essential Cayley detection expects a 5 x 7 matrix")
    if A.rank() != 5:
        raise PreconditionError("configuration matrix is rank deficient")
    K = kernel_basis(A)
    B = PlanarConfig.from_matrix(K)
    report = validate(B)
    if not report.ok:
        return None, "validation failed: " + ", ".join(report.failures())
    result = classify(B)
    if result.label != "d":
        return None, f"Gale dual classifies as type {result.label}, not d"
    g1, g2, g3 = result.witness["parts"]

    def pattern_vector(zero_positions, positive_position):
        rows = [K.col(0), K.col(1)]
        for p in zero_positions:
            rows.append(tuple(1 if i == p - 1 else 0 for i in range(7)))
        ker = kernel_basis(IntMatrix(rows))
        if ker.cols != 1:
            raise InvariantViolation("Cayley pattern solve is not one-dimensional")
        vec = [ker.data[i][0] for i in range(7)]
        if vec[positive_position - 1] == 0:
            raise InvariantViolation("degenerate Cayley pattern vector")
        if vec[positive_position - 1] < 0:
            vec = [-x for x in vec]
        return vec

    x1, y1 = g1
    x2, y2 = g2
    x3, yy3, z3 = g3
    m4 = pattern_vector((x1, x2, x3, y2), y1)
    m5 = pattern_vector((x1, x2, x3, y1), y2)
    gamma = (m4[y1 - 1], m5[y2 - 1])
    alpha = (m4[yy3 - 1], m5[yy3 - 1])
    beta = (m4[z3 - 1], m5[z3 - 1])
    if alpha == (0, 0) or beta == (0, 0):
        raise InvariantViolation("degenerate trinomial exponents")
    if (alpha[1] == 0 and beta[1] == 0) or (alpha[0] == 0 and beta[0] == 0):
        raise InvariantViolation("alpha and beta lie on one axis; configuration not essential")
    ind1 = [1 if i + 1 in g1 else 0 for i in range(7)]
    ind2 = [1 if i + 1 in g2 else 0 for i in range(7)]
    ind3 = [1 if i + 1 in g3 else 0 for i in range(7)]
    M = IntMatrix([ind1, ind2, ind3, m4, m5])
    if M.rank() != 5:
        raise InvariantViolation("Cayley normal form is rank deficient")
    T = solve_row_transform(A, M)
    structure = CayleyStructure(
        r=2,
        groups=(g1, g2, g3),
        point_sets=(
            ((0, 0), (gamma[0], 0)),
            ((0, 0), (0, gamma[1])),
            ((0, 0), alpha, beta),
        ),
        gamma=gamma,
        alpha=alpha,
        beta=beta,
        transform=tuple(tuple(row) for row in T),
        normal_form=M,
    )
    return structure, None
