import math
import random

import pytest

from galeres.configs import PreconditionError
from galeres.laurent import LaurentPolynomial
from galeres.operators import DifferentialOperator, hypergeometric_generators, laurent_expand
from galeres.residues import (
    CAYLEY_VARS,
    SERIES_WEIGHT,
    CayleySystem,
    euler_jacobi_test,
    f2_fixtures,
    numeric_residue_oracle,
    residue_series,
    series_for_degree,
    shift_c,
)


def test_system_invariants():
    with pytest.raises(PreconditionError):
        CayleySystem((0, 1), (1, 0), (0, 1))
    with pytest.raises(PreconditionError):
        CayleySystem((1, 1), (0, 0), (0, 1))
    with pytest.raises(PreconditionError):
        CayleySystem((1, 1), (1, 0), (2, 0))  # both on the t1 axis
    with pytest.raises(PreconditionError):
        CayleySystem((1, 1), (0, 2), (0, -1))  # both on the t2 axis


def test_f2_matrix_matches_fixture(f2_system, f2_matrix):
    assert f2_system.matrix() == f2_matrix


def test_residue_series_f2_low_order(f2_system):
    res = residue_series(f2_system, (0, 0), 2)
    t = res.series.poly.terms
    assert t[(-1, 0, -1, 0, -1, 0, 0)] == 1      # 1/(x1 x2 x3)
    assert t[(0, -1, -1, 0, -2, 1, 0)] == 1      # y3/(y1 x2 x3^2)
    assert t[(-1, 0, 0, -1, -2, 0, 1)] == 1      # z3/(x1 y2 x3^2)
    assert t[(0, -1, 0, -1, -3, 1, 1)] == 2      # 2 y3 z3/(y1 y2 x3^3)
    assert all(c > 0 for c in t.values())


def test_residue_series_homogeneity(f2_system):
    A = f2_system.matrix()
    res = residue_series(f2_system, (2, -1), 5)
    want = (-1, -1, -1, -2, 1)
    for e in res.series.poly.terms:
        assert A.mul_vector(e) == want


def test_residue_series_parity_even_m1():
    sys_ = CayleySystem((2, 1), (1, 0), (0, 1))
    res = residue_series(sys_, (0, 0), 6)
    assert res.solved
    assert all(m[0] % 2 == 0 for m, _ in res.solved)


def test_residue_series_parity_obstruction():
    sys_ = CayleySystem((2, 1), (2, 0), (0, 1))
    res = residue_series(sys_, (1, 0), 8)
    assert not res.solved
    assert res.series.poly.is_zero


def test_residue_series_eventually_nonzero(f2_system):
    # solutions exist for infinitely many m once one exists
    sys_ = CayleySystem((3, 2), (1, 2), (2, 1))
    res = residue_series(sys_, (0, 0), 12)
    assert len(res.solved) > 2


def test_shift_x1_matches_direct_scaling(f2_system):
    base = residue_series(f2_system, (0, 0), 6)
    shifted = shift_c(base, "x1")
    assert shifted.c == (2, 1, 1)
    assert shifted.a == (0, 0)
    # -d_x1 applied termwise
    direct = base.series.poly.derivative(0) * -1
    assert shifted.series.poly == direct


def test_shift_path_independence(f2_system):
    base_a = shift_c(shift_c(residue_series(f2_system, (0, 0), 6), "x1"), "x3")
    base_b = shift_c(shift_c(residue_series(f2_system, (0, 0), 6), "x3"), "x1")
    assert base_a.c == base_b.c == (2, 1, 2)
    assert base_a.series.poly == base_b.series.poly
    # mixed path through y3 (shifts a by alpha) against z3-then-y3 ordering
    p1 = shift_c(shift_c(residue_series(f2_system, (1, 1), 6), "y3"), "z3")
    p2 = shift_c(shift_c(residue_series(f2_system, (1, 1), 6), "z3"), "y3")
    assert p1.c == p2.c and p1.a == p2.a
    assert p1.series.poly == p2.series.poly


def test_shift_z3_reaches_closed_form(f2_system):
    fx = f2_fixtures()
    sh = shift_c(residue_series(f2_system, (1, 0), 7), "z3")
    assert sh.c == (1, 1, 2) and sh.a == (1, 1) and sh.order == 6
    expansion = laurent_expand(fx["R_112_11"], SERIES_WEIGHT, 6)
    assert sh.series.poly == expansion.poly


def test_series_for_degree_canonical_path(f2_system):
    via_x = series_for_degree(f2_system, (1, 1, 2), (1, 1), 6)
    via_z = shift_c(residue_series(f2_system, (1, 0), 7), "z3")
    assert via_x.series.poly == via_z.series.poly


def test_shift_order_exhaustion(f2_system):
    res = residue_series(f2_system, (0, 0), 0)
    with pytest.raises(PreconditionError):
        shift_c(res, "z3")


def test_series_annihilated_up_to_frontier(f2_system):
    # generators cannot create low-order terms from the discarded tail
    res = residue_series(f2_system, (0, 0), 8)
    A = f2_system.matrix()
    frontier = res.series.order
    w = SERIES_WEIGHT
    for op in hypergeometric_generators(A, (-1, -1, -1, 0, 0), 2, CAYLEY_VARS):
        residual = op.apply_polynomial(res.series.poly)
        if residual.is_zero:
            continue
        shift = max(
            sum(a * b for a, b in zip(w, t.dexp)) for t in op.terms
        )
        assert residual.weight_min(w) > frontier - abs(shift) - 1


def test_euler_jacobi_examples(f2_system):
    assert not euler_jacobi_test(f2_system, (1, 1, 1), (0, 0))
    assert euler_jacobi_test(f2_system, (1, 1, 2), (1, 1))
    assert not euler_jacobi_test(f2_system, (0, 1, 1), (2, 2))


def test_euler_jacobi_degenerate_triangle():
    sys_ = CayleySystem((1, 1), (1, 1), (2, 2))
    # A3 degenerates to a segment; the Minkowski sum is still 2-dimensional
    assert euler_jacobi_test(sys_, (1, 1, 1), (1, 1))


def test_oracle_f2_at_ones(f2_system):
    val = numeric_residue_oracle(f2_system, (0, 0), "12", [1] * 7)
    assert abs(val - (-1)) < 1e-12


def test_oracle_equals_closed_form(f2_system):
    fx = f2_fixtures()
    rng = random.Random(17)
    for _ in range(5):
        params = [
            rng.uniform(0.5, 2.0)
            * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))
            for _ in range(7)
        ]
        oracle = numeric_residue_oracle(f2_system, (0, 0), "12", params)
        closed = complex(fx["R12"].evaluate(params))
        assert abs(oracle - closed) < 1e-9 * max(1.0, abs(closed))


def test_oracle_stokes_identity(f2_system):
    rng = random.Random(23)
    params = [
        rng.uniform(0.5, 2.0)
        * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))
        for _ in range(7)
    ]
    r12 = numeric_residue_oracle(f2_system, (1, 1), "12", params)
    r13 = numeric_residue_oracle(f2_system, (1, 1), "13", params)
    r23 = numeric_residue_oracle(f2_system, (1, 1), "23", params)
    assert abs(r12 + r13) < 1e-9
    assert abs(r12 - r23) < 1e-9


def test_series_converges_to_oracle(f2_system):
    # inside |u| + |v| < 1: x3 large, everything else unit scale
    params = [1, 1, 1, 1, 10, 1, 1]
    res = residue_series(f2_system, (0, 0), 12)
    approx = complex(res.series.poly.evaluate([complex(p) for p in params]))
    oracle = numeric_residue_oracle(f2_system, (0, 0), "12", params)
    assert abs(approx - oracle) < 1e-8


def test_oracle_general_gamma():
    sys_ = CayleySystem((2, 1), (1, 1), (0, 1))
    res = residue_series(sys_, (0, 0), 20)
    rng = random.Random(31)
    params = [
        rng.uniform(0.8, 1.2)
        * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))
        for _ in range(7)
    ]
    params[4] = 30.0 + rng.uniform(0, 3)
    oracle = numeric_residue_oracle(sys_, (0, 0), "12", params)
    approx = complex(res.series.poly.evaluate(params))
    assert abs(oracle - approx) < 1e-8 * max(abs(oracle), 1e-6)


def test_fixture_closed_forms():
    from galeres.laurent import RationalFunction

    fx = f2_fixtures()
    x1, y1, x2, y2, x3, y3, z3 = (
        LaurentPolynomial.variable(CAYLEY_VARS, n) for n in CAYLEY_VARS
    )
    disc = y1 * y2 * x3 - x1 * y2 * y3 - y1 * x2 * z3
    assert fx["R12"] == RationalFunction(y1 * y2, x1 * x2 * disc)
    assert fx["R1"] == RationalFunction(y1, x1 * x2 * (y1 * x3 - x1 * y3))
    assert fx["R2"] == RationalFunction(y2, x1 * x2 * (y2 * x3 - x2 * z3))
    assert fx["R_112_11"] == RationalFunction(y1 * y2, disc * disc)
    assert set(fx) == {"R12", "R1", "R2", "R3", "R_112_11"}


def test_result_json(f2_system):
    res = residue_series(f2_system, (0, 0), 1)
    payload = res.to_json()
    assert payload["c"] == [1, 1, 1]
    assert payload["m_order"] == 1
    assert payload["terms"]
