import random
from fractions import Fraction

import pytest

from galeres.exact import (
    IntMatrix,
    NumberField,
    column_hnf,
    format_rational,
    heptagon_field,
    hermite_normal_form,
    kernel_basis,
    parse_rational,
    row_space_contains,
    smith_normal_form,
    xgcd,
)


def det_exact(M: IntMatrix) -> Fraction:
    m = [list(map(Fraction, r)) for r in M.data]
    n = M.rows
    assert M.cols == n
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def in_row_lattice(H: IntMatrix, vec) -> bool:
    """Integer membership test against a matrix already in row HNF."""
    v = list(vec)
    for row in H.data:
        pivot_col = next((j for j, x in enumerate(row) if x), None)
        if pivot_col is None:
            continue
        if v[pivot_col] % row[pivot_col] == 0:
            q = v[pivot_col] // row[pivot_col]
            v = [a - q * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)


def test_xgcd():
    for a, b in [(12, 18), (-5, 7), (0, 4), (9, 0), (0, 0), (240, 46)]:
        g, x, y = xgcd(a, b)
        assert g == a * x + b * y
        assert g >= 0
        if a or b:
            assert a % g == 0 and b % g == 0


def test_hnf_identity():
    I = IntMatrix.identity(2)
    H, U = hermite_normal_form(I)
    assert H == I and U == I


def test_hnf_example():
    M = IntMatrix([[2, 4], [1, 3]])
    H, U = hermite_normal_form(M)
    assert H == IntMatrix([[1, 1], [0, 2]])
    assert abs(det_exact(U)) == 1
    assert U.mul(M) == H
    # equal row lattices, by mutual integer-combination membership
    for row in M.data:
        assert in_row_lattice(H, row)
    HM, _ = hermite_normal_form(M)
    for row in HM.data:
        assert in_row_lattice(HM, row)


def test_hnf_zero_matrix():
    H, U = hermite_normal_form(IntMatrix([[0]]))
    assert H == IntMatrix([[0]])
    assert U == IntMatrix([[1]])


def test_hnf_idempotent_random():
    rng = random.Random(7)
    for _ in range(60):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 6)
        M = IntMatrix(
            [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        )
        H, U = hermite_normal_form(M)
        assert abs(det_exact(U)) == 1
        assert U.mul(M) == H
        H2, _ = hermite_normal_form(H)
        assert H2 == H
        # pivot normalization: positive pivots, reduced entries above
        for i, row in enumerate(H.data):
            pc = next((j for j, x in enumerate(row) if x), None)
            if pc is None:
                continue
            assert row[pc] > 0
            for k in range(i):
                assert 0 <= H.data[k][pc] < row[pc]


def test_kernel_f2_matches_paper(f2_matrix, f2_gale_rows):
    B = kernel_basis(f2_matrix)
    assert f2_matrix.mul(B).is_zero()
    paper = IntMatrix(f2_gale_rows)
    assert column_hnf(B) == column_hnf(paper)


def test_kernel_single_relation():
    B = kernel_basis(IntMatrix([[1, 1]]))
    assert B.cols == 1
    col = B.col(0)
    assert col in ((1, -1), (-1, 1))


def test_kernel_sum_matrix_hnf():
    B = kernel_basis(IntMatrix([[1, 1, 1]]))
    expected = IntMatrix([[1, 0], [0, 1], [-1, -1]])
    assert column_hnf(B) == column_hnf(expected)
    # Smith-normal-form oracle: saturation index 1
    S, U, V = smith_normal_form(B)
    diag = [S.data[i][i] for i in range(min(S.rows, S.cols))]
    assert diag == [1, 1]


def test_kernel_trivial():
    B = kernel_basis(IntMatrix.identity(3))
    assert B.cols == 0 and B.rows == 3


def test_kernel_random_saturated():
    rng = random.Random(11)
    for _ in range(40):
        d = rng.randint(1, 5)
        n = rng.randint(d, 7)
        A = IntMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(d)])
        B = kernel_basis(A)
        assert A.mul(B).is_zero() if B.cols else True
        assert B.cols == n - A.rank()
        if B.cols:
            assert B.rank() == B.cols
            S, _, _ = smith_normal_form(B)
            diag = [S.data[i][i] for i in range(min(S.rows, S.cols))]
            assert all(x == 1 for x in diag[: B.cols])


def test_smith_normal_form_random():
    rng = random.Random(5)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        M = IntMatrix(
            [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        )
        S, U, V = smith_normal_form(M)
        assert U.mul(M).mul(V) == S
        assert abs(det_exact(U)) == 1
        assert abs(det_exact(V)) == 1
        diag = [S.data[i][i] for i in range(min(rows, cols))]
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert S.data[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            if a == 0:
                assert b == 0
            else:
                assert b % a == 0
        assert all(x >= 0 for x in diag)


def test_row_space_contains():
    A = IntMatrix([[1, 1, 0], [0, 1, 1]])
    assert row_space_contains(A, [1, 2, 1])
    assert not row_space_contains(A, [1, 0, 1])


def test_nf_invert_identity():
    F = heptagon_field()
    assert F.one().inverse() == F.one()


def test_nf_invert_generator():
    F = heptagon_field()
    x = F.gen()
    inv = x.inverse()
    assert inv == F.element([-2, 1, 1])  # x^2 + x - 2
    assert x * inv == F.one()


def test_nf_reduce_cube():
    F = heptagon_field()
    x = F.gen()
    assert x * x * x == F.element([1, 2, -1])  # -x^2 + 2x + 1


def test_nf_zero_division():
    F = heptagon_field()
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()


def test_nf_field_axioms_random():
    F = NumberField((-1, -2, 1, 1))
    rng = random.Random(3)

    def rand_elt():
        return F.element([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)])

    for _ in range(40):
        a, b, c = rand_elt(), rand_elt(), rand_elt()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inverse() == F.one()


def test_nf_real_roots():
    F = heptagon_field()
    roots = F.real_roots()
    assert len(roots) == 3
    # 2cos(2pi/7) ~ 1.24698
    assert any(abs(r - 1.2469796) < 1e-6 for r in roots)


def test_nf_mixed_context_error():
    F1 = NumberField((-1, -2, 1, 1))
    F2 = NumberField((-2, 0, 1))
    with pytest.raises(ValueError):
        F1.gen() + F2.gen()


def test_rational_serialization():
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(5)) == "5"
    assert parse_rational("7/2") == Fraction(7, 2)
    assert parse_rational("-3") == -3
    assert parse_rational(4) == 4
    with pytest.raises(ValueError):
        parse_rational(None)


def test_nf_serialization():
    F = heptagon_field()
    payload = F.element([1, Fraction(1, 2), 0]).to_json()
    assert payload == {"coeffs": ["1", "1/2", "0"], "minpoly": [-1, -2, 1, 1]}
