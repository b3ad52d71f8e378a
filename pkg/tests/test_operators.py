import random
from fractions import Fraction
from itertools import product

import pytest

from galeres.laurent import LaurentPolynomial, RationalFunction
from galeres.operators import (
    DegenerateWeightError,
    DerivativeTable,
    DifferentialOperator,
    OpTerm,
    annihilation_check,
    apply_operator,
    hypergeometric_generators,
    laurent_expand,
    stability_check,
)
from galeres.residues import CAYLEY_VARS, CayleySystem, f2_fixtures


def _var(name):
    return LaurentPolynomial.variable(CAYLEY_VARS, name)


def test_generators_bound_zero(f2_matrix):
    ops = hypergeometric_generators(f2_matrix, (-1, -1, -1, 0, 0), 0, CAYLEY_VARS)
    assert len(ops) == 5
    assert all(op.tag.startswith("euler") for op in ops)


def test_generators_include_basis_torics(f2_matrix):
    ops = hypergeometric_generators(f2_matrix, (-1, -1, -1, 0, 0), 1, CAYLEY_VARS)
    texts = {str(op) for op in ops}
    # from nu1 = (1,-1,0,0,-1,1,0): d_x1 d_y3 - d_y1 d_x3
    assert any("d_x1*d_y3 - d_y1*d_x3" in t for t in texts)
    # from nu2 = (0,0,1,-1,-1,0,1): d_x2 d_z3 - d_y2 d_x3
    assert any("d_x2*d_z3 - d_y2*d_x3" in t for t in texts)


def test_euler_operator_row4(f2_matrix):
    ops = hypergeometric_generators(f2_matrix, (-1, -1, -1, 0, 0), 0, CAYLEY_VARS)
    row4 = str(ops[3])
    assert "y1*d_y1" in row4 and "y3*d_y3" in row4


def test_apply_power_rule():
    fx = f2_fixtures()
    r3 = fx["R3"]
    op = DifferentialOperator(
        CAYLEY_VARS, [OpTerm(1, (0,) * 7, (1, 0, 0, 0, 0, 0, 0))]
    )
    out = apply_operator(op, r3)
    x1, x2, x3 = _var("x1"), _var("x2"), _var("x3")
    assert out == RationalFunction(
        LaurentPolynomial.constant(CAYLEY_VARS, -1), x1 * x1 * x2 * x3
    )


def test_euler_weight_on_r3():
    # (x1 d_x1 + y1 d_y1) R3 = -R3
    fx = f2_fixtures()
    op = DifferentialOperator.euler(CAYLEY_VARS, (1, 1, 0, 0, 0, 0, 0), 0)
    out = apply_operator(op, fx["R3"])
    assert out == -fx["R3"]


def test_toric_kills_r12():
    fx = f2_fixtures()
    nu1 = (1, -1, 0, 0, -1, 1, 0)
    op = DifferentialOperator.toric(CAYLEY_VARS, nu1)
    assert apply_operator(op, fx["R12"]).is_zero


def test_annihilation_f2_r12(f2_matrix):
    fx = f2_fixtures()
    rep = annihilation_check(f2_matrix, (-1, -1, -1, 0, 0), fx["R12"], bound=2)
    assert rep.passed


def test_annihilation_f2_r3(f2_matrix):
    fx = f2_fixtures()
    rep = annihilation_check(f2_matrix, (-1, -1, -1, 0, 0), fx["R3"], bound=2)
    assert rep.passed


def test_annihilation_degree_mismatch(f2_matrix):
    one = LaurentPolynomial.constant(CAYLEY_VARS, 1)
    f = RationalFunction(one, _var("x1"))
    rep = annihilation_check(f2_matrix, (0, 0, 0, 0, 0), f, bound=1)
    assert not rep.passed
    assert any("euler" in failure for failure in rep.failures)


def test_euler_consistency_on_monomials(f2_matrix):
    rng = random.Random(8)
    for _ in range(20):
        u = tuple(rng.randint(-3, 3) for _ in range(7))
        alpha = f2_matrix.mul_vector(u)
        mono = RationalFunction.from_polynomial(
            LaurentPolynomial.monomial(CAYLEY_VARS, u)
        )
        for i in range(5):
            op = DifferentialOperator.euler(CAYLEY_VARS, f2_matrix.data[i], alpha[i])
            assert apply_operator(op, mono).is_zero


def test_toric_on_monomials_brute_force(f2_matrix):
    # d^{nu+} x^u = [u]_{nu+} x^{u-nu+}; the toric operator annihilates the
    # monomial exactly when both falling factorials vanish
    def falling(u, v):
        out = 1
        for a, k in zip(u, v):
            for j in range(k):
                out *= a - j
        return out

    nu1 = (1, -1, 0, 0, -1, 1, 0)
    plus = tuple(max(x, 0) for x in nu1)
    minus = tuple(max(-x, 0) for x in nu1)
    op = DifferentialOperator.toric(CAYLEY_VARS, nu1)
    for u in product((-1, 0, 1, 2), repeat=7):
        mono = RationalFunction.from_polynomial(
            LaurentPolynomial.monomial(CAYLEY_VARS, u)
        )
        result = apply_operator(op, mono)
        should_vanish = falling(u, plus) == 0 and falling(u, minus) == 0
        assert result.is_zero == should_vanish


def test_derivative_table_matches_direct():
    fx = f2_fixtures()
    table = DerivativeTable(fx["R12"])
    direct = fx["R12"].derivative(0).derivative(5)
    assert table.as_rational((1, 0, 0, 0, 0, 1, 0)) == direct


def test_stability_unstable_fixtures():
    fx = f2_fixtures()
    rep = stability_check(fx["R3"], bound=2)
    assert not rep.stable_up_to_bound
    assert rep.killing_derivative == (0, 1, 0, 0, 0, 0, 0)  # d_y1
    rep = stability_check(fx["R1"], bound=2)
    assert rep.killing_derivative == (0, 0, 0, 1, 0, 0, 0)  # d_y2
    rep = stability_check(fx["R2"], bound=2)
    assert rep.killing_derivative == (0, 1, 0, 0, 0, 0, 0)  # d_y1


def test_stability_constant_unstable():
    one = RationalFunction.from_polynomial(
        LaurentPolynomial.constant(CAYLEY_VARS, 1)
    )
    rep = stability_check(one, bound=2)
    assert not rep.stable_up_to_bound
    assert sum(rep.killing_derivative) == 1


def test_stability_r12_small_bound():
    fx = f2_fixtures()
    rep = stability_check(fx["R12"], bound=3)
    assert rep.stable_up_to_bound


def test_laurent_expand_binomial_series():
    uv = ("u", "v")
    one = LaurentPolynomial.constant(uv, 1)
    u = LaurentPolynomial.variable(uv, "u")
    v = LaurentPolynomial.variable(uv, "v")
    ts = laurent_expand(RationalFunction(one, one - u - v), (1, 1), 4)
    import math

    for m in range(5):
        for n in range(5 - m):
            assert ts.poly.terms[(m, n)] == math.comb(m + n, m)
    assert all(sum(e) <= 4 for e in ts.poly.terms)


def test_laurent_expand_monomial():
    uv = ("u", "v")
    one = LaurentPolynomial.constant(uv, 1)
    xinv = RationalFunction(one, LaurentPolynomial.variable(uv, "u"))
    ts = laurent_expand(xinv, (1, 1), 0)
    assert ts.poly == LaurentPolynomial.monomial(uv, (-1, 0))


def test_laurent_expand_degenerate_weight():
    uv = ("u", "v")
    one = LaurentPolynomial.constant(uv, 1)
    u = LaurentPolynomial.variable(uv, "u")
    v = LaurentPolynomial.variable(uv, "v")
    with pytest.raises(DegenerateWeightError):
        laurent_expand(RationalFunction(one, u + v), (1, 1), 3)


def test_laurent_expand_contract_property():
    # Q * S - P has minimum w-weight > order
    rng = random.Random(21)
    uv = ("u", "v")
    for _ in range(25):
        qterms = {(0, 0): rng.randint(1, 3)}
        for _ in range(3):
            e = (rng.randint(0, 2), rng.randint(0, 2))
            if e != (0, 0):
                qterms[e] = rng.randint(-3, 3)
        q = LaurentPolynomial(uv, qterms)
        pterms = {
            (rng.randint(-1, 2), rng.randint(-1, 2)): rng.randint(-4, 4)
            for _ in range(3)
        }
        p = LaurentPolynomial(uv, pterms)
        if p.is_zero or q.is_zero:
            continue
        f = RationalFunction(p, q)
        w = (1, 1)
        weights = {sum(a * b for a, b in zip(w, e)) for e in f.den.terms}
        if len([x for x in f.den.terms if sum(x) == min(weights)]) != 1:
            continue
        order = rng.randint(1, 5)
        ts = laurent_expand(f, w, order)
        resid = f.den * ts.poly - f.num
        if not resid.is_zero:
            assert resid.weight_min(w) > order


def test_operator_str_and_apply_polynomial():
    op = DifferentialOperator.toric(CAYLEY_VARS, (1, -1, 0, 0, -1, 1, 0))
    p = LaurentPolynomial.monomial(CAYLEY_VARS, (2, 1, 0, 0, 1, 1, 0), 5)
    out = op.apply_polynomial(p)
    # d_x1 d_y3 gives 2*1*5 x^(1,1,0,0,1,0,0); d_y1 d_x3 gives 1*1*5 x^(2,0,0,0,0,1,0)
    assert out.terms[(1, 1, 0, 0, 1, 0, 0)] == 10
    assert out.terms[(2, 0, 0, 0, 0, 1, 0)] == -5
