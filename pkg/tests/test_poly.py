import math

import pytest
from hypothesis import given, settings, strategies as st

from monodimer.errors import ExactArithmeticError
from monodimer.poly import (
    MPoly,
    PolyMatrix,
    det_fraction_free,
    det_numeric,
    exact_div,
    nth_root_poly,
)

X = MPoly.var("x")
A = MPoly.var("a")
B = MPoly.var("b")


def test_constants_and_vars():
    assert MPoly.const(0).is_zero
    assert MPoly.const(3).evaluate({}) == 3
    assert X.evaluate({"x": 2.5}) == 2.5
    assert (X + 1 - X).evaluate({"x": 7}) == 1


def test_arithmetic_small():
    p = (X + A) * (X - A)
    assert p == X * X - A * A
    assert (X + A) ** 2 == X * X + 2 * X * A + A * A
    assert ((X + 1) ** 3).num_terms() == 4


def test_str_graded_lex():
    p = X ** 4 + 2 * A * X + A ** 3 * B
    assert str(p) == "a^3*b + x^4 + 2*a*x"
    assert str(MPoly.zero()) == "0"
    assert str(-X) == "-x"


def test_json_round_trip():
    p = (X + A + 1) ** 3
    q = MPoly.from_json(p.to_json())
    assert p == q


def test_exact_div():
    p = (X + A) * (X * X + B)
    assert exact_div(p, X + A) == X * X + B
    with pytest.raises(ExactArithmeticError):
        exact_div(X * X + 1, X + 1)


def test_nth_root():
    p = (X * X + A * A + 3) ** 8
    r = nth_root_poly(p, 8)
    assert r == X * X + A * A + 3
    assert nth_root_poly(p + 1, 8) is None
    assert nth_root_poly(p, 3) is None


def test_det_small():
    m = PolyMatrix([[X, A], [-A, X]])
    assert det_fraction_free(m) == X * X + A * A
    assert det_numeric(m, {"x": 1.0, "a": 2.0}) == pytest.approx(5.0)


def test_det_singular():
    m = PolyMatrix([[X, X], [X, X]])
    assert det_fraction_free(m).is_zero
    assert det_numeric(m, {"x": 1.0}) == pytest.approx(0.0)


coeffs = st.integers(min_value=-9, max_value=9)


def poly_strategy():
    term = st.tuples(coeffs, st.integers(0, 3), st.integers(0, 3))
    return st.lists(term, min_size=0, max_size=5).map(
        lambda ts: sum(
            (MPoly.monomial(c, {"x": i, "a": j}) for c, i, j in ts),
            MPoly.zero(),
        )
    )


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert (p - p).is_zero


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), poly_strategy())
def test_exact_div_round_trip(p, q):
    if q.is_zero:
        return
    assert exact_div(p * q, q) == p


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), poly_strategy(),
       st.floats(-2, 2), st.floats(-2, 2))
def test_evaluate_is_homomorphism(p, q, xv, av):
    env = {"x": xv, "a": av}
    lhs = (p * q + p).evaluate(env)
    rhs = p.evaluate(env) * q.evaluate(env) + p.evaluate(env)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-6)


def test_det_matches_numeric_eval():
    # polynomial determinant evaluated == numeric determinant
    entries = [[X + A, A * B, MPoly.const(2)],
               [B, X * X, A],
               [MPoly.one(), -B, X]]
    m = PolyMatrix(entries)
    env = {"x": 1.3, "a": 0.7, "b": -2.1}
    assert det_fraction_free(m).evaluate(env) == pytest.approx(
        det_numeric(m, env), rel=1e-10)
