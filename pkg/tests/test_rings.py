from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lckholonomy.rings import (
    ExpressionError,
    QuadraticNumber,
    SpherePolynomial,
    as_fraction,
    evaluate_uniform,
    frame_derivation,
    parse_expression,
    reduce,
)

M = 4
X = sympy.symbols(f"x1:{M + 1}")


def poly(text, m=M):
    return SpherePolynomial.parse(m, text)


def x(j, m=M):
    return SpherePolynomial.variable(m, j)


# -- oracles -------------------------------------------------------------------


def to_sympy(terms, m=M):
    xs = sympy.symbols(f"x1:{m + 1}")
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[v**k for v, k in zip(xs, e)])
                       for e, c in terms.items()])


def sympy_canonical(expr, m=M):
    """Remainder on division by ``xm^2 - (1 - sum_{j<m} xj^2)`` with respect to ``xm``."""
    xs = sympy.symbols(f"x1:{m + 1}")
    relation = xs[-1] ** 2 - (1 - sum(v**2 for v in xs[:-1]))
    return sympy.expand(sympy.rem(sympy.expand(expr), relation, xs[-1]))


def sympy_derivation(i, expr, m=M):
    """Tangential projection of the ambient partial derivative: d_i - x_i * (Euler operator)."""
    xs = sympy.symbols(f"x1:{m + 1}")
    euler = sum(v * sympy.diff(expr, v) for v in xs)
    return sympy.diff(expr, xs[i - 1]) - xs[i - 1] * euler


def raw_product(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return out


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
monomials = st.tuples(*[st.integers(0, 3)] * M)
raw_polys = st.dictionaries(monomials, coeffs, max_size=5)


# -- worked examples ---------------------------------------------------------------


def test_sum_of_squares_reduces_to_one():
    assert sum((x(j) ** 2 for j in range(1, 5)), SpherePolynomial.constant(M, 0)) == 1


def test_x4_squared_x1():
    assert x(4) ** 2 * x(1) == poly("x1 - x1^3 - x1*x2^2 - x1*x3^2")


def test_frame_derivation_examples():
    assert frame_derivation(1, x(1)) == poly("1 - x1^2")
    assert frame_derivation(1, Fraction(1)) == 0
    assert frame_derivation(1, SpherePolynomial.constant(M, 1)) == 0
    assert frame_derivation(2, x(1) * x(2)) == poly("x1 - 2*x1*x2^2")


def test_frame_derivation_index_out_of_range():
    with pytest.raises(IndexError):
        frame_derivation(5, x(1))


def test_evaluate_uniform_examples():
    assert evaluate_uniform(x(1) * x(2), 4) == Fraction(1, 4)
    sqrt6_over_6 = evaluate_uniform(x(1, 6), 6)
    assert sqrt6_over_6 == QuadraticNumber(0, Fraction(1, 6), 6)
    assert sqrt6_over_6 * sqrt6_over_6 == Fraction(1, 6)
    p = poly("1 - x1^2 - x2^2 - x3^2 - x4^2", 6)
    assert evaluate_uniform(p, 6) == Fraction(1, 3)


def test_canonical_form_has_degree_at_most_one_in_last_variable():
    p = x(4) ** 5 * x(2) + x(4) ** 3
    assert all(e[-1] <= 1 for e in p.terms)


def test_constants_embed():
    assert SpherePolynomial.constant(3, Fraction(2, 3)) == Fraction(2, 3)
    assert SpherePolynomial.constant(3, 0) == 0


def test_mixed_ring_sizes_rejected():
    with pytest.raises(ValueError):
        x(1, 3) + x(1, 4)


# -- parsing ---------------------------------------------------------------------------


def test_parse_expression():
    assert parse_expression("x1*x2 - 1/2", 4) == x(1) * x(2) - Fraction(1, 2)
    assert parse_expression("-(1/2)*x3^2", 4) == x(3) ** 2 * Fraction(-1, 2)
    assert parse_expression("x1**2 + x2^2 + x3^2 + x4^2", 4) == 1
    assert parse_expression("3/4") == Fraction(3, 4)


@pytest.mark.parametrize("text,column", [("1 +* x1", 4), ("x9", 1), ("(1", 3), ("1/0", 2)])
def test_parse_errors_carry_column(text, column):
    with pytest.raises(ExpressionError) as info:
        parse_expression(text, 4)
    assert info.value.column == column


def test_variables_rejected_without_ring():
    with pytest.raises(ExpressionError):
        parse_expression("x1")


# -- rationals and quadratic numbers -------------------------------------------------------


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("-7/21") == Fraction(-1, 3)


@given(coeffs, coeffs, coeffs, coeffs, st.sampled_from([2, 3, 6, 10]))
def test_quadratic_ring_axioms(a, b, c, d, root):
    p = QuadraticNumber(a, b, root)
    q = QuadraticNumber(c, d, root)
    assert (p * q) == QuadraticNumber(a * c + b * d * root, a * d + b * c, root)
    assert p * q == q * p
    assert p + q - q == p
    if p != 0:
        assert p * p.inverse() == 1


def test_quadratic_with_zero_b_is_rational():
    assert QuadraticNumber(Fraction(3, 4), 0, 6) == Fraction(3, 4)


def test_perfect_square_folds():
    assert QuadraticNumber(1, 2, 4) == 5
    assert QuadraticNumber(1, 2, 4).is_rational()


# -- properties over randomized polynomials -------------------------------------------------


@settings(max_examples=200)
@given(raw_polys)
def test_reduce_matches_division_oracle(terms):
    ours = SpherePolynomial(M, terms)
    assert sympy.expand(to_sympy(ours.terms) - sympy_canonical(to_sympy(terms))) == 0


@settings(max_examples=200)
@given(raw_polys, raw_polys)
def test_reduce_is_additive_and_multiplicative(p, q):
    rp, rq = SpherePolynomial(M, p), SpherePolynomial(M, q)
    total = dict(p)
    for e, c in q.items():
        total[e] = total.get(e, 0) + c
    assert SpherePolynomial(M, total) == rp + rq
    assert SpherePolynomial(M, raw_product(p, q)) == reduce(rp * rq)


@settings(max_examples=200)
@given(raw_polys)
def test_sphere_relation_times_q_vanishes(q):
    rel = sum((x(j) ** 2 for j in range(1, M + 1)), SpherePolynomial.constant(M, -1))
    assert rel * SpherePolynomial(M, q) == 0


@settings(max_examples=200)
@given(raw_polys, raw_polys, st.integers(1, M))
def test_derivation_leibniz(p, q, i):
    P, Q = SpherePolynomial(M, p), SpherePolynomial(M, q)
    assert (P * Q).derive(i) == P.derive(i) * Q + P * Q.derive(i)


@settings(max_examples=200)
@given(raw_polys, st.integers(1, M))
def test_derivation_matches_tangent_projection(p, i):
    ours = SpherePolynomial(M, p).derive(i)
    oracle = sympy_canonical(sympy_derivation(i, to_sympy(p)))
    assert sympy.expand(to_sympy(ours.terms) - oracle) == 0


@pytest.mark.parametrize("i", range(1, M + 1))
def test_derivation_respects_sphere(i):
    raw = {tuple(2 if k == j else 0 for k in range(M)): Fraction(1) for j in range(M)}
    assert SpherePolynomial(M, raw).derive(i) == 0
    # derivative of the raw sum before reduction
    assert sympy.expand(sympy_derivation(i, sum(v**2 for v in X)) - 2 * X[i - 1] * (1 - sum(v**2 for v in X))) == 0


@settings(max_examples=200)
@given(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 6), coeffs, max_size=5))
def test_evaluate_after_reduce_matches_direct_substitution(p):
    # m = 6 so that sqrt(m) is irrational
    ours = evaluate_uniform(SpherePolynomial(6, p), 6)
    xs = sympy.symbols("x1:7")
    direct = sympy.expand(to_sympy(p, 6).subs({v: 1 / sympy.sqrt(6) for v in xs}))
    expected = (sympy.Rational(ours.a.numerator, ours.a.denominator)
                + sympy.Rational(ours.b.numerator, ours.b.denominator) * sympy.sqrt(6))
    assert sympy.expand(direct - expected) == 0
