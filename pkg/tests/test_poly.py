import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdkernel.errors import InvalidArity, InvalidPartition, NotAntisymmetric
from cdkernel.poly import (
    MultiPoly,
    alternant,
    divide_by_vandermonde,
    format_rational,
    is_symmetric,
    partition,
    poly_derivative,
    poly_eval,
    schur_polynomial,
    vandermonde_poly,
)
from oracles import inversion_sign, ssyt_schur

X = MultiPoly.variable("x")
X1 = MultiPoly.variable("x1", ("x1", "x2"))
X2 = MultiPoly.variable("x2", ("x1", "x2"))


def test_eval_constant():
    assert poly_eval(MultiPoly.constant(1, ("x",)), [7]) == 1


def test_eval_by_substitution():
    assert poly_eval(X**2 - Fraction(2, 3), [1]) == Fraction(1, 3)


def test_eval_vandermonde_of_two_points():
    assert poly_eval(X2 - X1, [0, 1]) == 1


def test_eval_arity_mismatch():
    with pytest.raises(InvalidArity):
        poly_eval(X2 - X1, [0])


def test_vandermonde_small_cases():
    assert vandermonde_poly(0) == 1
    assert vandermonde_poly(1) == 1
    assert vandermonde_poly(2) == X2 - X1


def test_vandermonde_three_variables():
    v = ("x1", "x2", "x3")
    x1, x2, x3 = (MultiPoly.variable(name, v) for name in v)
    hand = x2 * x3**2 - x2**2 * x3 - x1 * x3**2 + x1**2 * x3 + x1 * x2**2 - x1**2 * x2
    d = vandermonde_poly(3)
    assert d == hand
    assert len(d.terms) == 6


def test_divide_vandermonde_by_itself():
    assert divide_by_vandermonde(X2 - X1, 2) == 1


def test_divide_difference_of_squares():
    assert divide_by_vandermonde(X2**2 - X1**2, 2) == X1 + X2


def test_divide_alternant_of_partition_21():
    # columns in increasing exponent order: det(x_i^{1}, x_i^{3})
    p = alternant([1, 3], ("x1", "x2"))
    assert divide_by_vandermonde(p, 2) == X1 * X2 * (X1 + X2)


def test_divide_rejects_symmetric_input():
    with pytest.raises(NotAntisymmetric):
        divide_by_vandermonde(X1 + X2, 2)


def test_divide_over_named_subset():
    v = ("x1", "x2", "y1")
    y1 = MultiPoly.variable("y1", v)
    p = (MultiPoly.variable("x2", v) - MultiPoly.variable("x1", v)) * y1**2
    assert divide_by_vandermonde(p, 2, ("x1", "x2")) == y1**2


def test_schur_examples():
    assert schur_polynomial((), 2) == 1
    assert schur_polynomial((1,), 2) == X1 + X2
    assert schur_polynomial((2, 1), 2) == X1**2 * X2 + X1 * X2**2


def test_schur_single_box_three_variables_counts_tableaux():
    assert schur_polynomial((1,), 3).eval([1, 1, 1]) == 3


def test_schur_too_many_parts():
    with pytest.raises(InvalidPartition):
        schur_polynomial((1, 1, 1), 2)


def test_partition_canonical_form():
    assert partition((2, 1, 0, 0)) == (2, 1)
    with pytest.raises(InvalidPartition):
        partition((1, 2))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_schur_matches_tableaux_and_is_symmetric(m):
    variables = tuple(f"x{i}" for i in range(1, m + 1))
    for lam in itertools.product(range(4), repeat=m):
        if list(lam) != sorted(lam, reverse=True):
            continue
        s = schur_polynomial(lam, m)
        assert s == ssyt_schur(partition(lam), m, variables)
        assert is_symmetric(s, list(range(m)))
        assert all(c > 0 and c.denominator == 1 for c in s.terms.values())


def test_derivative_examples():
    assert poly_derivative(X**2 - Fraction(2, 3), "x") == 2 * X
    assert poly_derivative(MultiPoly.constant(5, ("x",)), "x") == 0
    p = X1 * X2 * (X1 + X2)
    assert poly_derivative(p, "x1") == 2 * X1 * X2 + X2**2


def test_derivative_unknown_variable():
    with pytest.raises(InvalidArity):
        poly_derivative(X, "y")


def test_canonical_text():
    v = ("x1", "y1")
    p = MultiPoly.variable("x1", v) * MultiPoly.variable("y1", v) / 2 + Fraction(1, 3)
    assert str(p) == "1/2*x1*y1 + 1/3"
    assert str(X**2 - Fraction(2, 3)) == "x^2 - 2/3"
    assert str(-X + 1) == "-x + 1"
    assert str(MultiPoly.constant(0, ("x",))) == "0"
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"


def test_immutable():
    with pytest.raises(AttributeError):
        X.terms = {}


# -- properties --------------------------------------------------------------

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def polys(nvars):
    variables = tuple(f"x{i}" for i in range(1, nvars + 1))
    exps = st.tuples(*[st.integers(0, 3)] * nvars)
    return st.dictionaries(exps, rationals, max_size=6).map(lambda t: MultiPoly(variables, t))


@settings(max_examples=60, deadline=None)
@given(p=polys(2), q=polys(2), point=st.tuples(rationals, rationals))
def test_eval_is_ring_homomorphism(p, q, point):
    assert (p * q).eval(point) == p.eval(point) * q.eval(point)
    assert (p + q).eval(point) == p.eval(point) + q.eval(point)


def _antisymmetrize(f, m):
    total = MultiPoly.constant(0, f.variables)
    for perm in itertools.permutations(range(m)):
        terms = {tuple(e[perm[i]] for i in range(m)): c for e, c in f.terms.items()}
        total = total + MultiPoly(f.variables, terms) * inversion_sign(perm)
    return total


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_divide_by_vandermonde_round_trip(data):
    m = data.draw(st.integers(2, 4))
    f = data.draw(polys(m))
    p = _antisymmetrize(f, m)
    q = divide_by_vandermonde(p, m)
    assert q * vandermonde_poly(m) == p
    assert is_symmetric(q, list(range(m)))
