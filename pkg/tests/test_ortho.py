import itertools
from fractions import Fraction

import pytest

from cdkernel.errors import CoincidentPoints, DegenerateMeasure, InvalidArity
from cdkernel.measure import Measure, integrate_sym, pair
from cdkernel.ortho import basis_minor, build_system, cd_kernel, chi, complement, subsets
from cdkernel.poly import MultiPoly
from conftest import random_system, small_rational
from oracles import monic_orthogonal_hankel, reproducing_kernel_from_gram, vandermonde_value

X = MultiPoly.variable("x")


def test_m3_degree_two(m3):
    sys = build_system(m3, 2)
    assert sys.polys == (MultiPoly.constant(1, ("x",)), X, X**2 - Fraction(2, 3))
    assert sys.norms == (3, 2)


def test_m3_degree_one(m3):
    sys = build_system(m3, 1)
    assert sys.polys[1] == X
    assert sys.norms == (3,)


def test_m3_top_polynomial_vanishes_on_support(m3):
    sys = build_system(m3, 3)
    assert sys.polys[3] == X**3 - X
    assert all(sys.value(3, p) == 0 for p in m3.points)


def test_too_many_degrees(m3):
    with pytest.raises(DegenerateMeasure):
        build_system(m3, 4)


def test_degenerate_signed_measure():
    with pytest.raises(DegenerateMeasure):
        build_system(Measure((-1, 1), (1, -1)), 1)


def test_cd_kernel_examples(m3_system):
    assert cd_kernel(m3_system, 0, 1, "sum") == Fraction(1, 3)
    assert cd_kernel(m3_system, 1, 1, "sum") == Fraction(5, 6)
    assert cd_kernel(m3_system, 0, 1, "quotient") == Fraction(1, 3)


def test_cd_quotient_needs_distinct_points(m3_system):
    with pytest.raises(CoincidentPoints):
        cd_kernel(m3_system, 1, 1, "quotient")


def test_basis_minor_examples(m3_system):
    assert basis_minor(m3_system, (1, 2), (0, 1)) == 1
    assert basis_minor(m3_system, (1,), (5,)) == 1
    assert basis_minor(m3_system, (2,), (5,)) == 5
    with pytest.raises(InvalidArity):
        basis_minor(m3_system, (1, 2), (5,))


def test_subset_helpers():
    assert list(subsets(3, 2)) == [(1, 2), (1, 3), (2, 3)]
    assert complement((2,), 3) == (1, 3)
    assert chi((1, 2, 4)) == 2


def test_orthogonality_and_monicity(rng):
    for _ in range(20):
        sys = random_system(rng, rng.randint(1, 6))
        for k, p in enumerate(sys.polys):
            assert p.leading_coefficient() == 1 and p.total_degree() == k
        for i, j in itertools.combinations(range(sys.n), 2):
            assert pair(sys.polys[i], sys.polys[j], sys.measure) == 0


def test_gram_schmidt_matches_hankel_formula(rng):
    for _ in range(10):
        sys = random_system(rng, rng.randint(1, 5))
        mu = sys.measure
        for k in range(sys.n + 1):
            assert list(sys.coeffs[k]) == monic_orthogonal_hankel(mu.points, mu.weights, k)


def test_cd_forms_agree_with_gram_inverse(rng):
    for _ in range(10):
        sys = random_system(rng, rng.randint(1, 5))
        mu = sys.measure
        grid = []
        while len(grid) < 5:
            v = small_rational(rng)
            if v not in grid:
                grid.append(v)
        for x, y in itertools.permutations(grid, 2):
            value = cd_kernel(sys, x, y, "sum")
            assert value == cd_kernel(sys, x, y, "quotient")
        x, y = grid[0], grid[1]
        assert cd_kernel(sys, x, y) == reproducing_kernel_from_gram(mu.points, mu.weights, sys.n, 1, [x], [y])


def test_vandermonde_evaluation_of_full_minor(rng):
    for _ in range(10):
        sys = random_system(rng, rng.randint(1, 4))
        x = [small_rational(rng) for _ in range(sys.n)]
        assert basis_minor(sys, tuple(range(1, sys.n + 1)), x) == vandermonde_value(x)


def test_basis_orthogonality(rng):
    for _ in range(3):
        sys = random_system(rng, 4)
        for s in subsets(4, 2):
            for t in subsets(4, 2):
                value = integrate_sym(lambda y: basis_minor(sys, s, y) * basis_minor(sys, t, y), sys.measure, 2)
                assert value == (sys.norm_product(s) if s == t else 0)
