"""Monic orthogonal polynomials of a discrete measure and the one-variable
Christoffel-Darboux kernel."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Tuple

from .errors import CoincidentPoints, DegenerateMeasure, InvalidArgument, InvalidArity
from .linalg import determinant
from .measure import Measure, pair
from .poly import MultiPoly, as_fraction, poly_determinant

Subset = Tuple[int, ...]


def subset(elements: Iterable[int], n: int) -> Subset:
    s = tuple(elements)
    if any(a >= b for a, b in zip(s, s[1:])):
        raise InvalidArgument(f"subset {s} is not strictly increasing")
    if any(not 1 <= k <= n for k in s):
        raise InvalidArgument(f"subset {s} is not contained in [1..{n}]")
    return s


def subsets(n: int, m: int) -> Iterator[Subset]:
    """All m-subsets of [n] in lexicographic order."""
    return itertools.combinations(range(1, n + 1), m)


def complement(s: Sequence[int], n: int) -> Subset:
    members = set(s)
    return tuple(k for k in range(1, n + 1) if k not in members)


def chi(s: Iterable[int]) -> int:
    """Number of even elements."""
    return sum(1 for k in s if k % 2 == 0)


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class OrthoSystem:
    """p_0..p_n monic orthogonal for ``measure`` with norms of p_0..p_{n-1}.

    ``coeffs[k]`` is the ascending coefficient list of p_k.  Degrees above n
    are served by ``x**(k-n) * p_n``; such a polynomial is orthogonal to every
    polynomial of degree below ``2n - k``, which is all the determinant
    formulas using those degrees rely on.
    """

    measure: Measure
    n: int
    coeffs: Tuple[Tuple[Fraction, ...], ...]
    norms: Tuple[Fraction, ...]

    @property
    def polys(self) -> Tuple[MultiPoly, ...]:
        return tuple(MultiPoly.univariate(c) for c in self.coeffs)

    def poly(self, k: int, name: str = "x") -> MultiPoly:
        return MultiPoly.univariate(self.coefficients(k), name)

    def coefficients(self, k: int) -> Tuple[Fraction, ...]:
        if k < 0:
            raise InvalidArgument("degree must be nonnegative")
        if k <= self.n:
            return self.coeffs[k]
        return (Fraction(0),) * (k - self.n) + self.coeffs[self.n]

    def value(self, k: int, x) -> Fraction:
        return _horner(self.coefficients(k), as_fraction(x))

    def derivative_value(self, k: int, x) -> Fraction:
        c = self.coefficients(k)
        return _horner([i * c[i] for i in range(1, len(c))], as_fraction(x))

    def norm(self, k: int) -> Fraction:
        return self.norms[k]

    def norm_product(self, s: Iterable[int] = None) -> Fraction:
        """prod_{i in s} <p_{i-1}, p_{i-1}>; all of [n] by default."""
        s = range(1, self.n + 1) if s is None else s
        result = Fraction(1)
        for i in s:
            result *= self.norms[i - 1]
        return result


def build_system(mu: Measure, n: int) -> OrthoSystem:
    """Gram-Schmidt on 1, x, ..., x^n against the pairing of ``mu``."""
    if n < 1:
        raise InvalidArgument("degree bound n must be at least 1")
    if n > mu.size:
        raise DegenerateMeasure(
            f"n={n} exceeds the {mu.size} support points; the pairing degenerates"
        )
    x = MultiPoly.variable("x")
    polys = []
    norms = []
    for k in range(n + 1):
        monomial = x**k
        q = monomial
        for j, p in enumerate(polys):
            q = q - p * (pair(monomial, p, mu) / norms[j])
        polys.append(q)
        if k < n:
            h = pair(q, q, mu)
            if h == 0:
                raise DegenerateMeasure(f"<p_{k}, p_{k}> vanishes")
            norms.append(h)
    coeffs = tuple(tuple(p.coefficients()) for p in polys)
    return OrthoSystem(mu, n, coeffs, tuple(norms))


def cd_kernel(sys: OrthoSystem, x, y, mode: str = "sum") -> Fraction:
    """One-variable Christoffel-Darboux kernel K(x, y).

    ``mode="sum"`` uses sum_k p_k(x) p_k(y) / <p_k,p_k>; ``mode="quotient"``
    uses the two-term Christoffel-Darboux quotient and needs x != y.
    """
    x, y = as_fraction(x), as_fraction(y)
    n = sys.n
    if mode == "sum":
        return sum(
            (sys.value(k, x) * sys.value(k, y) / sys.norms[k] for k in range(n)),
            Fraction(0),
        )
    if mode == "quotient":
        if x == y:
            raise CoincidentPoints("quotient form of K(x, y) needs x != y")
        num = sys.value(n, x) * sys.value(n - 1, y) - sys.value(n - 1, x) * sys.value(n, y)
        return num / (sys.norms[n - 1] * (x - y))
    raise InvalidArgument(f"unknown mode {mode!r}")


def basis_minor(sys: OrthoSystem, s: Sequence[int], x: Sequence) -> Fraction:
    """p_S(x) = det(p_{j-1}(x_i)), columns j in S in increasing order."""
    if len(s) != len(x):
        raise InvalidArity(f"|S|={len(s)} but {len(x)} points given")
    subset(s, sys.n)
    return determinant([[sys.value(j - 1, xi) for j in s] for xi in x])


def basis_poly(sys: OrthoSystem, s: Sequence[int], variables: Sequence[str]) -> MultiPoly:
    """p_S as a polynomial in ``variables``."""
    if len(s) != len(variables):
        raise InvalidArity(f"|S|={len(s)} but {len(variables)} variables given")
    return poly_determinant(
        [[sys.poly(j - 1, v) for j in s] for v in variables]
    ).with_variables(variables)
