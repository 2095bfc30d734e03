"""The multivariable Christoffel-Darboux kernel K_m(x, y).

K_m is the reproducing kernel of the symmetric polynomials of degree at most
n - m in each of m variables, for the pairing weighted by Delta(x)**2.
Every evaluator here is exact; evaluators that divide by a Vandermonde
product refuse coincident coordinates with :class:`CoincidentPoints`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Sequence, Tuple, Union

from .errors import (
    CoincidentPoints,
    DegenerateBasis,
    InvalidArgument,
    InvalidArity,
)
from .linalg import determinant, pfaffian, submatrix
from .measure import integrate_sym, moment, pair
from .ortho import OrthoSystem, basis_minor, basis_poly, cd_kernel, complement, subsets
from .poly import (
    MultiPoly,
    Partition,
    as_fraction,
    default_variables,
    divide_by_vandermonde,
    poly_determinant,
    schur_polynomial,
    vandermonde,
)

ROUTES = ("sum", "two_point_det", "integral", "one_point_det")


def _point(x: Sequence, y: Sequence) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    x = tuple(as_fraction(v) for v in x)
    y = tuple(as_fraction(v) for v in y)
    if len(x) != len(y):
        raise InvalidArity(f"|x|={len(x)} and |y|={len(y)} differ")
    return x, y


def _nonzero_vandermonde(values: Sequence[Fraction], what: str) -> Fraction:
    d = vandermonde(values)
    if d == 0:
        raise CoincidentPoints(f"coordinates of {what} are not pairwise distinct")
    return d


def km_eval(sys: OrthoSystem, x: Sequence, y: Sequence, route: str = "integral") -> Fraction:
    """Evaluate K_m(x, y), m = len(x), through one of :data:`ROUTES`."""
    x, y = _point(x, y)
    m, n = len(x), sys.n
    if m > n:
        raise InvalidArgument(f"m={m} exceeds n={n}")
    if route == "sum":
        dx = _nonzero_vandermonde(x, "x")
        dy = _nonzero_vandermonde(y, "y")
        total = Fraction(0)
        for s in subsets(n, m):
            total += basis_minor(sys, s, x) * basis_minor(sys, s, y) / sys.norm_product(s)
        return total / (dx * dy)
    if route == "two_point_det":
        dx = _nonzero_vandermonde(x, "x")
        dy = _nonzero_vandermonde(y, "y")
        return determinant([[cd_kernel(sys, xi, yj) for yj in y] for xi in x]) / (dx * dy)
    if route == "integral":
        return _km_integral(sys, x + y)
    if route == "one_point_det":
        z = x + y
        dz = _nonzero_vandermonde(z, "z = (x, y)")
        rows = [[sys.value(n - m + j, zi) for j in range(2 * m)] for zi in z]
        scale = Fraction(1)
        for i in range(1, m + 1):
            scale *= sys.norms[n - i]
        return determinant(rows) / (scale * dz)
    raise InvalidArgument(f"unknown route {route!r}; expected one of {ROUTES}")


def kernel_numerator(sys: OrthoSystem, x: Sequence, y: Sequence) -> Fraction:
    """Delta(x) Delta(y) K_m(x, y) = sum_S p_S(x) p_S(y) / <p_S, p_S>.

    Defined at coincident coordinates, where it vanishes.
    """
    x, y = _point(x, y)
    total = Fraction(0)
    for s in subsets(sys.n, len(x)):
        px = basis_minor(sys, s, x)
        if px:
            total += px * basis_minor(sys, s, y) / sys.norm_product(s)
    return total


def _km_integral(sys: OrthoSystem, z: Tuple[Fraction, ...]) -> Fraction:
    """(1/prod norms) * int prod_{j,k}(z_j - w_k) Delta(w)^2 dmu_{n-m}(w)."""
    free = sys.n - len(z) // 2

    def integrand(w):
        d = vandermonde(w)
        if not d:
            return d
        value = d * d
        for zj in z:
            for wk in w:
                value *= zj - wk
        return value

    return integrate_sym(integrand, sys.measure, free) / sys.norm_product()


# -- Pfaffian forms -----------------------------------------------------------


@dataclass(frozen=True)
class SqrtChoice:
    """Square roots t_i of the coordinates, z_i = t_i**2."""

    t: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(as_fraction(v) for v in self.t))

    @property
    def z(self) -> Tuple[Fraction, ...]:
        return tuple(v * v for v in self.t)

    @property
    def roots(self) -> Tuple[Fraction, ...]:
        return self.t


@dataclass(frozen=True)
class ZetaChoice:
    """Parameters zeta_i with zeta_i + 1/zeta_i = z_i + 2."""

    zeta: Tuple[Fraction, ...]

    def __post_init__(self):
        zeta = tuple(as_fraction(v) for v in self.zeta)
        if any(v == 0 for v in zeta):
            raise InvalidArgument("zeta parameters must be nonzero")
        object.__setattr__(self, "zeta", zeta)

    @property
    def z(self) -> Tuple[Fraction, ...]:
        return tuple(v + 1 / v - 2 for v in self.zeta)

    @property
    def roots(self) -> Tuple[Fraction, ...]:
        return self.zeta


def km_pfaffian(sys: OrthoSystem, choice: Union[SqrtChoice, ZetaChoice]) -> Fraction:
    """K_m(z) from a Pfaffian of (a_j - a_i) K(z_i, z_j), a = t or zeta."""
    a = choice.roots
    if len(a) % 2:
        raise InvalidArity("need an even number 2m of coordinates")
    m = len(a) // 2
    if m > sys.n:
        raise InvalidArgument(f"m={m} exceeds n={sys.n}")
    denom = _nonzero_vandermonde(a, type(choice).__name__)
    z = choice.z
    size = 2 * m
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            entry = (a[j] - a[i]) * cd_kernel(sys, z[i], z[j])
            matrix[i][j] = entry
            matrix[j][i] = -entry
    value = pfaffian(matrix) / denom
    if isinstance(choice, ZetaChoice):
        for v in a:
            value *= v ** (m - 1)
    return value


# -- confluent form -----------------------------------------------------------


def km_confluent(sys: OrthoSystem, x: Sequence) -> Fraction:
    """K_m(x, x) from the determinant with value rows and derivative rows."""
    x = tuple(as_fraction(v) for v in x)
    m, n = len(x), sys.n
    if m > n:
        raise InvalidArgument(f"m={m} exceeds n={n}")
    dx = _nonzero_vandermonde(x, "x")
    rows = [[sys.value(n - m + j, xi) for j in range(2 * m)] for xi in x]
    rows += [[sys.derivative_value(n - m + j, xi) for j in range(2 * m)] for xi in x]
    scale = Fraction(1)
    for i in range(1, m + 1):
        scale *= sys.norms[n - i]
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * determinant(rows) / (scale * dx**4)


def correlation_integral(sys: OrthoSystem, x: Sequence) -> Fraction:
    """Delta(x)^2 K_m(x, x) as a marginal of the weight Delta^2 over n points.

    Integrates Delta(x, w)^2 over the remaining n - m coordinates against the
    plain (unsymmetrized) product measure, divided by (n-m)! prod norms.
    """
    x = tuple(as_fraction(v) for v in x)
    free = sys.n - len(x)
    if free < 0:
        raise InvalidArgument(f"m={len(x)} exceeds n={sys.n}")

    def integrand(w):
        d = vandermonde(x + tuple(w))
        return d * d

    # integrate_sym already divides by (n-m)!
    return integrate_sym(integrand, sys.measure, free) / sys.norm_product()


# -- Hodge star ---------------------------------------------------------------


def hodge_star(sys: OrthoSystem, m: int, s: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Predicted image of p_S: (sign, S^c) with phi(p_S) = sign * prod_{i in S} h_{i-1} * p_{S^c}."""
    s = tuple(s)
    if len(s) != m:
        raise InvalidArity(f"|S|={len(s)} but m={m}")
    exponent = m * (m + 1) // 2 + sum(s)
    return (-1 if exponent % 2 else 1), complement(s, sys.n)


def hodge_apply(sys: OrthoSystem, f: Callable, m: int, x: Sequence) -> Fraction:
    """(phi f)(x) = int f(y) Delta(y, x) dmu_m(y), with x of length n - m."""
    x = tuple(as_fraction(v) for v in x)
    if len(x) != sys.n - m:
        raise InvalidArity(f"phi maps {m} variables to {sys.n - m}; got {len(x)} points")

    def integrand(y):
        d = vandermonde(tuple(y) + x)
        return f(y) * d if d else d

    return integrate_sym(integrand, sys.measure, m)


def hodge_check(sys: OrthoSystem, s: Sequence[int], x: Sequence) -> Tuple[Fraction, Fraction]:
    """(direct integral, predicted value) of (phi p_S)(x)."""
    s = tuple(s)
    m = len(s)
    sign, target = hodge_star(sys, m, s)
    direct = hodge_apply(sys, lambda y: basis_minor(sys, s, y), m, x)
    predicted = sign * sys.norm_product(s) * basis_minor(sys, target, x)
    return direct, predicted


def hodge_double_check(sys: OrthoSystem, s: Sequence[int], x: Sequence) -> Tuple[Fraction, Fraction]:
    """(phi(phi p_S))(x) versus (-1)^{m(n-m)} prod_i h_{i-1} p_S(x)."""
    s = tuple(s)
    m, n = len(s), sys.n

    def first(y):
        return hodge_apply(sys, lambda u: basis_minor(sys, s, u), m, y)

    twice = hodge_apply(sys, first, n - m, x)
    sign = -1 if (m * (n - m)) % 2 else 1
    return twice, sign * sys.norm_product() * basis_minor(sys, s, x)


# -- contraction --------------------------------------------------------------


def contraction_check(
    sys: OrthoSystem, m: int, l: int, x: Sequence, y: Sequence
) -> Tuple[Fraction, Fraction]:
    """Both sides of the contraction of K_l down to K_m."""
    x, y = _point(x, y)
    n = sys.n
    if not 0 <= m <= l <= n or len(x) != m:
        raise InvalidArgument(f"need 0 <= m <= l <= n with |x| = m; got m={m}, l={l}, n={n}")
    lhs = vandermonde(x) * vandermonde(y) * km_eval(sys, x, y, "integral")
    coeff = Fraction(math.factorial(n - l) * math.factorial(l - m), math.factorial(n - m))

    def integrand(w):
        w = tuple(w)
        factor = vandermonde(x + w) * vandermonde(y + w)
        if not factor:
            return factor
        return factor * km_eval(sys, x + w, y + w, "integral")

    rhs = coeff * integrate_sym(integrand, sys.measure, l - m)
    return lhs, rhs


# -- polynomial forms and expansions ------------------------------------------


def kernel_variables(m: int) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    return default_variables(m, "x"), default_variables(m, "y")


def km_polynomial(sys: OrthoSystem, m: int) -> MultiPoly:
    """K_m as a polynomial in x1..xm, y1..ym.

    Built from sum_S p_S(x) p_S(y) / <p_S, p_S> followed by exact division by
    Delta(x) and Delta(y).
    """
    if m > sys.n:
        raise InvalidArgument(f"m={m} exceeds n={sys.n}")
    xs, ys = kernel_variables(m)
    total = MultiPoly.constant(0, xs + ys)
    for s in subsets(sys.n, m):
        term = basis_poly(sys, s, xs) * basis_poly(sys, s, ys)
        total = total + term.with_variables(xs + ys) / sys.norm_product(s)
    total = divide_by_vandermonde(total, m, xs)
    return divide_by_vandermonde(total, m, ys)


def partition_to_subset(lam: Partition, m: int) -> Tuple[int, ...]:
    """S = {lambda_k + m + 1 - k}, returned in increasing order."""
    padded = tuple(lam) + (0,) * (m - len(lam))
    return tuple(sorted(padded[k - 1] + m + 1 - k for k in range(1, m + 1)))


def subset_to_partition(s: Sequence[int]) -> Partition:
    """Inverse of :func:`partition_to_subset` (trailing zeros stripped)."""
    m = len(s)
    parts = [s[m - k] - (m + 1 - k) for k in range(1, m + 1)]
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


@dataclass(frozen=True)
class SchurExpansion:
    n: int
    m: int
    coefficients: Dict[Tuple[Partition, Partition], Fraction] = field(hash=False)

    def coefficient(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        return self.coefficients[(tuple(lam), tuple(mu))]

    def polynomial(self) -> MultiPoly:
        """sum coeff(lambda, mu) s_lambda(x) s_mu(y) over x1..xm, y1..ym."""
        xs, ys = kernel_variables(self.m)
        total = MultiPoly.constant(0, xs + ys)
        for (lam, mu), c in self.coefficients.items():
            if c:
                term = schur_polynomial(lam, self.m, xs) * schur_polynomial(mu, self.m, ys)
                total = total + term.with_variables(xs + ys) * c
        return total


def schur_expansion(sys: OrthoSystem, m: int) -> SchurExpansion:
    """Coefficients of K_m(x, y) in the basis s_lambda(x) s_mu(y).

    The coefficient of (lambda, mu) is the complementary Hankel minor
    det_{i not in S, j not in T}(c_{i+j-2}) with sign (-1)^{|lambda|+|mu|},
    divided by the product of all norms.
    """
    n = sys.n
    if m > n:
        raise InvalidArgument(f"m={m} exceeds n={n}")
    c = [moment(sys.measure, k) for k in range(2 * n - 1)]
    hankel = [[c[i + j] for j in range(n)] for i in range(n)]
    total = sys.norm_product()
    coefficients = {}
    for s in subsets(n, m):
        lam = subset_to_partition(s)
        rows = [i - 1 for i in complement(s, n)]
        for t in subsets(n, m):
            mu = subset_to_partition(t)
            cols = [j - 1 for j in complement(t, n)]
            minor = determinant(submatrix(hankel, rows, cols))
            sign = -1 if (sum(lam) + sum(mu)) % 2 else 1
            coefficients[(lam, mu)] = sign * minor / total
    return SchurExpansion(n, m, coefficients)


def general_expansion(
    sys: OrthoSystem,
    m: int,
    basis_e: Sequence[MultiPoly],
    basis_f: Sequence[MultiPoly],
) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]:
    """Coefficients of Delta(x)Delta(y)K_m(x,y) in the basis e_S(x) f_T(y)."""
    n = sys.n
    if len(basis_e) != n or len(basis_f) != n:
        raise InvalidArity(f"bases must have n={n} elements")
    if m > n:
        raise InvalidArgument(f"m={m} exceeds n={n}")
    gram = [[pair(e, f, sys.measure) for f in basis_f] for e in basis_e]
    full = determinant(gram)
    if full == 0:
        raise DegenerateBasis("det(<e_i, f_j>) vanishes; the families are not bases")
    coefficients = {}
    for s in subsets(n, m):
        rows = [i - 1 for i in complement(s, n)]
        for t in subsets(n, m):
            cols = [j - 1 for j in complement(t, n)]
            sign = -1 if (sum(s) + sum(t)) % 2 else 1
            coefficients[(s, t)] = sign * determinant(submatrix(gram, rows, cols)) / full
    return coefficients


def _in_variable(p: MultiPoly, name: str) -> MultiPoly:
    if p.nvars == 0:
        return MultiPoly.constant(p.eval(()), (name,))
    if p.nvars != 1:
        raise InvalidArity("basis elements must be univariate")
    return p.rename({p.variables[0]: name})


def subset_determinant(basis: Sequence[MultiPoly], s: Sequence[int], variables: Sequence[str]) -> MultiPoly:
    """e_S = det(e_j(v_i)), rows over ``variables``, columns j in S."""
    matrix = [[_in_variable(basis[j - 1], v) for j in s] for v in variables]
    return poly_determinant(matrix).with_variables(variables)


def general_expansion_polynomial(
    coefficients: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction],
    basis_e: Sequence[MultiPoly],
    basis_f: Sequence[MultiPoly],
    m: int,
) -> MultiPoly:
    """sum coeff(S, T) e_S(x) f_T(y) over x1..xm, y1..ym."""
    xs, ys = kernel_variables(m)
    total = MultiPoly.constant(0, xs + ys)
    for (s, t), c in coefficients.items():
        if c:
            term = subset_determinant(basis_e, s, xs) * subset_determinant(basis_f, t, ys)
            total = total + term.with_variables(xs + ys) * c
    return total
