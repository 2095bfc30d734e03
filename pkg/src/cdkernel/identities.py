"""Both sides of the Pfaffian/determinant identities behind the kernel formulas.

Each ``*_sides`` function evaluates the two (or three) expressions of an
identity independently at a rational point and returns them for comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import InvalidArgument, InvalidArity, SingularInput
from .linalg import as_matrix, determinant, pfaffian, skew_part
from .ortho import chi, complement, subsets
from .poly import as_fraction


def _even(values: Sequence, what: str) -> int:
    if len(values) % 2:
        raise InvalidArity(f"{what} needs an even number 2m of entries, got {len(values)}")
    return len(values) // 2


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def rains_sides(rows: Sequence[Sequence]) -> Tuple[Fraction, Fraction]:
    """pfaff(a_ij - a_ji) against sum_S (-1)^chi(S) det_{i in S, j not in S}(a_ij)."""
    a = as_matrix(rows)
    m = _even(a, "rains_sides")
    lhs = pfaffian(skew_part(a))
    rhs = Fraction(0)
    for s in subsets(2 * m, m):
        sc = complement(s, 2 * m)
        minor = determinant([[a[i - 1][j - 1] for j in sc] for i in s])
        rhs += _sign(chi(s)) * minor
    return lhs, rhs


@dataclass(frozen=True)
class FreeInput:
    """Free variables a_i and coordinates z_i, optionally with square roots
    t_i (t_i**2 == z_i) and parameters zeta_i (zeta_i + 1/zeta_i == z_i + 2)."""

    a: Tuple[Fraction, ...]
    z: Tuple[Fraction, ...]
    t: Optional[Tuple[Fraction, ...]] = None
    zeta: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        conv = lambda seq: None if seq is None else tuple(as_fraction(v) for v in seq)  # noqa: E731
        object.__setattr__(self, "a", conv(self.a))
        object.__setattr__(self, "z", conv(self.z))
        object.__setattr__(self, "t", conv(self.t))
        object.__setattr__(self, "zeta", conv(self.zeta))
        size = len(self.z)
        _even(self.z, "FreeInput")
        for name in ("a", "t", "zeta"):
            seq = getattr(self, name)
            if seq is not None and len(seq) != size:
                raise InvalidArity(f"{name} has {len(seq)} entries, z has {size}")
        if self.t is not None and any(ti * ti != zi for ti, zi in zip(self.t, self.z)):
            raise InvalidArgument("t_i**2 must equal z_i")
        if self.zeta is not None:
            if any(v == 0 for v in self.zeta):
                raise InvalidArgument("zeta_i must be nonzero")
            if any(v + 1 / v != zi + 2 for v, zi in zip(self.zeta, self.z)):
                raise InvalidArgument("zeta_i + 1/zeta_i must equal z_i + 2")

    @classmethod
    def from_parameters(cls, a: Sequence, s: Sequence, flips: Sequence[int] = ()) -> "FreeInput":
        """Rational instance with zeta_i = s_i**2, t_i = s_i - 1/s_i, z_i = t_i**2.

        Indices in ``flips`` get t_i negated.
        """
        s = [as_fraction(v) for v in s]
        if any(v == 0 for v in s):
            raise InvalidArgument("parameters s_i must be nonzero")
        t = [v - 1 / v for v in s]
        for i in flips:
            t[i] = -t[i]
        return cls(tuple(a), tuple(v * v for v in t), tuple(t), tuple(v * v for v in s))

    @property
    def m(self) -> int:
        return len(self.z) // 2


def _skew_from(size: int, entry) -> list:
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for i, j in itertools.combinations(range(size), 2):
        v = entry(i, j)
        matrix[i][j] = v
        matrix[j][i] = -v
    return matrix


def sundquist_sides(
    inp: FreeInput, s: Sequence[int]
) -> Tuple[Fraction, Optional[Fraction], Optional[Fraction]]:
    """The determinant form and the two Pfaffian forms of the same quantity.

    ``s`` is an m-subset of [2m].  The square-root form needs ``inp.t`` and
    the zeta form needs ``inp.zeta``; a missing one is returned as None.
    """
    m = inp.m
    size = 2 * m
    s = tuple(s)
    if len(s) != m or len(set(s)) != m or any(not 1 <= k <= size for k in s):
        raise InvalidArity(f"S must be an {m}-subset of [1..{size}], got {s}")
    s = tuple(sorted(s))
    sc = complement(s, size)
    a, z = inp.a, inp.z

    prefactor = Fraction(_sign(m * (m + 1) // 2 + sum(s)))
    rows = []
    for i in s:
        row = []
        for j in sc:
            dz = z[j - 1] - z[i - 1]
            if dz == 0:
                raise SingularInput(f"z_{j} == z_{i} across the S boundary")
            prefactor *= dz
            row.append((a[j - 1] - a[i - 1]) / dz)
        rows.append(row)
    dpi = prefactor * determinant(rows)

    dpia = None
    if inp.t is not None:
        t = inp.t
        if any(t[i] + t[j] == 0 for i, j in itertools.combinations(range(size), 2)):
            raise SingularInput("t_i + t_j vanishes for some i < j")
        dpia = pfaffian(_skew_from(size, lambda i, j: (a[j] - a[i]) / (t[j] + t[i])))
        for i, j in itertools.combinations(range(size), 2):
            dpia *= t[i] + t[j]

    dpib = None
    if inp.zeta is not None:
        zeta = inp.zeta
        if any(zeta[i] * zeta[j] == 1 for i, j in itertools.combinations(range(size), 2)):
            raise SingularInput("zeta_i * zeta_j == 1 for some i < j")
        dpib = pfaffian(_skew_from(size, lambda i, j: (a[j] - a[i]) / (1 - zeta[i] * zeta[j])))
        for i, j in itertools.combinations(range(size), 2):
            dpib *= 1 - zeta[i] * zeta[j]
        for v in zeta:
            dpib *= v ** (1 - m)
    return dpi, dpia, dpib


def quadratic_form(a, b, c, u, v) -> Fraction:
    """a + b(u + v) + c u v."""
    return a + b * (u + v) + c * u * v


def _pair_forms(x: Sequence[Fraction], a, b, c) -> dict:
    forms = {}
    for i, j in itertools.combinations(range(len(x)), 2):
        q = quadratic_form(a, b, c, x[i], x[j])
        if q == 0:
            raise SingularInput(f"a + b(x_{i+1} + x_{j+1}) + c x_{i+1} x_{j+1} vanishes")
        forms[i, j] = q
    return forms


def _subset_sum(x, z, a, b, c) -> Fraction:
    """sum_S (-1)^chi(S) prod_{j not in S} z_j prod_{i<j same side} (x_j - x_i) Q(x_i, x_j)."""
    size = len(x)
    m = size // 2
    total = Fraction(0)
    for s in subsets(size, m):
        sc = complement(s, size)
        term = Fraction(_sign(chi(s)))
        for j in sc:
            term *= z[j - 1]
        for side in (s, sc):
            for i, j in itertools.combinations(side, 2):
                term *= (x[j - 1] - x[i - 1]) * quadratic_form(a, b, c, x[i - 1], x[j - 1])
        total += term
    return total


def iw_sides(x: Sequence, z: Sequence, a, b, c) -> Tuple[Fraction, Fraction]:
    """pfaff((z_j - z_i)/Q(x_i, x_j)) against its signed subset-sum evaluation."""
    x = [as_fraction(v) for v in x]
    z = [as_fraction(v) for v in z]
    a, b, c = (as_fraction(v) for v in (a, b, c))
    m = _even(x, "iw_sides")
    if len(z) != len(x):
        raise InvalidArity("x and z differ in length")
    forms = _pair_forms(x, a, b, c)
    lhs = pfaffian(_skew_from(2 * m, lambda i, j: (z[j] - z[i]) / forms[i, j]))
    rhs = (b * b - a * c) ** (m * (m - 1) // 2) * _subset_sum(x, z, a, b, c)
    for q in forms.values():
        rhs /= q
    return lhs, rhs


def iw_diagonal_closed_form(x: Sequence, a, b, c) -> Fraction:
    """Closed form of the Pfaffian in :func:`iw_sides` when z = x."""
    x = [as_fraction(v) for v in x]
    a, b, c = (as_fraction(v) for v in (a, b, c))
    m = _even(x, "iw_diagonal_closed_form")
    value = (b * b - a * c) ** (m * (m - 1))
    for (i, j), q in _pair_forms(x, a, b, c).items():
        value *= (x[j] - x[i]) / q
    return value


def ssc_sides(x: Sequence, a, b, c) -> Tuple[Fraction, Fraction]:
    """The signed subset sum with z = x against (b^2 - ac)^{m(m-1)/2} Delta(x)."""
    x = [as_fraction(v) for v in x]
    a, b, c = (as_fraction(v) for v in (a, b, c))
    m = _even(x, "ssc_sides")
    lhs = _subset_sum(x, x, a, b, c)
    rhs = (b * b - a * c) ** (m * (m - 1) // 2)
    for i, j in itertools.combinations(range(2 * m), 2):
        rhs *= x[j] - x[i]
    return lhs, rhs


def cauchy_sides(x: Sequence, y: Sequence, a, b, c) -> Tuple[Fraction, Fraction]:
    """det(1/Q(x_i, y_j)) against its product formula."""
    x = [as_fraction(v) for v in x]
    y = [as_fraction(v) for v in y]
    a, b, c = (as_fraction(v) for v in (a, b, c))
    m = len(x)
    if len(y) != m:
        raise InvalidArity("x and y differ in length")
    forms = [[quadratic_form(a, b, c, xi, yj) for yj in y] for xi in x]
    if any(q == 0 for row in forms for q in row):
        raise SingularInput("a + b(x_i + y_j) + c x_i y_j vanishes for some i, j")
    lhs = determinant([[1 / q for q in row] for row in forms])
    rhs = (b * b - a * c) ** (m * (m - 1) // 2)
    for i, j in itertools.combinations(range(m), 2):
        rhs *= (x[j] - x[i]) * (y[j] - y[i])
    for row in forms:
        for q in row:
            rhs /= q
    return lhs, rhs


def iw_rains_matrix(x: Sequence, z: Sequence, a, b, c) -> list:
    """a_ij = z_j / Q(x_i, x_j) off the diagonal, zero on it; its skew part is
    the matrix inside the Pfaffian of :func:`iw_sides`."""
    x = [as_fraction(v) for v in x]
    z = [as_fraction(v) for v in z]
    a, b, c = (as_fraction(v) for v in (a, b, c))
    size = len(x)
    forms = _pair_forms(x, a, b, c)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for (i, j), q in forms.items():
        matrix[i][j] = z[j] / q
        matrix[j][i] = z[i] / q
    return matrix
