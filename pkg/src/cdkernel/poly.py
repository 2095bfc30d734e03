"""Sparse multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, attached to an ordered tuple of
variable names.  Arithmetic between polynomials over different variable
lists works on the union of the variables (left operand's order first).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import InvalidArity, InvalidPartition, NotAntisymmetric

Exponents = Tuple[int, ...]
Partition = Tuple[int, ...]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(value) -> str:
    """Canonical text form: ``p/q`` in lowest terms, ``p`` when q == 1."""
    return str(as_fraction(value))


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(
        self,
        variables: Iterable[str],
        terms: Optional[Mapping[Exponents, object]] = None,
    ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InvalidArity(f"repeated variable names in {variables}")
        clean: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise InvalidArity(
                    f"exponent vector {exps} does not match variables {variables}"
                )
            if any(e < 0 for e in exps):
                raise InvalidArity(f"negative exponent in {exps}")
            coeff = as_fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value, variables: Iterable[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, name: str, variables: Optional[Iterable[str]] = None) -> "MultiPoly":
        variables = (name,) if variables is None else tuple(variables)
        if name not in variables:
            raise InvalidArity(f"{name!r} not among {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def univariate(cls, coeffs: Sequence, name: str = "x") -> "MultiPoly":
        """Build ``sum(coeffs[k] * name**k)``."""
        return cls((name,), {(k,): c for k, c in enumerate(coeffs)})

    # -- structure ----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        idx = self._index(var)
        return max((e[idx] for e in self.terms), default=-1)

    def coefficients(self) -> list:
        """Ascending coefficient list of a univariate polynomial."""
        if self.nvars != 1:
            raise InvalidArity("coefficients() needs a univariate polynomial")
        deg = self.total_degree()
        return [self.terms.get((k,), Fraction(0)) for k in range(deg + 1)]

    def leading_coefficient(self) -> Fraction:
        if self.nvars != 1:
            raise InvalidArity("leading_coefficient() needs a univariate polynomial")
        if not self.terms:
            return Fraction(0)
        return self.terms[(self.total_degree(),)]

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise InvalidArity(f"unknown variable {var!r}; have {self.variables}") from None

    def with_variables(self, variables: Iterable[str]) -> "MultiPoly":
        """Re-express over a variable list containing all current variables."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        missing = set(self.variables) - set(variables)
        if missing:
            raise InvalidArity(f"cannot drop variables {sorted(missing)}")
        pos = [variables.index(v) for v in self.variables]
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for p, e in zip(pos, exps):
                new[p] = e
            terms[tuple(new)] = c
        return MultiPoly(variables, terms)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return MultiPoly(tuple(mapping.get(v, v) for v in self.variables), self.terms)

    def permute(self, i: int, j: int) -> "MultiPoly":
        """Swap the roles of variables ``i`` and ``j`` (by position)."""
        terms = {}
        for exps, c in self.terms.items():
            e = list(exps)
            e[i], e[j] = e[j], e[i]
            terms[tuple(e)] = c
        return MultiPoly(self.variables, terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(as_fraction(other), self.variables)

    def _aligned(self, other) -> Tuple["MultiPoly", "MultiPoly"]:
        other = self._coerce(other)
        if other.variables == self.variables:
            return self, other
        variables = self.variables + tuple(
            v for v in other.variables if v not in self.variables
        )
        return self.with_variables(variables), other.with_variables(variables)

    def __add__(self, other):
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return MultiPoly(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = as_fraction(other)
            return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})
        a, b = self._aligned(other)
        terms: Dict[Exponents, Fraction] = defaultdict(Fraction)
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                terms[tuple(x + y for x, y in zip(e1, e2))] += c1 * c2
        return MultiPoly(a.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return NotImplemented
        return self * (1 / as_fraction(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- evaluation ---------------------------------------------------------

    def __call__(self, *point) -> Fraction:
        return self.eval(point)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise InvalidArity(
                f"point has {len(point)} coordinates, polynomial has {self.nvars} variables"
            )
        point = [as_fraction(v) for v in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(point, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def derivative(self, var: str) -> "MultiPoly":
        idx = self._index(var)
        terms = {}
        for exps, c in self.terms.items():
            e = exps[idx]
            if e:
                new = list(exps)
                new[idx] = e - 1
                terms[tuple(new)] = c * e
        return MultiPoly(self.variables, terms)

    # -- text ---------------------------------------------------------------

    def _monomial(self, exps: Exponents) -> str:
        parts = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        out = []
        for k, exps in enumerate(order):
            c = self.terms[exps]
            mono = self._monomial(exps)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables!r}, {self})"


# ---------------------------------------------------------------------------
# operations


def default_variables(m: int, prefix: str = "x") -> Tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, m + 1))


def poly_eval(p: MultiPoly, point: Sequence) -> Fraction:
    return p.eval(point)


def poly_derivative(p: MultiPoly, var: str) -> MultiPoly:
    return p.derivative(var)


def vandermonde_poly(m: int, variables: Optional[Sequence[str]] = None) -> MultiPoly:
    """Return prod_{i<j} (x_j - x_i) over ``variables`` (default x1..xm)."""
    if m < 0:
        raise InvalidArity("m must be nonnegative")
    variables = default_variables(m) if variables is None else tuple(variables)
    if len(variables) != m:
        raise InvalidArity(f"need {m} variable names, got {len(variables)}")
    result = MultiPoly.constant(1, variables)
    for i, j in itertools.combinations(range(m), 2):
        result = result * (
            MultiPoly.variable(variables[j], variables)
            - MultiPoly.variable(variables[i], variables)
        )
    return result


def vandermonde(values: Sequence) -> Fraction:
    """Numeric prod_{i<j} (v_j - v_i)."""
    values = [as_fraction(v) for v in values]
    result = Fraction(1)
    for i, j in itertools.combinations(range(len(values)), 2):
        result *= values[j] - values[i]
    return result


def is_antisymmetric(p: MultiPoly, positions: Sequence[int]) -> bool:
    return all(p.permute(a, b) == -p for a, b in zip(positions, positions[1:]))


def is_symmetric(p: MultiPoly, positions: Sequence[int]) -> bool:
    return all(p.permute(a, b) == p for a, b in zip(positions, positions[1:]))


def _divide_linear(p: MultiPoly, j: int, i: int) -> MultiPoly:
    """Exact quotient of p by (v_j - v_i), via synthetic division in v_j."""
    by_power: Dict[int, Dict[Exponents, Fraction]] = defaultdict(dict)
    for exps, c in p.terms.items():
        rest = list(exps)
        rest[j] = 0
        by_power[exps[j]][tuple(rest)] = c
    if not by_power:
        return p

    def times_vi(block):
        out = {}
        for exps, c in block.items():
            e = list(exps)
            e[i] += 1
            out[tuple(e)] = c
        return out

    quotient: Dict[Exponents, Fraction] = {}
    carry: Dict[Exponents, Fraction] = {}
    for k in range(max(by_power), 0, -1):
        nxt = dict(by_power.get(k, {}))
        for exps, c in times_vi(carry).items():
            nxt[exps] = nxt.get(exps, Fraction(0)) + c
        carry = {e: c for e, c in nxt.items() if c}
        for exps, c in carry.items():
            e = list(exps)
            e[j] = k - 1
            quotient[tuple(e)] = c
    remainder = dict(by_power.get(0, {}))
    for exps, c in times_vi(carry).items():
        remainder[exps] = remainder.get(exps, Fraction(0)) + c
    if any(remainder.values()):
        raise ArithmeticError("inexact division by a Vandermonde factor")
    return MultiPoly(p.variables, quotient)


def divide_by_vandermonde(
    p: MultiPoly, m: int, over: Optional[Sequence[str]] = None
) -> MultiPoly:
    """Divide an antisymmetric polynomial by the Vandermonde product.

    ``over`` names the m variables in which ``p`` is antisymmetric; by
    default these are all variables of ``p``.  The factors (v_j - v_i),
    i < j, are removed one at a time.
    """
    over = p.variables if over is None else tuple(over)
    if len(over) != m:
        raise InvalidArity(f"expected {m} variables to divide over, got {len(over)}")
    positions = [p._index(v) for v in over]
    if not is_antisymmetric(p, positions):
        raise NotAntisymmetric(f"polynomial is not antisymmetric in {over}")
    q = p
    for a, b in itertools.combinations(range(m), 2):
        q = _divide_linear(q, positions[b], positions[a])
    return q


def partition(parts: Iterable[int]) -> Partition:
    """Validate and canonicalize a partition (trailing zeros stripped)."""
    parts = tuple(int(k) for k in parts)
    if any(k < 0 for k in parts):
        raise InvalidPartition(f"negative part in {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise InvalidPartition(f"parts of {parts} are not weakly decreasing")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def format_partition(lam: Partition) -> str:
    return "(" + ",".join(str(k) for k in lam) + ")"


def alternant(exponents: Sequence[int], variables: Sequence[str]) -> MultiPoly:
    """det(v_i ** exponents[j]) expanded over all permutations."""
    m = len(variables)
    if len(exponents) != m:
        raise InvalidArity("need one exponent per variable")
    terms: Dict[Exponents, Fraction] = defaultdict(Fraction)
    for perm in itertools.permutations(range(m)):
        terms[tuple(exponents[perm[i]] for i in range(m))] += permutation_sign(perm)
    return MultiPoly(variables, terms)


def schur_polynomial(
    lam: Iterable[int], m: int, variables: Optional[Sequence[str]] = None
) -> MultiPoly:
    """Schur polynomial s_lambda in m variables as a ratio of alternants.

    The columns of the numerator alternant are taken in increasing order of
    exponent, ``lambda_{m+1-j} + j - 1``, matching the orientation of the
    Vandermonde product prod_{i<j}(x_j - x_i).
    """
    lam = partition(lam)
    if len(lam) > m:
        raise InvalidPartition(f"{lam} has more than {m} nonzero parts")
    variables = default_variables(m) if variables is None else tuple(variables)
    if len(variables) != m:
        raise InvalidArity(f"need {m} variable names")
    padded = lam + (0,) * (m - len(lam))
    exps = [padded[m - 1 - j] + j for j in range(m)]
    return divide_by_vandermonde(alternant(exps, variables), m)


def poly_determinant(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Leibniz expansion; intended for the small matrices used here."""
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise InvalidArity("matrix is not square")
    total = None
    for perm in itertools.permutations(range(size)):
        term = MultiPoly.constant(permutation_sign(perm))
        for i in range(size):
            term = term * matrix[i][perm[i]]
        total = term if total is None else total + term
    return MultiPoly.constant(1) if total is None else total
