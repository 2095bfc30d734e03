"""Finite discrete measures and exact integration against them."""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Tuple, Union

from .errors import InvalidArgument, InvalidArity, InvalidMeasure, ParseError
from .poly import MultiPoly, as_fraction

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")

Integrand = Union[MultiPoly, Callable[[Tuple[Fraction, ...]], Fraction]]


def parse_rational(text: str) -> Fraction:
    """Parse an integer or ``p/q`` literal; decimals and exponents are rejected."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ParseError(f"not an integer or p/q rational: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


@dataclass(frozen=True)
class Measure:
    points: Tuple[Fraction, ...]
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        points = tuple(as_fraction(p) for p in self.points)
        weights = tuple(as_fraction(w) for w in self.weights)
        if not points:
            raise InvalidMeasure("a measure needs at least one support point")
        if len(points) != len(weights):
            raise InvalidMeasure("points and weights differ in length")
        if len(set(points)) != len(points):
            raise InvalidMeasure("support points must be distinct")
        if any(w == 0 for w in weights):
            raise InvalidMeasure("weights must be nonzero")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def positive(self) -> bool:
        return all(w > 0 for w in self.weights)

    @classmethod
    def from_json(cls, data) -> "Measure":
        if not isinstance(data, dict) or set(data) != {"points", "weights"}:
            raise ParseError('measure JSON must have exactly the keys "points" and "weights"')
        for key in ("points", "weights"):
            if not isinstance(data[key], list):
                raise ParseError(f'"{key}" must be a list')
        return cls(
            tuple(parse_rational(p) for p in data["points"]),
            tuple(parse_rational(w) for w in data["weights"]),
        )

    def to_json(self) -> dict:
        return {
            "points": [str(p) for p in self.points],
            "weights": [str(w) for w in self.weights],
        }


def parse_measure(path) -> Measure:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from None
    return Measure.from_json(data)


def moment(mu: Measure, k: int) -> Fraction:
    if k < 0:
        raise InvalidArgument("moment order must be nonnegative")
    return sum((w * p**k for p, w in zip(mu.points, mu.weights)), Fraction(0))


def pair(f: MultiPoly, g: MultiPoly, mu: Measure) -> Fraction:
    """The bilinear pairing sum_i w_i f(x_i) g(x_i) of univariate polynomials."""
    for h in (f, g):
        if isinstance(h, MultiPoly) and h.nvars > 1:
            raise InvalidArity("pair() takes univariate polynomials")
    f = _as_univariate(f)
    g = _as_univariate(g)
    return sum(
        (w * f(p) * g(p) for p, w in zip(mu.points, mu.weights)), Fraction(0)
    )


def _as_univariate(f):
    if isinstance(f, MultiPoly):
        if f.nvars == 0:
            c = f.eval(())
            return lambda _x: c
        return lambda x: f.eval((x,))
    c = as_fraction(f)
    return lambda _x: c


def integrate_sym(f: Integrand, mu: Measure, m: int) -> Fraction:
    """Symmetrized m-fold integral (1/m!) sum over ordered m-tuples.

    ``f`` is a polynomial in exactly m variables or a callable taking an
    m-tuple of support points.  For m == 0 the integrand is evaluated at the
    empty tuple.  Cost is |support|**m evaluations.
    """
    if m < 0:
        raise InvalidArity("m must be nonnegative")
    if isinstance(f, MultiPoly):
        if f.nvars == 0:
            c = f.eval(())
            evaluate = lambda _pt: c  # noqa: E731
        elif f.nvars != m:
            raise InvalidArity(f"integrand has {f.nvars} variables, expected {m}")
        else:
            evaluate = f.eval
    else:
        evaluate = f
    total = Fraction(0)
    support = list(zip(mu.points, mu.weights))
    for combo in itertools.product(support, repeat=m):
        weight = Fraction(1)
        for _, w in combo:
            weight *= w
        value = evaluate(tuple(p for p, _ in combo))
        if value:
            total += weight * value
    return total / math.factorial(m)

