"""Exact determinants and Pfaffians of small rational matrices.

Matrices are plain sequences of rows.  Entries are converted to
:class:`fractions.Fraction` on entry.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence

from .errors import InvalidArgument, InvalidArity
from .poly import as_fraction

Matrix = List[List[Fraction]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[as_fraction(v) for v in row] for row in rows]


def _check_square(a: Matrix) -> int:
    size = len(a)
    if any(len(row) != size for row in a):
        raise InvalidArity(f"matrix is not square ({size} rows)")
    return size


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting.

    The 0x0 determinant is 1.
    """
    a = as_matrix(rows)
    size = _check_square(a)
    sign = 1
    prev = Fraction(1)
    for k in range(size - 1):
        if not a[k][k]:
            pivot = next((r for r in range(k + 1, size) if a[r][k]), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, size):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, size):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = akk
    if size == 0:
        return Fraction(1)
    return sign * a[-1][-1]


def is_skew(rows: Sequence[Sequence]) -> bool:
    size = len(rows)
    return all(
        rows[i][j] == -rows[j][i] for i in range(size) for j in range(i, size)
    )


def skew_part(rows: Sequence[Sequence]) -> Matrix:
    """Return (a_ij - a_ji)."""
    a = as_matrix(rows)
    size = _check_square(a)
    return [[a[i][j] - a[j][i] for j in range(size)] for i in range(size)]


def pfaffian(rows: Sequence[Sequence]) -> Fraction:
    """Pfaffian of an even-dimensional skew-symmetric matrix.

    Recursive expansion along the first remaining row, memoized on the set
    of surviving indices.
    """
    a = as_matrix(rows)
    size = _check_square(a)
    if size % 2:
        raise InvalidArity(f"Pfaffian needs even dimension, got {size}")
    if not is_skew(a):
        raise InvalidArgument("matrix is not skew-symmetric")

    @lru_cache(maxsize=None)
    def pf(indices: tuple) -> Fraction:
        if not indices:
            return Fraction(1)
        first, rest = indices[0], indices[1:]
        total = Fraction(0)
        for k, j in enumerate(rest):
            entry = a[first][j]
            if entry:
                term = entry * pf(rest[:k] + rest[k + 1 :])
                total += term if k % 2 == 0 else -term
        return total

    return pf(tuple(range(size)))


def submatrix(rows: Sequence[Sequence], row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
    return [[rows[i][j] for j in col_idx] for i in row_idx]
