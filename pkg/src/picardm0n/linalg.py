"""Exact integer linear algebra: fraction-free (Bareiss) rank and row-space tests.

Entries are Python ints throughout; nothing in the exact path touches floats
or modular arithmetic. :func:`rank_mod_p` in :mod:`picardm0n.kernels` is an
optional fast cross-check, never a substitute.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

QUOTIENT_MAX_N = 8


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ("_rows", "ncols")

    def __init__(self, rows: Iterable[Sequence[int]], ncols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("rows have inconsistent lengths")
        self._rows = data
        self.ncols = ncols

    @classmethod
    def from_sparse(cls, rows: Iterable[Mapping[int, int]], ncols: int) -> IntMatrix:
        dense = []
        for r in rows:
            v = [0] * ncols
            for j, x in r.items():
                v[j] = int(x)
            dense.append(v)
        return cls(dense, ncols)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self._rows), self.nrows) if self._rows else IntMatrix([], 0)

    def with_row(self, v: Sequence[int]) -> IntMatrix:
        if len(v) != self.ncols:
            raise ValueError(f"vector has length {len(v)}, matrix has {self.ncols} columns")
        return IntMatrix(self._rows + (tuple(v),), self.ncols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self):
        return hash((self.ncols, self._rows))

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols})"


def _as_intmatrix(m) -> IntMatrix:
    if isinstance(m, IntMatrix):
        return m
    if hasattr(m, "to_intmatrix"):
        return m.to_intmatrix()
    return IntMatrix(m.tolist() if hasattr(m, "tolist") else m)


def bareiss_echelon(m) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form and pivot columns.

    Every division is checked to be exact.
    """
    a = _as_intmatrix(m).tolist()
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        top = a[r]
        p = top[c]
        for i in range(r + 1, rows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, cols):
                num = row[j] * p - f * top[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError(f"inexact Bareiss division at ({i}, {j})")
                row[j] = q
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    """Rank over the rationals.

    >>> rank(IntMatrix([[1, 2], [2, 4]]))
    1
    """
    return len(bareiss_echelon(m)[1])


def in_row_space(v: Sequence[int], m) -> bool:
    """Is ``v`` a rational combination of the rows of ``m``?"""
    m = _as_intmatrix(m)
    if len(v) != m.ncols:
        raise ValueError(f"vector has length {len(v)}, matrix has {m.ncols} columns")
    return rank(m.with_row(v)) == rank(m)


def quotient_dimension_check(n: int) -> bool:
    """Does ``|D^n| - rank(relations)`` equal the Picard rank for ``n``?"""
    from .basis import dimension
    from .relations import relation_matrix

    if not 4 <= n <= QUOTIENT_MAX_N:
        raise ValueError(f"quotient_dimension_check supports 4 <= n <= {QUOTIENT_MAX_N}, got {n}")
    rm = relation_matrix(n)
    return len(rm.columns) - rank(rm.to_intmatrix()) == dimension(n)
