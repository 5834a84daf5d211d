"""Boundary divisors written in the non-adjacent basis.

Two independent routes are provided:

* :func:`expand` / :func:`coefficient` use the closed form: a consecutive
  class ``I`` has coefficient ``+1`` on a basis class ``J`` when one side of
  ``I`` is the union of an even number of consecutive blocks/gaps of ``J``,
  ``-1`` for an odd number, and ``0`` when no such segment exists.
* :func:`oracle_expand` rebuilds the same vector by brute force from the single
  Keel relation on the quadruple ``(m-1, m, m+p, m+p+1)`` around the run
  ``I = (m, ..., m+p)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .basis import NonAdjacentBasis, nonadjacent_basis
from .combinatorics import (
    BlockDecomposition,
    BoundaryDivisor,
    CyclicOrder,
    DivisorError,
    decompose,
    is_consecutive,
)

ORACLE_MAX_N = 22


class OracleError(RuntimeError):
    """The brute-force relation produced a term it should never produce."""


@lru_cache(maxsize=128)
def basis_for(order: CyclicOrder) -> NonAdjacentBasis:
    return nonadjacent_basis(order)


def _resolve(order, basis):
    if basis is None:
        return basis_for(order)
    if basis.order != order:
        raise ValueError("basis was built for a different cyclic order")
    return basis


@dataclass(frozen=True, eq=False)
class BasisCoordinates:
    """Integer coefficients aligned with ``basis.elements``."""

    basis: NonAdjacentBasis
    coeffs: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, BasisCoordinates):
            return NotImplemented
        return self.basis.order == other.basis.order and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __add__(self, other):
        if self.basis.order != other.basis.order:
            raise ValueError("coordinates refer to different bases")
        return BasisCoordinates(self.basis, self.coeffs + other.coeffs)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c: int):
        return BasisCoordinates(self.basis, int(c) * self.coeffs)

    def terms(self) -> list[tuple[int, BoundaryDivisor]]:
        """Nonzero ``(coefficient, divisor)`` pairs in basis order."""
        return [(int(self.coeffs[i]), self.basis.elements[i]) for i in np.flatnonzero(self.coeffs)]

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __str__(self):
        parts = []
        for c, d in self.terms():
            sign = "+" if c > 0 else "-"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}{d}")
        return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Segment:
    """A cyclically contiguous run of pieces ``(B1, G1, ..., BN, GN)``.

    ``start`` indexes the first piece in the flattened piece sequence, so even
    starts begin with a block and odd starts with a gap.
    """

    pieces: tuple[tuple[int, ...], ...]
    start: int

    @property
    def length(self) -> int:
        return len(self.pieces)

    @property
    def starts_with_block(self) -> bool:
        return self.start % 2 == 0

    def labels(self) -> frozenset[int]:
        return frozenset(lab for p in self.pieces for lab in p)

    def sign(self) -> int:
        return 1 if self.length % 2 == 0 else -1


def segments(dec: BlockDecomposition):
    """Every segment of ``dec`` with 1 to ``2N - 1`` pieces."""
    pieces = dec.pieces()
    total = len(pieces)
    for start in range(total):
        for length in range(1, total):
            yield Segment(tuple(pieces[(start + t) % total] for t in range(length)), start)


def matching_segment(dec: BlockDecomposition, target: Iterable[int]) -> Segment | None:
    """The segment whose union is exactly ``target``, if there is one."""
    target = frozenset(target)
    pieces = dec.pieces()
    total = len(pieces)
    for start in range(total):
        if pieces[start][0] not in target:
            continue
        acc: set[int] = set()
        for length in range(1, total):
            piece = pieces[(start + length - 1) % total]
            if not target.issuperset(piece):
                break
            acc.update(piece)
            if len(acc) == len(target):
                return Segment(tuple(pieces[(start + t) % total] for t in range(length)), start)
    return None


def coefficient(I: BoundaryDivisor, J: BoundaryDivisor, order: CyclicOrder) -> int:
    """Coefficient of the basis class ``J`` in the expansion of the run ``I``.

    Either side of ``I`` may be matched; complementing swaps blocks and gaps
    and keeps the piece-count parity.
    """
    if not I.n == J.n == order.n:
        raise ValueError("I, J and the order must share n")
    if not is_consecutive(I, order):
        raise DivisorError(f"{I} is not consecutive for {order}")
    if is_consecutive(J, order):
        raise DivisorError(f"{J} is consecutive for {order}, not a basis element")
    dec = decompose(J, order)
    for side in I.sides():
        seg = matching_segment(dec, side.labels)
        if seg is not None:
            return seg.sign()
    return 0


def _run_of(order: CyclicOrder, mask: int) -> tuple[int, int]:
    """Start slot and length of a consecutive label mask."""
    n = order.n
    pm = order.positional_mask(mask)
    for s in range(n):
        if (pm >> s) & 1 and not (pm >> ((s - 1) % n)) & 1:
            return s, bin(pm).count("1")
    raise DivisorError("mask is empty or full")


def expand(d: BoundaryDivisor, order: CyclicOrder, basis: NonAdjacentBasis | None = None) -> BasisCoordinates:
    """Coordinates of ``d`` in the non-adjacent basis of ``order``.

    >>> from picardm0n import BoundaryDivisor, CyclicOrder
    >>> print(expand(BoundaryDivisor.of(6, [1, 2, 3]), CyclicOrder.standard(6)))
    -d{1,3} +d{1,4} +d{3,6} -d{4,6} +d{1,2,4} -d{1,3,5} +d{1,4,5}
    """
    if d.n != order.n:
        raise ValueError(f"divisor lives on n={d.n} but the order has n={order.n}")
    if order.n < 4:
        raise ValueError("expansion needs n >= 4")
    basis = _resolve(order, basis)
    at = basis.index.get(d)
    if at is not None:
        coeffs = np.zeros(len(basis), dtype=np.int64)
        coeffs[at] = 1
        return BasisCoordinates(basis, coeffs)
    start, length = _run_of(order, d.mask)
    return BasisCoordinates(basis, kernels.segment_parity(basis.positional, start, length, order.n))


def oracle_expand(d: BoundaryDivisor, order: CyclicOrder, basis: NonAdjacentBasis | None = None) -> BasisCoordinates:
    """Expansion of a consecutive class from one Keel relation, by enumeration.

    With ``I = (m, ..., m+p)`` in slot coordinates the relation reads

        sum over {m-1, m+p in A; m, m+p+1 not in A}
          = sum over {m-1, m+p+1 in A; m, m+p not in A},

    and the right-hand side contains ``S_n \\ I`` exactly once. Every other
    term must be a basis class; anything else raises :class:`OracleError`.
    """
    n = order.n
    if d.n != n:
        raise ValueError(f"divisor lives on n={d.n} but the order has n={n}")
    if not 4 <= n <= ORACLE_MAX_N:
        raise ValueError(f"oracle_expand supports 4 <= n <= {ORACLE_MAX_N}, got {n}")
    if not is_consecutive(d, order):
        raise DivisorError(f"{d} is not consecutive for {order}")
    basis = _resolve(order, basis)

    s, length = _run_of(order, d.mask)
    e = s + length - 1
    before, first, last, after = ((x % n) for x in (s - 1, s, e, e + 1))
    bit = lambda p: 1 << p  # noqa: E731
    lhs = kernels.constrained_subsets(n, bit(before) | bit(last), bit(first) | bit(after))
    rhs = kernels.constrained_subsets(n, bit(before) | bit(after), bit(first) | bit(last))

    run = 0
    for t in range(length):
        run |= bit((s + t) % n)
    outside_run = ((1 << n) - 1) ^ run
    hits = rhs == outside_run
    if int(hits.sum()) != 1:
        raise OracleError(f"complement of {d} appears {int(hits.sum())} times on the right-hand side")
    rhs = rhs[~hits]

    coeffs = np.zeros(len(basis), dtype=np.int64)
    for sign, pos in ((1, lhs), (-1, rhs)):
        if pos.size == 0:
            continue
        size = kernels.popcount(pos)
        if np.any((size < 2) | (size > n - 2)):
            raise OracleError("relation produced a subset that is not a boundary divisor")
        if np.any(kernels.cyclic_runs(pos, n) < 2):
            raise OracleError(f"relation for {d} produced a consecutive term")
        labels = kernels.canonical_side(order.from_positional(pos), n)
        idx = basis.lookup(labels)
        if np.any(idx < 0):
            raise OracleError("relation produced a class missing from the basis")
        coeffs += sign * np.bincount(idx, minlength=len(basis))
    return BasisCoordinates(basis, coeffs)


def expand_formal(
    terms: Iterable[tuple[int, BoundaryDivisor]] | Mapping[BoundaryDivisor, int],
    order: CyclicOrder,
    basis: NonAdjacentBasis | None = None,
) -> BasisCoordinates:
    """Expand an integer combination of divisor classes term by term."""
    basis = _resolve(order, basis)
    if isinstance(terms, Mapping):
        terms = [(c, d) for d, c in terms.items()]
    total = np.zeros(len(basis), dtype=np.int64)
    for c, d in terms:
        total += int(c) * expand(d, order, basis).coeffs
    return BasisCoordinates(basis, total)
