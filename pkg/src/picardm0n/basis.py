"""The non-adjacent basis of Pic(M_{0,n}) attached to a cyclic order."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from . import kernels
from .combinatorics import (
    BoundaryDivisor,
    CyclicOrder,
    MarkedSubset,
    _check_n,
    divisor_masks,
)


def dimension(n: int) -> int:
    """Rank of Pic(M_{0,n}): ``2^(n-1) - 1 - C(n, 2)``."""
    _check_n(n)
    return 2 ** (n - 1) - 1 - comb(n, 2)


@dataclass(frozen=True, eq=False)
class NonAdjacentBasis:
    """Divisors with at least two blocks for ``order``, sorted by (size, mask).

    ``masks`` holds the canonical label masks and ``positional`` the same
    divisors in slot coordinates of ``order``; both are aligned with
    ``elements``.
    """

    order: CyclicOrder
    masks: np.ndarray
    positional: np.ndarray = field(repr=False)
    elements: tuple[BoundaryDivisor, ...] = field(repr=False)
    index: dict = field(repr=False)

    @property
    def n(self) -> int:
        return self.order.n

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, d):
        return d in self.index

    @cached_property
    def _sorted(self):
        perm = np.argsort(self.masks, kind="stable")
        return self.masks[perm], perm

    def lookup(self, masks) -> np.ndarray:
        """Positions of canonical label masks in the basis, ``-1`` when absent."""
        masks = np.asarray(masks, dtype=kernels.MASK_DTYPE)
        srt, perm = self._sorted
        if len(srt) == 0:
            return np.full(masks.shape, -1, dtype=np.int64)
        at = np.minimum(np.searchsorted(srt, masks), len(srt) - 1)
        return np.where(srt[at] == masks, perm[at], -1)


def nonadjacent_basis(order: CyclicOrder) -> NonAdjacentBasis:
    """Basis of divisor classes that are not runs of ``order``.

    For ``n = 3`` there are no boundary divisors and the basis is empty.
    """
    n = order.n
    masks = divisor_masks(n)
    pos = order.to_positional(masks)
    keep = kernels.cyclic_runs(pos, n) >= 2
    masks, pos = masks[keep], pos[keep]
    elements = tuple(BoundaryDivisor(n, MarkedSubset(n, int(m))) for m in masks)
    return NonAdjacentBasis(
        order=order,
        masks=masks,
        positional=pos,
        elements=elements,
        index={d: i for i, d in enumerate(elements)},
    )
