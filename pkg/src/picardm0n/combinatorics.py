"""Labels, cyclic orders, subsets and boundary divisors of M_{0,n}.

Labels are the integers ``1..n``. A subset of labels is stored as an ``n``-bit
mask with bit ``l - 1`` standing for label ``l``. A boundary divisor is the
unordered pair ``{A, S_n \\ A}`` with ``2 <= |A| <= n - 2``; we store one side,
the *canonical representative*: the smaller side, or on a tie the side that
contains label 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import kernels

MAX_N = 25


class DivisorError(ValueError):
    """Raised for subsets that do not describe a boundary divisor."""


def _check_n(n: int, low: int = 3) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"n must be an integer, got {n!r}")
    if n < low:
        raise ValueError(f"n must be at least {low}, got {n}")
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds the supported maximum {MAX_N}")


def _popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(labels: Iterable[int]) -> int:
    m = 0
    for lab in labels:
        m |= 1 << (int(lab) - 1)
    return m


def labels_of(mask: int) -> tuple[int, ...]:
    out = []
    lab = 1
    while mask:
        if mask & 1:
            out.append(lab)
        mask >>= 1
        lab += 1
    return tuple(out)


@dataclass(frozen=True)
class CyclicOrder:
    """An arrangement of ``1..n`` around an oriented n-gon, up to rotation.

    The stored ``arrangement`` is rotated so that it starts with label 1.
    Reflections are *not* identified.
    """

    arrangement: tuple[int, ...]
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        arr = tuple(int(x) for x in self.arrangement)
        n = len(arr)
        _check_n(n)
        if sorted(arr) != list(range(1, n + 1)):
            raise ValueError(f"arrangement {arr} is not a permutation of 1..{n}")
        i = arr.index(1)
        arr = arr[i:] + arr[:i]
        pos = [0] * n
        for p, lab in enumerate(arr):
            pos[lab - 1] = p
        object.__setattr__(self, "arrangement", arr)
        object.__setattr__(self, "position", tuple(pos))

    @classmethod
    def standard(cls, n: int) -> CyclicOrder:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> CyclicOrder:
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def n(self) -> int:
        return len(self.arrangement)

    def is_standard(self) -> bool:
        return self.arrangement == tuple(range(1, self.n + 1))

    def label_at(self, p: int) -> int:
        return self.arrangement[p % self.n]

    def relabel(self, sigma) -> CyclicOrder:
        """Apply a label permutation, given as a map ``label -> label``."""
        return CyclicOrder(tuple(sigma[lab] for lab in self.arrangement))

    # positional <-> label masks; bit p of a positional mask is slot p
    def to_positional(self, masks):
        return kernels.permute_bits(masks, [lab - 1 for lab in self.arrangement])

    def from_positional(self, masks):
        return kernels.permute_bits(masks, list(self.position))

    def positional_mask(self, mask: int) -> int:
        out = 0
        for p, lab in enumerate(self.arrangement):
            if (mask >> (lab - 1)) & 1:
                out |= 1 << p
        return out

    def __str__(self):
        return "(" + ",".join(map(str, self.arrangement)) + ")"


@dataclass(frozen=True, order=True)
class MarkedSubset:
    """A subset of the labels ``1..n`` as an ``n``-bit mask."""

    n: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has bits outside 1..{self.n}")

    @classmethod
    def of(cls, n: int, labels: Iterable[int]) -> MarkedSubset:
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in {labels}")
        bad = [x for x in labels if not 1 <= x <= n]
        if bad:
            raise ValueError(f"labels {bad} out of range 1..{n}")
        return cls(n, mask_of(labels))

    @property
    def labels(self) -> tuple[int, ...]:
        return labels_of(self.mask)

    def __len__(self):
        return _popcount(self.mask)

    def __contains__(self, label):
        return 1 <= label <= self.n and bool((self.mask >> (label - 1)) & 1)

    def complement(self) -> MarkedSubset:
        return MarkedSubset(self.n, ((1 << self.n) - 1) ^ self.mask)


@dataclass(frozen=True)
class BoundaryDivisor:
    """Boundary divisor ``d_A = d_{S_n \\ A}``, keyed by its canonical side."""

    n: int
    rep: MarkedSubset

    def __post_init__(self):
        k = len(self.rep)
        if not 2 <= k <= self.n - 2:
            raise DivisorError(f"|A|={k} is not in 2..{self.n - 2}")
        if canonical_mask(self.rep.mask, self.n) != self.rep.mask:
            raise DivisorError(f"{self.rep.labels} is not a canonical representative; use canonicalize()")

    @classmethod
    def of(cls, n: int, labels: Iterable[int]) -> BoundaryDivisor:
        return canonicalize(MarkedSubset.of(n, labels))

    @property
    def mask(self) -> int:
        return self.rep.mask

    @property
    def labels(self) -> tuple[int, ...]:
        return self.rep.labels

    def sort_key(self):
        return (len(self.rep), self.rep.mask)

    def sides(self) -> tuple[MarkedSubset, MarkedSubset]:
        return self.rep, self.rep.complement()

    def __str__(self):
        return "d{" + ",".join(map(str, self.labels)) + "}"


def canonical_mask(mask: int, n: int) -> int:
    c = _popcount(mask)
    if 2 * c > n or (2 * c == n and not mask & 1):
        return ((1 << n) - 1) ^ mask
    return mask


def canonicalize(subset: MarkedSubset) -> BoundaryDivisor:
    """Return the boundary divisor ``d_A`` for the side ``A``.

    >>> canonicalize(MarkedSubset.of(4, [3, 4])).labels
    (1, 2)
    """
    n = subset.n
    k = len(subset)
    if not 2 <= k <= n - 2:
        raise DivisorError(f"|A|={k} is not in 2..{n - 2}; not a boundary divisor of M_0,{n}")
    return BoundaryDivisor(n, MarkedSubset(n, canonical_mask(subset.mask, n)))


def num_divisors(n: int) -> int:
    _check_n(n)
    return 2 ** (n - 1) - 1 - n


def divisor_masks(n: int) -> np.ndarray:
    """Canonical masks of all boundary divisors, sorted by (size, mask)."""
    _check_n(n)
    return kernels.canonical_reps(n)


def enumerate_divisors(n: int) -> list[BoundaryDivisor]:
    """All ``2^(n-1) - 1 - n`` boundary divisors of M_{0,n}, each once."""
    return [BoundaryDivisor(n, MarkedSubset(n, int(m))) for m in divisor_masks(n)]


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks and gaps ``(B1, G1, ..., Bk, Gk)`` of a subset around a cyclic order."""

    order: CyclicOrder
    blocks: tuple[tuple[int, ...], ...]
    gaps: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    def pieces(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for b, g in zip(self.blocks, self.gaps):
            out.append(b)
            out.append(g)
        return tuple(out)

    def signature(self) -> str:
        return "(" + "|".join(",".join(map(str, p)) for p in self.pieces()) + ")"


def decompose(d: BoundaryDivisor | MarkedSubset, order: CyclicOrder) -> BlockDecomposition:
    """Split a divisor (or one raw side of it) into alternating blocks and gaps.

    ``B1`` is the block holding the member of the side that comes first in
    ``order.arrangement``. Passing the complement side swaps blocks and gaps.
    """
    side = d.rep if isinstance(d, BoundaryDivisor) else d
    n = order.n
    if side.n != n:
        raise ValueError(f"divisor lives on n={side.n} but the order has n={n}")
    if not 0 < len(side) < n:
        raise ValueError("cannot decompose the empty or the full subset")
    inside = [lab in side for lab in order.arrangement]
    s = inside.index(True)
    while inside[(s - 1) % n]:
        s -= 1
    runs: list[list[int]] = []
    prev = None
    for t in range(n):
        p = (s + t) % n
        if inside[p] != prev:
            runs.append([])
            prev = inside[p]
        runs[-1].append(order.arrangement[p])
    return BlockDecomposition(
        order=order,
        blocks=tuple(tuple(r) for r in runs[0::2]),
        gaps=tuple(tuple(r) for r in runs[1::2]),
    )


def is_consecutive(d: BoundaryDivisor, order: CyclicOrder) -> bool:
    """True when the divisor's sides are single runs of the cyclic order."""
    if d.n != order.n:
        raise ValueError(f"divisor lives on n={d.n} but the order has n={order.n}")
    pm = order.positional_mask(d.mask)
    return int(kernels.cyclic_runs(np.array([pm]), order.n)[0]) == 1


def polygon_signature(d: BoundaryDivisor, order: CyclicOrder) -> str:
    """Text form of the 2k-gon, e.g. ``"(10,1,2|3|4|5,6|7|8,9)"``."""
    return decompose(d, order).signature()
