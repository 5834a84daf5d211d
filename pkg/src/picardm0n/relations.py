"""Keel's relations among boundary classes and the full relation matrix."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from .basis import NonAdjacentBasis
from .combinatorics import BoundaryDivisor, CyclicOrder, MarkedSubset, _check_n, divisor_masks
from .expansion import expand_formal
from .linalg import IntMatrix

RELATION_MAX_N = 12


@dataclass(frozen=True)
class KeelQuadruple:
    n: int
    labels: tuple[int, int, int, int]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if len(labels) != 4 or len(set(labels)) != 4:
            raise ValueError(f"need four distinct labels, got {self.labels}")
        if not all(1 <= x <= self.n for x in labels):
            raise ValueError(f"labels {labels} out of range 1..{self.n}")
        object.__setattr__(self, "labels", labels)


class FormalDivisorSum(Mapping):
    """Integer combination of boundary classes; zero coefficients are dropped."""

    def __init__(self, n: int, terms: Mapping[BoundaryDivisor, int] | None = None):
        self.n = n
        self._terms = {d: int(c) for d, c in (terms or {}).items() if c}

    def __getitem__(self, d):
        return self._terms[d]

    def __iter__(self):
        return iter(sorted(self._terms, key=BoundaryDivisor.sort_key))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, FormalDivisorSum):
            return self.n == other.n and self._terms == other._terms
        return NotImplemented

    def __sub__(self, other: FormalDivisorSum) -> FormalDivisorSum:
        out = dict(self._terms)
        for d, c in other._terms.items():
            out[d] = out.get(d, 0) - c
        return FormalDivisorSum(self.n, out)

    def __str__(self):
        if not self._terms:
            return "0"
        return " ".join(f"{'+' if c > 0 else '-'}{'' if abs(c) == 1 else abs(c)}{d}" for d, c in self.items())


def keel_subsets(n: int, inside: tuple[int, int], outside: tuple[int, int]) -> np.ndarray:
    """Raw label masks ``A`` with both ``inside`` labels in ``A`` and both ``outside`` labels not."""
    bit = lambda lab: 1 << (lab - 1)  # noqa: E731
    return kernels.constrained_subsets(n, bit(inside[0]) | bit(inside[1]), bit(outside[0]) | bit(outside[1]))


def _collect(n: int, raw: np.ndarray) -> FormalDivisorSum:
    canon, counts = np.unique(kernels.canonical_side(raw, n), return_counts=True)
    return FormalDivisorSum(n, {BoundaryDivisor(n, MarkedSubset(n, int(m))): int(c) for m, c in zip(canon, counts)})


def keel_sums(q: KeelQuadruple) -> tuple[FormalDivisorSum, FormalDivisorSum, FormalDivisorSum]:
    """The three sums ``S_{ij|kl}``, ``S_{ik|jl}``, ``S_{il|jk}`` for ``q = (i, j, k, l)``."""
    n = q.n
    if n < 4:
        raise ValueError("Keel relations need n >= 4")
    i, j, k, l = q.labels
    return (
        _collect(n, keel_subsets(n, (i, j), (k, l))),
        _collect(n, keel_subsets(n, (i, k), (j, l))),
        _collect(n, keel_subsets(n, (i, l), (j, k))),
    )


def quadruples(n: int):
    for c in combinations(range(1, n + 1), 4):
        yield KeelQuadruple(n, c)


@dataclass(frozen=True, eq=False)
class RelationMatrix:
    """Rows ``S1 - S2`` and ``S2 - S3`` per quadruple, columns in divisor order.

    Rows are sparse ``{column: value}`` dicts; row ``2t`` and ``2t + 1`` come
    from ``quads[t]``.
    """

    n: int
    rows: tuple[dict, ...]
    columns: tuple[BoundaryDivisor, ...]
    quads: tuple[KeelQuadruple, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_intmatrix(self) -> IntMatrix:
        return IntMatrix.from_sparse(self.rows, len(self.columns))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out[i, j] = v
        return out

    def column_vector(self, combo: Mapping[BoundaryDivisor, int]) -> list[int]:
        """A divisor combination written in column coordinates."""
        col = {d: j for j, d in enumerate(self.columns)}
        v = [0] * len(self.columns)
        for d, c in combo.items():
            v[col[d]] += int(c)
        return v

    def to_coo_text(self) -> str:
        """``rows cols nnz`` header, then ``row col value`` lines, 1-based."""
        r, c = self.shape
        lines = [f"{r} {c} {self.nnz}"]
        for i, row in enumerate(self.rows):
            for j in sorted(row):
                lines.append(f"{i + 1} {j + 1} {row[j]}")
        return "\n".join(lines) + "\n"


def relation_matrix(n: int) -> RelationMatrix:
    """All Keel relation differences for ``n`` labels, quadruples in lexicographic order."""
    _check_n(n)
    if not 4 <= n <= RELATION_MAX_N:
        raise ValueError(f"relation_matrix supports 4 <= n <= {RELATION_MAX_N}, got {n}")
    cols = divisor_masks(n)
    perm = np.argsort(cols)
    srt = cols[perm]

    def sparse_row(a: FormalDivisorSum, b: FormalDivisorSum) -> dict:
        diff = a - b
        if not diff:
            return {}
        masks = np.array([d.mask for d in diff], dtype=kernels.MASK_DTYPE)
        at = perm[np.searchsorted(srt, masks)]
        return {int(j): diff[d] for j, d in zip(at, diff)}

    rows, quads = [], []
    for q in quadruples(n):
        s1, s2, s3 = keel_sums(q)
        rows.append(sparse_row(s1, s2))
        rows.append(sparse_row(s2, s3))
        quads.append(q)
    columns = tuple(BoundaryDivisor(n, MarkedSubset(n, int(m))) for m in cols)
    return RelationMatrix(n=n, rows=tuple(rows), columns=columns, quads=tuple(quads))


def verify_consistency(q: KeelQuadruple, order: CyclicOrder, basis: NonAdjacentBasis | None = None) -> bool:
    """Do the three Keel sums of ``q`` expand to the same basis vector?"""
    if q.n != order.n:
        raise ValueError(f"quadruple lives on n={q.n} but the order has n={order.n}")
    e1, e2, e3 = (expand_formal(s, order, basis) for s in keel_sums(q))
    return e1 == e2 == e3
