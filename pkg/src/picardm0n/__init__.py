"""Combinatorial presentation of Pic(M_{0,n}).

Boundary divisors, their block/gap decompositions around a cyclic order, the
non-adjacent basis, segment-parity expansions, Keel's relations, and exact
rank checks tying them together.
"""
from ._jit import USE_NUMBA
from .basis import NonAdjacentBasis, dimension, nonadjacent_basis
from .combinatorics import (
    BlockDecomposition,
    BoundaryDivisor,
    CyclicOrder,
    DivisorError,
    MarkedSubset,
    canonicalize,
    decompose,
    enumerate_divisors,
    is_consecutive,
    num_divisors,
    polygon_signature,
)
from .expansion import (
    BasisCoordinates,
    OracleError,
    Segment,
    coefficient,
    expand,
    expand_formal,
    oracle_expand,
)
from .linalg import IntMatrix, in_row_space, quotient_dimension_check, rank
from .relations import (
    FormalDivisorSum,
    KeelQuadruple,
    RelationMatrix,
    keel_sums,
    relation_matrix,
    verify_consistency,
)

__version__ = "0.1.0"

__all__ = [
    "USE_NUMBA",
    "BasisCoordinates",
    "BlockDecomposition",
    "BoundaryDivisor",
    "CyclicOrder",
    "DivisorError",
    "FormalDivisorSum",
    "IntMatrix",
    "KeelQuadruple",
    "MarkedSubset",
    "NonAdjacentBasis",
    "OracleError",
    "RelationMatrix",
    "Segment",
    "canonicalize",
    "coefficient",
    "decompose",
    "dimension",
    "enumerate_divisors",
    "expand",
    "expand_formal",
    "in_row_space",
    "is_consecutive",
    "keel_sums",
    "nonadjacent_basis",
    "num_divisors",
    "oracle_expand",
    "polygon_signature",
    "quotient_dimension_check",
    "rank",
    "relation_matrix",
    "verify_consistency",
]
