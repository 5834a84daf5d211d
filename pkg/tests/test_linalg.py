import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picardm0n import (
    BoundaryDivisor,
    CyclicOrder,
    IntMatrix,
    enumerate_divisors,
    expand,
    in_row_space,
    is_consecutive,
    quotient_dimension_check,
    rank,
    relation_matrix,
)
from picardm0n.kernels import rank_mod_p
from picardm0n.linalg import bareiss_echelon

from conftest import fraction_rank

int_rows = st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=7)
)


def test_zero_matrix():
    assert rank(IntMatrix([[0] * 3] * 3)) == 0
    assert rank(IntMatrix([])) == 0


@pytest.mark.parametrize("n,r", [(4, 2), (5, 5), (6, 9), (7, 14)])
def test_relation_matrix_rank(n, r):
    rm = relation_matrix(n)
    assert rank(rm.to_intmatrix()) == r
    assert fraction_rank(rm.to_intmatrix().tolist()) == r


@settings(max_examples=80, deadline=None)
@given(int_rows)
def test_rank_matches_fraction_elimination(rows):
    assert rank(IntMatrix(rows)) == fraction_rank(rows)


@settings(max_examples=40, deadline=None)
@given(int_rows, st.randoms(use_true_random=False))
def test_rank_invariant_under_row_permutation_and_transpose(rows, rnd):
    m = IntMatrix(rows)
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert rank(IntMatrix(shuffled)) == rank(m) == rank(m.transpose())


def test_bareiss_growth_stays_exact():
    # Hilbert-like integer matrix with large minors; divisions must stay exact
    rows = [[(i + 1) ** j for j in range(8)] for i in range(8)]
    echelon, pivots = bareiss_echelon(IntMatrix(rows))
    assert pivots == list(range(8))
    # last pivot of Bareiss is the determinant (Vandermonde on 1..8)
    det = 1
    for j in range(8):
        for i in range(j):
            det *= (j + 1) - (i + 1)
    assert echelon[7][7] == det


def test_in_row_space_rows_and_units():
    rm = relation_matrix(5)
    m = rm.to_intmatrix()
    for i in range(m.nrows):
        assert in_row_space(m.row(i), m)
    d13 = BoundaryDivisor.of(5, [1, 3])
    assert not in_row_space(rm.column_vector({d13: 1}), m)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_expansion_residuals_are_relations(n):
    rm = relation_matrix(n)
    m = rm.to_intmatrix()
    order = CyclicOrder.standard(n)
    for d in enumerate_divisors(n):
        if not is_consecutive(d, order):
            continue
        combo = {d: 1}
        for c, j in expand(d, order).terms():
            combo[j] = combo.get(j, 0) - c
        assert in_row_space(rm.column_vector(combo), m)


def test_in_row_space_dimension_mismatch():
    with pytest.raises(ValueError):
        in_row_space([1, 2], IntMatrix([[1, 2, 3]]))


def test_intmatrix_validation_and_immutability():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    m = IntMatrix.from_sparse([{0: 2}, {2: -1}], 3)
    assert m.tolist() == [[2, 0, 0], [0, 0, -1]]
    lst = m.tolist()
    lst[0][0] = 99
    assert m.row(0) == (2, 0, 0)
    assert m.transpose().shape == (3, 2)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_quotient_dimension_check(n):
    assert quotient_dimension_check(n)


@pytest.mark.parametrize("n", [3, 9])
def test_quotient_dimension_check_range(n):
    with pytest.raises(ValueError):
        quotient_dimension_check(n)


@pytest.mark.parametrize("n", range(4, 9))
def test_modular_fast_path_agrees(n, backend):
    rm = relation_matrix(n)
    assert rank_mod_p(rm.to_dense()) == rank(rm.to_intmatrix())
    assert rank_mod_p(np.zeros((0, 3), dtype=np.int64)) == 0
