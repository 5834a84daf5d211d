from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picardm0n import (
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

from conftest import brute_divisors, runs_of


def D(n, *labels):
    return BoundaryDivisor.of(n, labels)


# -- canonicalize --------------------------------------------------------------


@pytest.mark.parametrize(
    "n,subset,rep",
    [
        (4, {3, 4}, (1, 2)),
        (6, {1, 2, 3, 5}, (4, 6)),
        (5, {2, 4}, (2, 4)),
        (6, {4, 5, 6}, (1, 2, 3)),
        (6, {1, 2, 3}, (1, 2, 3)),
    ],
)
def test_canonicalize_examples(n, subset, rep):
    assert canonicalize(MarkedSubset.of(n, subset)).labels == rep


@pytest.mark.parametrize("n,subset", [(5, {1}), (5, {1, 2, 3, 4}), (6, set()), (4, {1, 2, 3})])
def test_canonicalize_rejects_non_divisors(n, subset):
    with pytest.raises(DivisorError):
        canonicalize(MarkedSubset.of(n, subset))


def test_marked_subset_validation():
    with pytest.raises(ValueError):
        MarkedSubset.of(4, [1, 5])
    with pytest.raises(ValueError):
        MarkedSubset.of(4, [1, 1])
    with pytest.raises(ValueError):
        MarkedSubset(3, 0b1000)


def test_boundary_divisor_requires_canonical_rep():
    with pytest.raises(DivisorError):
        BoundaryDivisor(4, MarkedSubset.of(4, [3, 4]))


sides = st.integers(4, 16).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n), min_size=2, max_size=n - 2))
)


@settings(max_examples=200, deadline=None)
@given(sides)
def test_canonicalize_complement_invariant_and_idempotent(data):
    n, subset = data
    a = MarkedSubset.of(n, subset)
    d = canonicalize(a)
    assert d == canonicalize(a.complement())
    assert canonicalize(d.rep) == d
    assert set(d.labels) == canon_side(n, subset)


def canon_side(n, subset):
    other = set(range(1, n + 1)) - set(subset)
    if len(subset) < len(other) or (len(subset) == len(other) and 1 in subset):
        return set(subset)
    return other


# -- enumerate_divisors ------------------------------------------------------------


def test_enumerate_small_cases():
    assert [d.labels for d in enumerate_divisors(4)] == [(1, 2), (1, 3), (1, 4)]
    five = enumerate_divisors(5)
    assert len(five) == 10 and all(len(d.rep) == 2 for d in five)
    assert enumerate_divisors(3) == []


@pytest.mark.parametrize("n", range(3, 10))
def test_enumerate_matches_brute_force(n):
    divs = enumerate_divisors(n)
    assert {frozenset(d.labels) for d in divs} == brute_divisors(n)
    assert len(divs) == len(set(divs)) == num_divisors(n)
    keys = [d.sort_key() for d in divs]
    assert keys == sorted(keys)


@pytest.mark.parametrize("n", range(3, 15))
def test_enumerate_count(n):
    assert len(enumerate_divisors(n)) == 2 ** (n - 1) - 1 - n


def test_enumerate_rejects_small_n():
    with pytest.raises(ValueError):
        enumerate_divisors(2)


# -- cyclic orders -------------------------------------------------------------------


def test_cyclic_order_rotation_and_reflection():
    a = CyclicOrder((3, 4, 5, 1, 2))
    assert a.arrangement == (1, 2, 3, 4, 5)
    assert a == CyclicOrder.standard(5)
    assert CyclicOrder((1, 5, 4, 3, 2)) != a
    assert a.position == (0, 1, 2, 3, 4)
    assert CyclicOrder.parse("1,4,6,2,3,5").position == (0, 3, 4, 1, 5, 2)


@pytest.mark.parametrize("arr", [(1, 2), (1, 2, 2), (0, 1, 2), (1, 2, 4)])
def test_cyclic_order_rejects_bad_arrangements(arr):
    with pytest.raises(ValueError):
        CyclicOrder(arr)


# -- decompose ------------------------------------------------------------------------


def test_decompose_hexagon():
    dec = decompose(D(10, 1, 2, 4, 7, 10), CyclicOrder.standard(10))
    assert dec.k == 3
    assert dec.blocks == ((10, 1, 2), (4,), (7,))
    assert dec.gaps == ((3,), (5, 6), (8, 9))


def test_decompose_two_pointed_circle():
    dec = decompose(D(10, 1, 2, 3, 9, 10), CyclicOrder.standard(10))
    assert dec.k == 1
    assert dec.blocks == ((9, 10, 1, 2, 3),)
    assert dec.gaps == ((4, 5, 6, 7, 8),)


def test_decompose_square():
    dec = decompose(D(4, 1, 3), CyclicOrder.standard(4))
    assert (dec.blocks, dec.gaps, dec.k) == (((1,), (3,)), ((2,), (4,)), 2)


def test_decompose_rejects_mismatched_n():
    with pytest.raises(ValueError):
        decompose(D(5, 1, 3), CyclicOrder.standard(6))


subset_and_order = st.integers(4, 14).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.sets(st.integers(1, n), min_size=2, max_size=n - 2),
        st.permutations(list(range(1, n + 1))),
    )
)


@settings(max_examples=200, deadline=None)
@given(subset_and_order)
def test_decompose_invariants(data):
    n, subset, arr = data
    order = CyclicOrder(tuple(arr))
    side = MarkedSubset.of(n, subset)
    dec = decompose(side, order)
    pieces = dec.pieces()
    # tiling in cyclic order
    flat = [lab for p in pieces for lab in p]
    assert sorted(flat) == list(range(1, n + 1))
    i = order.arrangement.index(flat[0])
    assert tuple(flat) == order.arrangement[i:] + order.arrangement[:i]
    assert all(pieces)
    assert set().union(*dec.blocks) == set(subset)
    assert not set().union(*dec.gaps) & set(subset)
    # minimal k = number of maximal runs, computed naively
    assert dec.k == len(runs_of(set(subset), order.arrangement))
    # B1 holds the member that comes first in the arrangement
    first = next(lab for lab in order.arrangement if lab in subset)
    assert first in dec.blocks[0]
    # duality
    cdec = decompose(side.complement(), order)
    assert cdec.k == dec.k
    assert Counter(cdec.blocks) == Counter(dec.gaps)
    assert Counter(cdec.gaps) == Counter(dec.blocks)


# -- is_consecutive / signature ---------------------------------------------------------


def test_is_consecutive_examples():
    assert is_consecutive(D(5, 1, 2), CyclicOrder.standard(5))
    assert not is_consecutive(D(5, 1, 3), CyclicOrder.standard(5))
    order = CyclicOrder((1, 4, 6, 2, 3, 5))
    d = D(6, 4, 6)
    assert decompose(d, order).k == 1
    assert is_consecutive(d, order)


@settings(max_examples=100, deadline=None)
@given(subset_and_order)
def test_is_consecutive_agrees_with_decompose(data):
    n, subset, arr = data
    order = CyclicOrder(tuple(arr))
    d = canonicalize(MarkedSubset.of(n, subset))
    assert is_consecutive(d, order) == (decompose(d, order).k == 1)
    assert is_consecutive(d, order) == (decompose(d.rep.complement(), order).k == 1)


@pytest.mark.parametrize(
    "n,labels,sig",
    [
        (10, (1, 2, 4, 7, 10), "(10,1,2|3|4|5,6|7|8,9)"),
        (10, (1, 2, 3, 9, 10), "(9,10,1,2,3|4,5,6,7,8)"),
        (4, (1, 3), "(1|2|3|4)"),
    ],
)
def test_polygon_signature(n, labels, sig):
    assert polygon_signature(D(n, *labels), CyclicOrder.standard(n)) == sig
