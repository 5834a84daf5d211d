"""Shared fixtures and deliberately naive reference implementations.

The helpers here work on Python sets and Fractions only, so they stay
independent of the bitmask kernels and the Bareiss code they check.
"""
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from picardm0n import kernels
from picardm0n._jit import HAVE_NUMBA

# -- brute-force references -----------------------------------------------------


def runs_of(subset, arrangement):
    """Maximal cyclic runs of ``subset`` along ``arrangement`` (list of lists)."""
    n = len(arrangement)
    inside = [x in subset for x in arrangement]
    if all(inside) or not any(inside):
        return []
    s = next(p for p in range(n) if inside[p] and not inside[p - 1])
    runs, cur = [], []
    for t in range(n):
        p = (s + t) % n
        if inside[p]:
            cur.append(arrangement[p])
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def canon(n, subset):
    subset = frozenset(subset)
    other = frozenset(range(1, n + 1)) - subset
    if len(subset) < len(other) or (len(subset) == len(other) and 1 in subset):
        return subset
    return other


def brute_divisors(n):
    out = set()
    for k in range(2, n - 1):
        for c in combinations(range(1, n + 1), k):
            out.add(canon(n, c))
    return out


def brute_basis(n, arrangement):
    return {d for d in brute_divisors(n) if len(runs_of(d, arrangement)) >= 2}


def brute_relation_expand(n, arrangement, subset):
    """Set-based rewrite of a run through the Keel relation around it."""
    arr = list(arrangement)
    pos = {lab: p for p, lab in enumerate(arr)}
    run = sorted(subset, key=lambda lab: pos[lab])
    # rotate so the run is contiguous in slot order
    start = next(pos[x] for x in subset if arr[pos[x] - 1] not in subset)
    length = len(subset)
    before, first = arr[(start - 1) % n], arr[start]
    last, after = arr[(start + length - 1) % n], arr[(start + length) % n]
    assert set(run) == {arr[(start + t) % n] for t in range(length)}
    free = [x for x in arr if x not in (before, first, last, after)]
    comp = frozenset(range(1, n + 1)) - frozenset(subset)
    out = {}
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            a = frozenset(extra) | {before, last}
            out[canon(n, a)] = out.get(canon(n, a), 0) + 1
            b = frozenset(extra) | {before, after}
            if b != comp:
                out[canon(n, b)] = out.get(canon(n, b), 0) - 1
    return {d: c for d, c in out.items() if c}


def fraction_rank(rows):
    """Rank by plain Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    rank, cols = 0, len(a[0])
    for c in range(cols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def random_arrangement(rng, n):
    return tuple(int(x) + 1 for x in rng.permutation(n))


# -- fixtures ---------------------------------------------------------------------


@pytest.fixture(params=["numpy", "numba"])
def backend(request, monkeypatch):
    """Run a test once per kernel flavour."""
    if request.param == "numba" and not HAVE_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setattr(kernels, "USE_NUMBA", request.param == "numba")
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# -- acceptance reporting -----------------------------------------------------------

_ACCEPTANCE = []


@contextmanager
def criterion(tag, text, budget_s):
    """Record one acceptance criterion; fails on error or on a blown time budget."""
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < budget_s
        _ACCEPTANCE.append((tag, text, ok and within, dt, budget_s))
    assert within, f"{tag} took {dt:.2f}s, budget {budget_s}s"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for tag, text, ok, dt, budget in sorted(_ACCEPTANCE, key=lambda r: int(r[0][2:])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {tag:<5} {text}  ({dt:.2f}s / {budget}s)")
