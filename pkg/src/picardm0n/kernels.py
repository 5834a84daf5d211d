"""Bitmask kernels shared by the combinatorics, expansion and relation code.

Every kernel comes in two flavours: a vectorised numpy version (``*_np``) and
a loop version compiled with numba (``*_nb``). The public name dispatches to
one of them according to :data:`picardm0n._jit.USE_NUMBA`.

Masks are ``int64`` arrays. Bit ``p`` of a *positional* mask refers to slot
``p`` of a cyclic order; bit ``l - 1`` of a *label* mask refers to label ``l``.
Nothing here knows about divisors; callers pick the coordinate system.
"""
import numpy as np

from ._jit import USE_NUMBA, njit

MASK_DTYPE = np.int64
DEFAULT_PRIME = 2147483647  # 2**31 - 1, keeps products inside int64


def _as_masks(masks):
    return np.ascontiguousarray(masks, dtype=MASK_DTYPE)


def _full(n):
    return (1 << n) - 1


# --------------------------------------------------------------------------
# numba loop kernels
# --------------------------------------------------------------------------


@njit
def _pc(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def _rotl1(x, n, full):
    # bit p of the result is bit p-1 (mod n) of x
    return ((x << 1) | (x >> (n - 1))) & full


@njit
def popcount_nb(masks):
    out = np.empty(masks.shape[0], dtype=np.int64)
    for i in range(masks.shape[0]):
        out[i] = _pc(masks[i])
    return out


@njit
def cyclic_runs_nb(masks, n):
    full = (np.int64(1) << n) - 1
    out = np.empty(masks.shape[0], dtype=np.int64)
    for i in range(masks.shape[0]):
        m = masks[i]
        out[i] = _pc(m & ~_rotl1(m, n, full))
    return out


@njit
def canonical_side_nb(masks, n):
    full = (np.int64(1) << n) - 1
    out = np.empty(masks.shape[0], dtype=np.int64)
    for i in range(masks.shape[0]):
        m = masks[i]
        c = _pc(m)
        if 2 * c > n or (2 * c == n and (m & 1) == 0):
            out[i] = full ^ m
        else:
            out[i] = m
    return out


@njit
def permute_bits_nb(masks, src):
    out = np.zeros(masks.shape[0], dtype=np.int64)
    for i in range(masks.shape[0]):
        m = masks[i]
        r = np.int64(0)
        for p in range(src.shape[0]):
            if (m >> src[p]) & 1:
                r |= np.int64(1) << p
        out[i] = r
    return out


@njit
def segment_parity_nb(masks, start, length, n):
    full = (np.int64(1) << n) - 1
    end = (start + length) % n
    interior = np.int64(0)
    for t in range(1, length):
        interior |= np.int64(1) << ((start + t) % n)
    out = np.zeros(masks.shape[0], dtype=np.int64)
    for i in range(masks.shape[0]):
        m = masks[i]
        change = m ^ _rotl1(m, n, full)
        if (change >> start) & 1 and (change >> end) & 1:
            pieces = 1 + _pc(change & interior)
            out[i] = 1 if pieces % 2 == 0 else -1
    return out


@njit
def constrained_subsets_nb(n, inside, outside):
    free = np.empty(n, dtype=np.int64)
    f = 0
    for p in range(n):
        if not ((inside >> p) & 1) and not ((outside >> p) & 1):
            free[f] = p
            f += 1
    total = np.int64(1) << f
    out = np.empty(total, dtype=np.int64)
    for k in range(total):
        m = inside
        for t in range(f):
            if (k >> t) & 1:
                m |= np.int64(1) << free[t]
        out[k] = m
    return out


@njit
def canonical_reps_nb(n):
    total = np.int64(1) << n
    count = 0
    for m in range(total):
        c = _pc(m)
        if c >= 2 and c <= n - 2 and (2 * c < n or (2 * c == n and (m & 1))):
            count += 1
    out = np.empty(count, dtype=np.int64)
    j = 0
    for m in range(total):
        c = _pc(m)
        if c >= 2 and c <= n - 2 and (2 * c < n or (2 * c == n and (m & 1))):
            out[j] = m
            j += 1
    return out


@njit
def _powmod(a, e, p):
    r = np.int64(1)
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


@njit
def rank_mod_p_nb(mat, p):
    a = mat.copy()
    rows, cols = a.shape
    for i in range(rows):
        for j in range(cols):
            a[i, j] %= p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _powmod(a[r, c], p - 2, p)
        for j in range(c, cols):
            a[r, j] = a[r, j] * inv % p
        for i in range(r + 1, rows):
            f = a[i, c]
            if f != 0:
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        r += 1
    return r


# --------------------------------------------------------------------------
# numpy kernels
# --------------------------------------------------------------------------


def popcount_np(masks):
    return np.bitwise_count(_as_masks(masks)).astype(np.int64)


def _rotl1_np(masks, n):
    return ((masks << 1) | (masks >> (n - 1))) & _full(n)


def cyclic_runs_np(masks, n):
    masks = _as_masks(masks)
    return popcount_np(masks & ~_rotl1_np(masks, n))


def canonical_side_np(masks, n):
    masks = _as_masks(masks)
    c = popcount_np(masks)
    flip = (2 * c > n) | ((2 * c == n) & ((masks & 1) == 0))
    return np.where(flip, masks ^ _full(n), masks)


def permute_bits_np(masks, src):
    masks = _as_masks(masks)
    out = np.zeros_like(masks)
    for p, s in enumerate(np.asarray(src).tolist()):
        out |= ((masks >> s) & 1) << p
    return out


def segment_parity_np(masks, start, length, n):
    masks = _as_masks(masks)
    change = masks ^ _rotl1_np(masks, n)
    end = (start + length) % n
    interior = 0
    for t in range(1, length):
        interior |= 1 << ((start + t) % n)
    hit = (((change >> start) & 1) == 1) & (((change >> end) & 1) == 1)
    pieces = 1 + popcount_np(change & interior)
    sign = np.where(pieces % 2 == 0, 1, -1)
    return np.where(hit, sign, 0).astype(np.int64)


def constrained_subsets_np(n, inside, outside):
    free = [p for p in range(n) if not (inside >> p) & 1 and not (outside >> p) & 1]
    k = np.arange(1 << len(free), dtype=MASK_DTYPE)
    out = np.full(k.shape, inside, dtype=MASK_DTYPE)
    for t, p in enumerate(free):
        out |= ((k >> t) & 1) << p
    return out


def canonical_reps_np(n, chunk=1 << 20):
    parts = []
    for lo in range(0, 1 << n, chunk):
        m = np.arange(lo, min(lo + chunk, 1 << n), dtype=MASK_DTYPE)
        c = popcount_np(m)
        keep = (c >= 2) & (c <= n - 2) & ((2 * c < n) | ((2 * c == n) & ((m & 1) == 1)))
        parts.append(m[keep])
    return np.concatenate(parts) if parts else np.empty(0, dtype=MASK_DTYPE)


def rank_mod_p_np(mat, p):
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        f = a[r + 1:, c].copy()
        a[r + 1:] = (a[r + 1:] - f[:, None] * a[r]) % p
        r += 1
    return r


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------


def popcount(masks):
    """Number of set bits of each mask."""
    masks = _as_masks(masks)
    return popcount_nb(masks) if USE_NUMBA else popcount_np(masks)


def cyclic_runs(masks, n):
    """Number of maximal cyclic runs of set bits in each ``n``-bit mask.

    The full mask has no run boundary and reports 0, like the empty mask.
    """
    masks = _as_masks(masks)
    return cyclic_runs_nb(masks, n) if USE_NUMBA else cyclic_runs_np(masks, n)


def canonical_side(masks, n):
    """Pick the canonical side of each ``{A, complement}`` pair.

    The smaller side wins; on a tie the side holding bit 0 wins.
    """
    masks = _as_masks(masks)
    return canonical_side_nb(masks, n) if USE_NUMBA else canonical_side_np(masks, n)


def permute_bits(masks, src):
    """Gather bits: bit ``p`` of the output is bit ``src[p]`` of the input."""
    masks = _as_masks(masks)
    src = np.ascontiguousarray(src, dtype=np.int64)
    return permute_bits_nb(masks, src) if USE_NUMBA else permute_bits_np(masks, src)


def segment_parity(masks, start, length, n):
    """Signed segment-parity coefficient of a cyclic interval against each mask.

    The interval covers positions ``start .. start+length-1`` (mod ``n``).
    For each positional mask, if the interval begins and ends on a boundary
    between set and unset runs, the result is ``+1`` when it spans an even
    number of runs and ``-1`` when odd; otherwise ``0``.
    """
    masks = _as_masks(masks)
    if USE_NUMBA:
        return segment_parity_nb(masks, int(start), int(length), int(n))
    return segment_parity_np(masks, int(start), int(length), int(n))


def constrained_subsets(n, inside, outside):
    """All ``n``-bit masks containing ``inside`` and disjoint from ``outside``.

    Ordered by the binary counter over the free bits, lowest free bit fastest.
    """
    if inside & outside:
        raise ValueError("inside and outside constraints overlap")
    if USE_NUMBA:
        return constrained_subsets_nb(int(n), np.int64(inside), np.int64(outside))
    return constrained_subsets_np(int(n), int(inside), int(outside))


def canonical_reps(n):
    """Canonical boundary-divisor masks for ``n`` labels, sorted by (popcount, mask)."""
    reps = canonical_reps_nb(int(n)) if USE_NUMBA else canonical_reps_np(int(n))
    return reps[np.lexsort((reps, popcount(reps)))]


def rank_mod_p(mat, p=DEFAULT_PRIME):
    """Rank of an integer matrix over GF(p), ``p < 2**31``.

    A fast cross-check only; it can undercount when ``p`` divides a minor.
    """
    if p >= 1 << 31:
        raise ValueError("p must be below 2**31 to keep products in int64")
    a = np.asarray(mat)
    if a.ndim != 2 or a.size == 0:
        return 0
    if USE_NUMBA:
        return int(rank_mod_p_nb(np.array(a, dtype=np.int64), np.int64(p)))
    return rank_mod_p_np(a, p)
