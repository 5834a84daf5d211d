"""Optional numba acceleration.

Set ``PICARDM0N_NO_JIT=1`` to force the pure-numpy kernels even when numba is
installed. The flag is read once, at import time.
"""
import os

_DISABLED = os.environ.get("PICARDM0N_NO_JIT", "").strip().lower() not in ("", "0", "false", "no")

try:
    import numba as _numba
except ImportError:  # pragma: no cover - depends on environment
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise.

    Compiled variants are built regardless of ``PICARDM0N_NO_JIT`` so that the
    benchmark and the tests can compare both paths in one process.
    """
    if _numba is None:
        return func
    return _numba.njit(cache=True)(func)
