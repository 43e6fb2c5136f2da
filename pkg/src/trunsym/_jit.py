"""Select between numba-compiled kernels and the pure-numpy fallback.

Set ``TRUNSYM_DISABLE_JIT=1`` to force the numpy path (useful for debugging
and for parity checks). Kernels also take an explicit ``jit=`` argument so
both paths can be compared in one process.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None

HAVE_NUMBA = numba is not None


def jit_requested() -> bool:
    flag = os.environ.get("TRUNSYM_DISABLE_JIT", "").strip().lower()
    return HAVE_NUMBA and flag not in ("1", "true", "yes", "on")


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func
