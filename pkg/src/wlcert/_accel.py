"""Backend selection for the numeric kernels.

Set ``WLCERT_NO_NUMBA=1`` to force the pure-numpy code paths. numba is also
skipped silently when it cannot be imported.
"""
import os

_FLAG = os.environ.get("WLCERT_NO_NUMBA", "").strip().lower()

try:
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _njit = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and _FLAG not in ("1", "true", "yes", "on")


def jit(func):
    """Compile ``func`` with numba when available, else return it unchanged."""
    if _njit is None:
        return func
    return _njit(cache=True)(func)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
