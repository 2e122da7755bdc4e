"""Backend selection for the hot kernels.

Numba is used when importable unless ``STORALLOC_DISABLE_NUMBA`` is set to a
truthy value before the package is imported; the pure-numpy kernels are then
used instead. Both backends produce identical integer results.
"""

import os

DISABLE_ENV = "STORALLOC_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get(DISABLE_ENV, "").lower() not in ("1", "true", "yes", "on")
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """Compile ``func`` with numba when available, otherwise return it unchanged."""
    if not NUMBA_AVAILABLE:
        return func
    return numba.njit(cache=True, nogil=True)(func)
