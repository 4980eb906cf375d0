"""Backend selection for the hot kernels.

Set ``CWFCAUCHY_BACKEND=numpy`` to force the vectorized numpy path; the
default is ``numba`` when it imports cleanly. Custom (non-catalog)
nonlinearities always take the numpy path.
"""
import logging
import os

from . import _kernels_numpy as numpy_backend

log = logging.getLogger(__name__)

_requested = os.environ.get("CWFCAUCHY_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"CWFCAUCHY_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

numba_backend = None
if _requested == "numba":
    try:
        from . import _kernels_numba as numba_backend
    except ImportError:  # pragma: no cover - numba is a declared dependency
        log.warning("numba unavailable, falling back to numpy kernels")

BACKEND = "numba" if numba_backend is not None else "numpy"


def thomas(lower, diag, upper, rhs):
    if numba_backend is not None:
        return numba_backend.thomas(lower, diag, upper, rhs)
    return numpy_backend.thomas(lower, diag, upper, rhs)
