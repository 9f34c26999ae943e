"""Kernel backend selection.

Hot numeric kernels run through numba's nopython JIT by default. Setting
the environment variable ``CDPLAN_BACKEND=numpy`` before import selects the
pure-numpy fallback path instead (slower, no compilation step); batch
geometry operations then use vectorized numpy twins and loop kernels run as
plain Python. ``benchmarks/compare_backends.py`` times the two paths head to
head.
"""

import os

_env = os.environ.get("CDPLAN_BACKEND", "numba").strip().lower()

if _env in ("numba", "jit", ""):
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False
elif _env in ("numpy", "python"):
    NUMBA_ENABLED = False
else:
    raise RuntimeError(
        f"CDPLAN_BACKEND={_env!r} not recognized (expected 'numba' or 'numpy')"
    )


def jit_kernel(func):
    """nopython-compile ``func`` when the numba backend is active.

    Under the numpy backend the function is returned unchanged and runs as
    ordinary Python, so callers never need to care which backend is live.
    """
    if NUMBA_ENABLED:
        from numba import njit

        return njit(cache=True)(func)
    return func


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
