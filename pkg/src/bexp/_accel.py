"""JIT selection for the hot kernels.

The numeric inner loops in :mod:`bexp._kernels` are written once as plain
Python and compiled with numba when available. Set the environment variable
``BEXP_NUMBA=0`` to force the pure-Python path (useful for debugging or on
platforms without numba). Both paths execute the same IEEE-754 operations in
the same order, so generated streams and analysis results are bit-identical
either way; only speed changes.
"""

import os
import warnings

ENV_FLAG = "BEXP_NUMBA"

_OFF_VALUES = {"0", "off", "false", "no"}


def _numba_wanted() -> bool:
    val = os.environ.get(ENV_FLAG, "").strip().lower()
    if val in _OFF_VALUES:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        if val:  # explicitly requested but unavailable
            warnings.warn("BEXP_NUMBA set but numba is not importable; "
                          "falling back to pure Python", RuntimeWarning)
        return False
    return True


USING_NUMBA = _numba_wanted()

if USING_NUMBA:
    from numba import njit
else:
    def njit(*args, **kwargs):
        """No-op stand-in for numba.njit."""
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap
