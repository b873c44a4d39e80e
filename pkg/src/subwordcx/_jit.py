"""Numba toggle.

Set ``SUBWORDCX_NUMBA=0`` to run every kernel through its pure-numpy path.
"""
import os

_flag = os.environ.get("SUBWORDCX_NUMBA", "1").strip().lower()
USE_NUMBA = _flag not in ("0", "false", "no", "off")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if not USE_NUMBA:

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
