"""Kernel backend selection: numba JIT by default, interpreted numpy fallback.

The environment variable NOMA_IRSA_NUMBA picks the backend at import time:

  unset / "1" / "on"   use numba @njit kernels when numba is importable
  "0" / "off"          force the interpreted fallback (same code, no JIT)

Both backends run the identical peeling algorithm, so decoded sets are
bit-equal; only speed differs. See benchmarks/bench_sic.py.
"""

import os


def _env_wants_numba() -> bool:
    val = os.environ.get("NOMA_IRSA_NUMBA", "1").strip().lower()
    return val not in ("0", "false", "no", "off")


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _env_wants_numba() and numba_available()


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def jit_if_enabled(func):
    """Wrap func with numba.njit(cache=True, nogil=True) when the JIT backend is active."""
    if USE_NUMBA:
        from numba import njit

        return njit(cache=True, nogil=True)(func)
    return func
