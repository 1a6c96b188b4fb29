"""Select the LP kernel backend at import time.

The compiled Cython kernel is preferred; the numpy implementation in
``_simplex_py`` is the fallback. Set JOHNGAP_BACKEND=python to force the
fallback (used by the parity tests and the benchmark).
"""

import os

from . import _simplex_py

_FORCED = os.environ.get("JOHNGAP_BACKEND", "").strip().lower()

if _FORCED in ("python", "py", "numpy"):
    _impl = _simplex_py
    BACKEND = "python"
else:
    try:
        from . import _simplex_c as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _simplex_py
        BACKEND = "python"

solve_eq = _impl.solve_eq
support_batch = _impl.support_batch

OPTIMAL = _simplex_py.OPTIMAL
INFEASIBLE = _simplex_py.INFEASIBLE
UNBOUNDED = _simplex_py.UNBOUNDED
ITERATION_LIMIT = _simplex_py.ITERATION_LIMIT


def backend_name():
    return BACKEND
