"""Pick the RK4 kernel at import: compiled if built, pure Python otherwise.

Set ``PITCHLQR_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _rk4_py

try:
    if os.environ.get("PITCHLQR_PURE_PYTHON", "").strip() not in ("", "0"):
        raise ImportError("pure-Python backend forced by PITCHLQR_PURE_PYTHON")
    from . import _rk4 as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
rk4_lti = _compiled.rk4_lti if _compiled is not None else _rk4_py.rk4_lti


def available_kernels():
    """Mapping of backend name to kernel, for benchmarks and cross-checks."""
    kernels = {"python": _rk4_py.rk4_lti}
    if _compiled is not None:
        kernels["cython"] = _compiled.rk4_lti
    return kernels
