"""Numerical kernels with a compiled fast path.

At import time the Cython extension ``_fast`` is preferred; if it is not
built (source checkout without ``build_ext``, or an unsupported platform) the
pure-numpy implementation in ``_ref`` is used instead.  Set the environment
variable ``SDOMAIN_PURE_PYTHON=1`` to force the fallback, e.g. for the
benchmark baseline.

``BACKEND`` reports which implementation is active ("compiled" or "python").
"""

import os

from . import _ref

if os.environ.get("SDOMAIN_PURE_PYTHON"):
    _impl = _ref
    BACKEND = "python"
else:
    try:
        from . import _fast as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _ref
        BACKEND = "python"

STATE_LIMIT = _ref.STATE_LIMIT
eval_modes = _impl.eval_modes
rk4_companion = _impl.rk4_companion

__all__ = ["BACKEND", "STATE_LIMIT", "eval_modes", "rk4_companion"]
