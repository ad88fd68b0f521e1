"""Kernel backend selection.

The compiled Cython module is preferred when present; the pure-Python
fallback is picked automatically otherwise.  Set ``AWSPEC_BACKEND=python``
(or ``c``) to force a choice; forcing ``c`` raises if the extension is
missing.
"""
import os

_choice = os.environ.get("AWSPEC_BACKEND", "").strip().lower()

if _choice in ("", "c", "compiled"):
    try:
        from . import _kernels as _impl
        BACKEND = "c"
    except ImportError:
        if _choice in ("c", "compiled"):
            raise
        from . import _kernels_py as _impl
        BACKEND = "python"
elif _choice in ("python", "py", "pure"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    raise ValueError(f"unknown AWSPEC_BACKEND={_choice!r}")

qpoch = _impl.qpoch
qpoch_inf = _impl.qpoch_inf
phi_sum = _impl.phi_sum
