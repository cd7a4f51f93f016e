"""Select the kernel implementation at import time.

The compiled ``_ckernels`` extension is preferred; ``_pykernels`` is the
fallback when the extension was not built, or when the environment
variable ``SARUMA_PURE_PYTHON`` is set to a non-empty value.
"""

import os

from saruma import _pykernels

try:
    if os.environ.get("SARUMA_PURE_PYTHON"):
        raise ImportError("pure Python kernels requested")
    from saruma import _ckernels as kernels
except ImportError:
    kernels = _pykernels
    BACKEND = "python"
else:
    BACKEND = "cython"

STATUS_OK = _pykernels.STATUS_OK
STATUS_UNIT = _pykernels.STATUS_UNIT
STATUS_NONFINITE = _pykernels.STATUS_NONFINITE


def available_backends():
    """Mapping of backend name to kernel module, compiled first if present."""
    out = {}
    if BACKEND == "cython":
        out["cython"] = kernels
    out["python"] = _pykernels
    return out
