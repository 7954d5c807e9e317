"""Backend selection for the integer hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise
the pure-Python ``_pykernels`` module. Setting ``CANTORSERIES_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("CANTORSERIES_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

KIND_SUCCESSOR = _pykernels.KIND_SUCCESSOR
KIND_SUCCESSOR_POW = _pykernels.KIND_SUCCESSOR_POW
KIND_NATURAL = _pykernels.KIND_NATURAL
KIND_EXPLICIT = _pykernels.KIND_EXPLICIT

d_scan = _impl.d_scan
factorial_scan = _impl.factorial_scan
factorial_extract = _impl.factorial_extract
successor_resum = _impl.successor_resum

__all__ = [
    "BACKEND",
    "d_scan",
    "factorial_scan",
    "factorial_extract",
    "successor_resum",
]
