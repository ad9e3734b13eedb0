"""Selects the compiled kernel backend at import time.

The Cython extension is optional; the numpy fallback implements identical
contracts.  Set HYPHARM_FORCE_NUMPY=1 to skip the extension (used by the
parity tests and the benchmark).
"""
from __future__ import annotations

import os

from . import _kernels_np

if os.environ.get("HYPHARM_FORCE_NUMPY"):
    _impl = _kernels_np
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_np

BACKEND_NAME: str = _impl.BACKEND_NAME
kernel_pair_chunk = _impl.kernel_pair_chunk
filon_weights_uniform = _impl.filon_weights_uniform


def backend_name() -> str:
    return BACKEND_NAME
