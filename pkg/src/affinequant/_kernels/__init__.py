"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy fallback is
always available.  Set ``AFFINEQUANT_BACKEND=python`` or ``=native`` to force
a choice (forcing ``native`` raises if the extension is missing).
"""

from __future__ import annotations

import os

_requested = os.environ.get("AFFINEQUANT_BACKEND", "").strip().lower()
if _requested not in ("", "native", "python"):
    raise ImportError(
        f"AFFINEQUANT_BACKEND must be 'native' or 'python', got {_requested!r}")

if _requested == "python":
    from . import _py as _impl
    BACKEND = "python"
else:
    try:
        from . import _native as _impl
        BACKEND = "native"
    except ImportError:
        if _requested == "native":
            raise
        from . import _py as _impl
        BACKEND = "python"

laguerre_table = _impl.laguerre_table
jacobi_seq = _impl.jacobi_seq
u_matrix = _impl.u_matrix
u_diag = _impl.u_diag
cos_transform = _impl.cos_transform
phase_transform = _impl.phase_transform

__all__ = [
    "BACKEND",
    "laguerre_table",
    "jacobi_seq",
    "u_matrix",
    "u_diag",
    "cos_transform",
    "phase_transform",
]
