"""Kernel selection: compiled extension when importable, else pure Python.

Set ``PADYN_PURE_PYTHON=1`` to force the fallback.
"""

import os

from padyn import _kernels_py

if os.environ.get("PADYN_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from padyn import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
mul = _impl.mul
mul_trunc = _impl.mul_trunc
compose_trunc = _impl.compose_trunc
rem_monic = _impl.rem_monic

__all__ = ["BACKEND", "mul", "mul_trunc", "compose_trunc", "rem_monic"]
