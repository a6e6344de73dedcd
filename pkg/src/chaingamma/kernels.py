"""Kernel backend selection: compiled extension if available, else pure Python.

Set ``CHAINGAMMA_PURE_PYTHON=1`` to force the fallback (used by the kernel
equivalence tests and the benchmark).
"""

from __future__ import annotations

import os

from . import kernels_py

if os.environ.get("CHAINGAMMA_PURE_PYTHON"):
    _impl = kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = kernels_py

BACKEND: str = _impl.BACKEND

mat_mul = _impl.mat_mul
lu_factor = _impl.lu_factor
lu_solve_mat = _impl.lu_solve_mat
