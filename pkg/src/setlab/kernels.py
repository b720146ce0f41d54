"""Dense kernel backend, chosen at import.

The compiled extension is used when it was built; set ``SETLAB_PURE_PYTHON=1``
to force the numpy fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("SETLAB_PURE_PYTHON", "") != "1":
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py


def get_backend(name: str | None = None):
    """Return the kernel module named ``"cython"`` or ``"python"`` (default: active)."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")


parity_table = _impl.parity_table
apply_phase_flip = _impl.apply_phase_flip
apply_phase_flip_columns = _impl.apply_phase_flip_columns
