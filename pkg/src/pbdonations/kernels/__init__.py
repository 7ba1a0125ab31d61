"""Kernel backend selection.

Two interchangeable implementations exist for the hot loops: a compiled Numba
path and a pure-NumPy path.  Set the environment variable
``PBDONATIONS_KERNELS`` to ``numba`` or ``numpy`` to force one; by default the
Numba path is used when importable and NumPy otherwise.  Results are
bit-identical across backends; ``benchmarks/compare_backends.py`` times them
against each other.
"""

from __future__ import annotations

import os

from . import _numpy

ENV_VAR = "PBDONATIONS_KERNELS"


def _load():
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice not in ("", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numpy":
        return _numpy, "numpy"
    try:
        from . import _numba
    except ImportError:
        if choice == "numba":
            raise
        return _numpy, "numpy"
    return _numba, "numba"


_impl, _name = _load()

subset_tables = _impl.subset_tables
dp_fill = _impl.dp_fill


def backend_name() -> str:
    """Name of the active backend: 'numba' or 'numpy'."""
    return _name
