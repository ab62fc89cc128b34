"""Kernel backend selection.

Prefers the compiled Cython extension, falls back to the NumPy
implementation.  ``PHASENORM_KERNELS=python`` in the environment forces the
fallback (used by the benchmark and to exercise both code paths in tests).
"""

import os

from . import _kernels_py

if os.environ.get("PHASENORM_KERNELS", "").lower() in ("python", "numpy"):
    _impl = _kernels_py
    KERNEL_BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl
        KERNEL_BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        KERNEL_BACKEND = "numpy"

wigner_series = _impl.wigner_series


def available_backends():
    """Return {name: wigner_series callable} for every importable backend."""
    backends = {"numpy": _kernels_py.wigner_series}
    try:
        from . import _kernels
        backends["cython"] = _kernels.wigner_series
    except ImportError:
        pass
    return backends
