"""Dense-layer kernels with backend selection at import time.

The compiled Cython core is preferred when present; otherwise the numpy
fallback is used. Set UAVNAV_KERNELS=python or UAVNAV_KERNELS=compiled to
force a backend (forcing `compiled` raises if the extension is missing).
Both backends implement identical semantics in float64; results can differ
at last-ulp level because summation order differs.
"""

from __future__ import annotations

import os

from . import numpy_backend

_forced = os.environ.get("UAVNAV_KERNELS", "").strip().lower()

if _forced == "python":
    _impl = numpy_backend
    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        _impl = numpy_backend
        BACKEND = "python"

ACT_IDENTITY = numpy_backend.ACT_IDENTITY
ACT_RELU = numpy_backend.ACT_RELU
ACT_TANH = numpy_backend.ACT_TANH

ACTIVATION_CODES = {
    "identity": ACT_IDENTITY,
    "relu": ACT_RELU,
    "tanh": ACT_TANH,
}

affine = _impl.affine
affine_backward = _impl.affine_backward
activation = _impl.activation
activation_backward = _impl.activation_backward

__all__ = [
    "ACT_IDENTITY",
    "ACT_RELU",
    "ACT_TANH",
    "ACTIVATION_CODES",
    "BACKEND",
    "activation",
    "activation_backward",
    "affine",
    "affine_backward",
    "numpy_backend",
]
