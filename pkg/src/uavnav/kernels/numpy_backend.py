"""Pure-numpy implementations of the dense-layer kernels.

This is the fallback backend: semantics here define the contract the
compiled core must match. All arrays are float64 and C-contiguous; batch
inputs have shape (batch, features).
"""

from __future__ import annotations

import numpy as np

ACT_IDENTITY = 0
ACT_RELU = 1
ACT_TANH = 2


def affine(x: np.ndarray, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    """y[i, o] = sum_j x[i, j] * w[o, j] + b[o] for x (B, n_in), w (n_out, n_in)."""
    return x @ w.T + b


def affine_backward(x: np.ndarray, w: np.ndarray, dy: np.ndarray):
    """Gradients of `affine` given upstream dy (B, n_out).

    Returns (dx, dw, db) with shapes matching (x, w, bias).
    """
    dx = dy @ w
    dw = dy.T @ x
    db = dy.sum(axis=0)
    return dx, dw, db


def activation(z: np.ndarray, kind: int) -> np.ndarray:
    """Elementwise activation; `kind` is one of the ACT_* codes."""
    if kind == ACT_IDENTITY:
        return z.copy()
    if kind == ACT_RELU:
        return np.maximum(z, 0.0)
    if kind == ACT_TANH:
        return np.tanh(z)
    raise ValueError(f"unknown activation code {kind}")


def activation_backward(z: np.ndarray, kind: int, da: np.ndarray) -> np.ndarray:
    """dz = da * f'(z), evaluated at the pre-activation z."""
    if kind == ACT_IDENTITY:
        return da.copy()
    if kind == ACT_RELU:
        return da * (z > 0.0)
    if kind == ACT_TANH:
        t = np.tanh(z)
        return da * (1.0 - t * t)
    raise ValueError(f"unknown activation code {kind}")
