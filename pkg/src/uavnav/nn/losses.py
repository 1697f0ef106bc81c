"""Loss functions and the Gaussian output head.

The heteroscedastic loss keeps variance in the log domain: a head of width
2k is split into k means and k log-variances, and log-variances are clamped
to [-10, 10] before exponentiation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NonFiniteValue, ShapeMismatch

LOGVAR_MIN = -10.0
LOGVAR_MAX = 10.0


@dataclass(frozen=True)
class GaussianOutput:
    mean: np.ndarray  # (k,)
    log_variance: np.ndarray  # (k,)

    def __post_init__(self):
        if self.mean.shape != self.log_variance.shape:
            raise ShapeMismatch("mean and log_variance must have the same shape")
        if not (np.isfinite(self.mean).all() and np.isfinite(self.log_variance).all()):
            raise NonFiniteValue("non-finite Gaussian output", where="gaussian_output")

    @property
    def variance(self) -> np.ndarray:
        return np.exp(self.log_variance)


def split_gaussian_head(raw: np.ndarray):
    """Split a (..., 2k) head into means and clamped log-variances."""
    k = raw.shape[-1] // 2
    if raw.shape[-1] != 2 * k:
        raise ShapeMismatch("Gaussian head width must be even")
    mean = raw[..., :k]
    logvar = np.clip(raw[..., k:], LOGVAR_MIN, LOGVAR_MAX)
    return mean, logvar


def gaussian_nll(pred: GaussianOutput, target: np.ndarray) -> float:
    """Heteroscedastic negative log likelihood, summed over dimensions.

    L = sum_i [ 0.5 * exp(-s_i) * (y_i - mu_i)^2 + 0.5 * s_i ]
    """
    target = np.asarray(target, dtype=np.float64)
    if target.shape != pred.mean.shape:
        raise ShapeMismatch(
            f"target shape {target.shape} != prediction shape {pred.mean.shape}"
        )
    s = pred.log_variance
    resid = target - pred.mean
    return float(np.sum(0.5 * np.exp(-s) * resid**2 + 0.5 * s))


def gaussian_nll_batch(mean: np.ndarray, logvar: np.ndarray, target: np.ndarray) -> float:
    """Mean over the batch of the per-sample summed NLL."""
    resid = target - mean
    per_sample = np.sum(0.5 * np.exp(-logvar) * resid**2 + 0.5 * logvar, axis=1)
    return float(per_sample.mean())


def gaussian_nll_grads(mean: np.ndarray, logvar: np.ndarray, target: np.ndarray):
    """(dL/dmean, dL/dlogvar) of the batch-mean NLL, per sample."""
    n = mean.shape[0]
    inv_var = np.exp(-logvar)
    resid = mean - target
    dmean = inv_var * resid / n
    dlogvar = (0.5 - 0.5 * inv_var * (target - mean) ** 2) / n
    return dmean, dlogvar


def squared_error_batch(out: np.ndarray, target: np.ndarray) -> float:
    """Mean over the batch of the per-sample summed squared error."""
    return float(np.sum((out - target) ** 2, axis=1).mean())


def squared_error_grads(out: np.ndarray, target: np.ndarray) -> np.ndarray:
    return 2.0 * (out - target) / out.shape[0]
