"""Exception types shared across the package."""

from __future__ import annotations


class NavError(Exception):
    """Base class for all package errors."""


class ShapeMismatch(NavError):
    """Array dimensions do not line up with what an operation requires."""


class NonFiniteValue(NavError):
    """A computation produced NaN or infinity.

    `where` names the offending layer or parameter block.
    """

    def __init__(self, message: str, where: str = ""):
        super().__init__(message)
        self.where = where


class TrainingDiverged(NavError):
    """Training loss became non-finite; `epoch` is the failing epoch index."""

    def __init__(self, message: str, epoch: int):
        super().__init__(message)
        self.epoch = epoch


class ConfigError(NavError):
    """Invalid or inconsistent configuration values."""


class EvidenceError(NavError):
    """Bayesian-network evidence is malformed or contradicts the model."""


class SamplingBudgetExceeded(NavError):
    """Rejection sampling could not fill its quota within the attempt budget."""
