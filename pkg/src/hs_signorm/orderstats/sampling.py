"""Uniform order-statistics samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True)
class OrderStatSample:
    """Two independent sorted uniform samples ``U_(1..n)`` and ``V_(1..n)``."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        if self.u.shape != self.v.shape or self.u.ndim != 1:
            raise ValidationError("order-statistics samples must be 1-D of equal size")

    @property
    def n(self) -> int:
        return self.u.size

    @property
    def y_n(self) -> float:
        """``max_j |U_(j) - V_(j)|``."""
        return float(np.max(np.abs(self.u - self.v)))

    def swapped(self) -> "OrderStatSample":
        return OrderStatSample(self.v, self.u)


def sample_order_stats(n: int, rng: np.random.Generator) -> OrderStatSample:
    """Draw ``U`` then ``V``, each as ``n`` sorted uniforms from ``rng``."""
    if n < 1:
        raise ValidationError(f"sample size must be >= 1, got {n}")
    u = np.sort(rng.random(n))
    v = np.sort(rng.random(n))
    return OrderStatSample(u, v)


def sample_order_stats_block(
    n: int, size: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """
    Draw ``size`` replicates at once.

    Returns:
        ``(U, V)``, each of shape ``(size, n)`` and sorted along axis 1
    """
    if n < 1 or size < 1:
        raise ValidationError("block sampling needs n >= 1 and size >= 1")
    u = np.sort(rng.random((size, n)), axis=1)
    v = np.sort(rng.random((size, n)), axis=1)
    return u, v
