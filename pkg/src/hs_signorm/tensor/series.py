"""Truncated tensor series, Chen products and Hilbert-Schmidt pairings."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..config_loader import get_polyline_segments
from ..curves.base import Curve
from ..curves.polyline import as_polyline
from ..errors import DimensionMismatch, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncatedTensorSeries:
    """
    Element of the truncated tensor algebra over ``R^dim``.

    ``levels[k]`` is the flat coordinate array of level ``k`` (length
    ``dim**k``) in row-major word order: the coordinate of the word
    ``(i_1, ..., i_k)`` sits at ``sum_j i_j * dim**(k - j)``.
    """

    dim: int
    degree: int
    levels: tuple

    def __post_init__(self):
        if self.dim < 1 or self.degree < 0:
            raise ValidationError("tensor series need dim >= 1 and degree >= 0")
        if len(self.levels) != self.degree + 1:
            raise ValidationError(f"expected {self.degree + 1} levels, got {len(self.levels)}")
        for k, level in enumerate(self.levels):
            if np.shape(level) != (self.dim**k,):
                raise ValidationError(f"level {k} must have {self.dim ** k} coordinates")

    @classmethod
    def identity(cls, dim: int, degree: int) -> "TruncatedTensorSeries":
        """The unit ``1 + 0 + 0 + ...``."""
        levels = [np.ones(1)] + [np.zeros(dim**k) for k in range(1, degree + 1)]
        return cls(dim, degree, tuple(levels))

    def level(self, k: int) -> np.ndarray:
        """Level ``k`` reshaped to a ``(dim,) * k`` array."""
        if not 0 <= k <= self.degree:
            raise ValidationError(f"level {k} outside 0..{self.degree}")
        return self.levels[k].reshape((self.dim,) * k)

    def is_group_like(self, tol: float = 1e-12) -> bool:
        """Check the unit constant term and the degree-2 shuffle relation."""
        if abs(self.levels[0][0] - 1.0) > tol:
            return False
        if self.degree < 2:
            return True
        x1 = self.levels[1]
        x2 = self.level(2)
        return bool(np.allclose(np.outer(x1, x1), x2 + x2.T, atol=tol, rtol=tol))

    def __repr__(self) -> str:
        return f"<TruncatedTensorSeries dim={self.dim} degree={self.degree}>"


def segment_exponential(v: Sequence[float], degree: int) -> TruncatedTensorSeries:
    """
    Signature of the straight segment ``t -> t v``: level ``k`` is ``v^{(x)k} / k!``.

    Args:
        v: Increment vector
        degree: Truncation degree ``N >= 0``
    """
    v = np.asarray(v, dtype=float).ravel()
    if degree < 0:
        raise ValidationError(f"degree must be >= 0, got {degree}")
    levels: List[np.ndarray] = [np.ones(1)]
    for k in range(1, degree + 1):
        levels.append(np.kron(levels[-1], v) / k)
    return TruncatedTensorSeries(v.size, degree, tuple(levels))


def _check_compatible(a: TruncatedTensorSeries, b: TruncatedTensorSeries) -> None:
    if a.dim != b.dim or a.degree != b.degree:
        raise DimensionMismatch(
            f"operands differ: dim {a.dim} vs {b.dim}, degree {a.degree} vs {b.degree}"
        )


def pairwise_sum(terms: Sequence[np.ndarray]) -> np.ndarray:
    """Sum equal-shape arrays by recursive halving; the tree depends only on ``len(terms)``."""
    if len(terms) == 1:
        return np.array(terms[0], dtype=float)
    middle = len(terms) // 2
    return pairwise_sum(terms[:middle]) + pairwise_sum(terms[middle:])


def chen_product(a: TruncatedTensorSeries, b: TruncatedTensorSeries) -> TruncatedTensorSeries:
    """
    Truncated tensor product: level ``n`` is ``sum_k a_k (x) b_{n-k}``.

    The ``n + 1`` terms of each level are added along a fixed pairwise tree, so
    the result is the same however levels are scheduled.

    Raises:
        DimensionMismatch: If dimensions or degrees differ
    """
    _check_compatible(a, b)
    levels = []
    for n in range(a.degree + 1):
        terms = [np.outer(a.levels[k], b.levels[n - k]).ravel() for k in range(n + 1)]
        levels.append(pairwise_sum(terms))
    return TruncatedTensorSeries(a.dim, a.degree, tuple(levels))


def signature(
    path: Curve, degree: int, segments: Optional[int] = None
) -> TruncatedTensorSeries:
    """
    Truncated signature of a piecewise-linear path by Chen's identity.

    Axis paths use their corners; smooth curves are first replaced by their
    chord polyline with ``tensor.polyline_segments`` chords.

    Args:
        path: Polyline (or any curve, discretised first)
        degree: Truncation degree
        segments: Chord count for smooth curves (default from config)

    Returns:
        Group-like series whose level 1 is the total increment
    """
    path = as_polyline(path, segments or get_polyline_segments())
    result = TruncatedTensorSeries.identity(path.dim, degree)
    for increment in path.increments:
        result = chen_product(result, segment_exponential(increment, degree))
    logger.debug(f"Signature of {path!r} to degree {degree}")
    return result


def hs_inner(a: TruncatedTensorSeries, b: TruncatedTensorSeries, n: int) -> float:
    """
    Hilbert-Schmidt inner product of level ``n``.

    Raises:
        DimensionMismatch: If the dimensions differ or either series stops below ``n``
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dim {a.dim} vs {b.dim}")
    if n < 0 or n > min(a.degree, b.degree):
        raise DimensionMismatch(f"level {n} not available (degrees {a.degree}, {b.degree})")
    return float(np.dot(a.levels[n], b.levels[n]))


def hs_norm(a: TruncatedTensorSeries, n: int) -> float:
    """Hilbert-Schmidt norm of level ``n``."""
    return math.sqrt(max(hs_inner(a, a, n), 0.0))
