"""Piecewise-linear curves and chord discretisation of smooth curves."""

from __future__ import annotations

import logging
from typing import Any, Dict, Optional

import numpy as np

from ..errors import DimensionMismatch, ValidationError
from .analytic import AxisPath
from .base import Curve, CurveKind

logger = logging.getLogger(__name__)

UNIT_SPEED_TOLERANCE = 1e-9


class Polyline(Curve):
    """
    Piecewise-linear curve through ``vertices`` at timestamps ``times``.

    Without ``times`` the vertices are parametrised by cumulative chord length,
    which is unit speed by construction. Explicit timestamps must already be
    unit speed unless ``renormalize`` is set, in which case they are replaced
    by the chord-length parametrisation.
    """

    kind = CurveKind.POLYLINE

    def __init__(
        self,
        vertices: np.ndarray,
        times: Optional[np.ndarray] = None,
        renormalize: bool = False,
    ):
        vertices = np.array(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[0] < 2 or vertices.shape[1] < 1:
            raise ValidationError("polyline needs at least two vertices of shape (k, dim)")
        if not np.all(np.isfinite(vertices)):
            raise ValidationError("polyline vertices must be finite")

        chords = np.linalg.norm(np.diff(vertices, axis=0), axis=1)
        if np.any(chords <= 0):
            raise ValidationError("polyline has a zero-length segment")
        arc = np.concatenate([[0.0], np.cumsum(chords)])

        if times is None or renormalize:
            times = arc
        else:
            times = np.asarray(times, dtype=float)
            if times.shape != (vertices.shape[0],):
                raise ValidationError("times must have one entry per vertex")
            steps = np.diff(times)
            if np.any(steps <= 0):
                raise ValidationError("polyline timestamps must be strictly increasing")
            speed = chords / steps
            if np.max(np.abs(speed - 1.0)) > UNIT_SPEED_TOLERANCE:
                raise ValidationError(
                    "polyline is not unit speed; pass renormalize=True to reparametrise"
                )
            times = times - times[0]

        self._vertices = vertices
        self._times = times
        self._directions = np.diff(vertices, axis=0) / np.diff(times)[:, None]
        self._vertices.setflags(write=False)
        self._times.setflags(write=False)

    @property
    def dim(self) -> int:
        return self._vertices.shape[1]

    @property
    def length(self) -> float:
        return float(self._times[-1])

    @property
    def has_curvature(self) -> bool:
        return False

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def times(self) -> np.ndarray:
        return self._times

    @property
    def segments(self) -> int:
        return self._vertices.shape[0] - 1

    @property
    def increments(self) -> np.ndarray:
        """Segment displacement vectors, shape ``(segments, dim)``."""
        return np.diff(self._vertices, axis=0)

    def _segment(self, t: np.ndarray) -> np.ndarray:
        # right-continuous: a vertex time belongs to the following segment
        idx = np.searchsorted(self._times, t, side="right") - 1
        return np.clip(idx, 0, self.segments - 1)

    def _position(self, t: np.ndarray) -> np.ndarray:
        idx = self._segment(t)
        return self._vertices[idx] + (t - self._times[idx])[:, None] * self._directions[idx]

    def _tangent(self, t: np.ndarray) -> np.ndarray:
        return self._directions[self._segment(t)]

    def reverse(self) -> "Polyline":
        """Return the same trace traversed backwards."""
        return Polyline(self._vertices[::-1].copy())

    def concat(self, other: "Polyline") -> "Polyline":
        """Return ``self`` followed by ``other`` translated to start at this end point."""
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot concatenate dim {self.dim} with dim {other.dim}")
        shifted = other.vertices[1:] - other.vertices[0] + self._vertices[-1]
        return Polyline(np.vstack([self._vertices, shifted]))

    def describe(self) -> Dict[str, Any]:
        return {
            **super().describe(),
            "segments": self.segments,
            "vertices": self._vertices.tolist(),
        }


def sample_polyline(curve: Curve, segments: int) -> Polyline:
    """
    Chord polyline through ``segments + 1`` equally spaced arc-length points.

    Endpoints coincide with ``curve(0)`` and ``curve(length)``. A polyline that
    already has ``segments`` segments is returned unchanged.

    Args:
        curve: Source curve
        segments: Number of chords, at least 1

    Returns:
        Unit-speed polyline (parametrised by chord length)
    """
    if segments < 1:
        raise ValidationError(f"segments must be >= 1, got {segments}")
    if isinstance(curve, Polyline) and curve.segments == segments:
        return curve

    times = np.linspace(0.0, curve.length, segments + 1)
    times[-1] = curve.length
    points = curve.evaluate(times, order=0)
    logger.debug(f"Sampled {curve!r} with {segments} chords")
    return Polyline(points, renormalize=True)


def random_polyline(
    segments: int, dim: int, rng: np.random.Generator, length: float = 1.0
) -> Polyline:
    """
    Random unit-speed polyline with isotropic directions.

    Segment lengths are drawn uniformly from ``[0.5, 1.5]`` and rescaled so the
    total length is ``length``.
    """
    if segments < 1 or dim < 1:
        raise ValidationError("random polylines need segments >= 1 and dim >= 1")
    directions = rng.standard_normal((segments, dim))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    directions = directions / np.where(norms > 0, norms, 1.0)
    spans = rng.uniform(0.5, 1.5, size=segments)
    spans *= length / spans.sum()
    vertices = np.vstack([np.zeros(dim), np.cumsum(directions * spans[:, None], axis=0)])
    return Polyline(vertices)


def as_polyline(curve: Curve, segments: int) -> Polyline:
    """
    Piecewise-linear version of ``curve`` for Chen products.

    Polylines pass through, axis paths use their corner points (so no chord
    cuts a corner) and smooth curves are replaced by ``sample_polyline``.
    """
    if isinstance(curve, Polyline):
        return curve
    if isinstance(curve, AxisPath):
        return Polyline(curve.vertices())
    return sample_polyline(curve, segments)
