"""Closed-form unit-speed curves: circle arcs, axis paths and piecewise circles."""

from __future__ import annotations

import math
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from ..errors import DomainError, ValidationError
from .base import Curve, CurveKind


def _embed(planar: np.ndarray, dim: int) -> np.ndarray:
    if dim == 2:
        return planar
    out = np.zeros(planar.shape[:-1] + (dim,))
    out[..., :2] = planar
    return out


class CircleArc(Curve):
    """
    Arc of a circle of curvature ``kappa`` traversed at unit speed.

    ``gamma(t) = (sin(phi + kappa t) - sin(phi), cos(phi) - cos(phi + kappa t)) / kappa``
    so the tangent angle at time ``t`` is ``phi + kappa t``. Dimensions above two
    embed the arc in the first coordinate plane.
    """

    kind = CurveKind.CIRCLE_ARC

    def __init__(self, curvature: float, length: float, phase: float = 0.0, dim: int = 2):
        if not curvature > 0:
            raise DomainError(f"circle arcs need curvature > 0, got {curvature}")
        if not length > 0:
            raise DomainError(f"length must be > 0, got {length}")
        if dim < 2:
            raise ValidationError(f"circle arcs need dim >= 2, got {dim}")
        self._kappa = float(curvature)
        self._length = float(length)
        self._phase = float(phase)
        self._dim = int(dim)

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def length(self) -> float:
        return self._length

    @property
    def kappa(self) -> float:
        return self._kappa

    @property
    def curvature_sup(self) -> float:
        return self._kappa

    @property
    def lipschitz_inverse_curvature(self) -> float:
        return 0.0

    def _angle(self, t: np.ndarray) -> np.ndarray:
        return self._phase + self._kappa * t

    def _position(self, t: np.ndarray) -> np.ndarray:
        a = self._angle(t)
        planar = np.stack(
            [np.sin(a) - math.sin(self._phase), math.cos(self._phase) - np.cos(a)], axis=-1
        )
        return _embed(planar / self._kappa, self._dim)

    def _tangent(self, t: np.ndarray) -> np.ndarray:
        a = self._angle(t)
        return _embed(np.stack([np.cos(a), np.sin(a)], axis=-1), self._dim)

    def _acceleration(self, t: np.ndarray) -> np.ndarray:
        a = self._angle(t)
        return _embed(self._kappa * np.stack([-np.sin(a), np.cos(a)], axis=-1), self._dim)

    def describe(self) -> Dict[str, Any]:
        return {
            **super().describe(),
            "curvature": self._kappa,
            "phase": self._phase,
        }


class AxisPath(Curve):
    """
    Concatenation of straight segments along coordinate axes.

    ``directions[k]`` is the axis index of segment ``k`` and ``lengths[k]`` its
    length. The path carries no curvature; it is the piecewise-linear family
    whose signature norms reduce to multinomial collision probabilities.
    """

    kind = CurveKind.AXIS_PATH

    def __init__(self, directions: Sequence[int], lengths: Sequence[float], dim: int | None = None):
        directions = [int(d) for d in directions]
        lengths = np.asarray(lengths, dtype=float)
        if not directions or len(directions) != len(lengths):
            raise ValidationError("axis paths need matching non-empty directions and lengths")
        if np.any(lengths <= 0):
            raise DomainError("axis path segment lengths must be > 0")
        if dim is None:
            dim = max(directions) + 1
        if min(directions) < 0 or max(directions) >= dim:
            raise ValidationError(f"axis indices must lie in [0, {dim})")
        self._directions: Tuple[int, ...] = tuple(directions)
        self._lengths = lengths
        self._dim = int(dim)
        self._knots = np.concatenate([[0.0], np.cumsum(lengths)])

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def length(self) -> float:
        return float(self._knots[-1])

    @property
    def directions(self) -> Tuple[int, ...]:
        return self._directions

    @property
    def lengths(self) -> np.ndarray:
        return self._lengths.copy()

    @property
    def has_curvature(self) -> bool:
        return False

    def _segment(self, t: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._knots, t, side="right") - 1
        return np.clip(idx, 0, len(self._directions) - 1)

    def vertices(self) -> np.ndarray:
        """Return the ``(m + 1, dim)`` corner points."""
        steps = np.zeros((len(self._directions), self._dim))
        steps[np.arange(len(self._directions)), self._directions] = self._lengths
        return np.vstack([np.zeros(self._dim), np.cumsum(steps, axis=0)])

    def _position(self, t: np.ndarray) -> np.ndarray:
        idx = self._segment(t)
        corners = self.vertices()
        out = corners[idx].copy()
        out[np.arange(len(t)), np.asarray(self._directions)[idx]] += t - self._knots[idx]
        return out

    def _tangent(self, t: np.ndarray) -> np.ndarray:
        idx = self._segment(t)
        out = np.zeros((len(t), self._dim))
        out[np.arange(len(t)), np.asarray(self._directions)[idx]] = 1.0
        return out

    def describe(self) -> Dict[str, Any]:
        return {
            **super().describe(),
            "directions": list(self._directions),
            "lengths": self._lengths.tolist(),
        }


class PiecewiseCircular(Curve):
    """
    Planar ``C^1`` concatenation of circle arcs at unit speed.

    Arc ``k`` has curvature magnitude ``curvatures[k]``, turning direction
    ``orientations[k]`` (+1 counter-clockwise, -1 clockwise) and support length
    ``lengths[k]``. ``phase`` is the initial tangent angle; the tangent angle is
    continuous across arcs so the per-arc phases are derived.
    """

    kind = CurveKind.PIECEWISE_CIRCULAR

    def __init__(
        self,
        curvatures: Sequence[float],
        orientations: Sequence[int],
        lengths: Sequence[float],
        phase: float = 0.0,
    ):
        curvatures = np.asarray(curvatures, dtype=float)
        orientations = np.asarray(orientations, dtype=float)
        lengths = np.asarray(lengths, dtype=float)
        if not (len(curvatures) == len(orientations) == len(lengths)) or len(curvatures) == 0:
            raise ValidationError("curvatures, orientations and lengths must match and be non-empty")
        if np.any(curvatures <= 0):
            raise DomainError("piecewise-circular curves need curvature > 0 on every arc")
        if np.any(np.abs(orientations) != 1):
            raise ValidationError("orientations must be +1 or -1")
        if np.any(lengths <= 0):
            raise DomainError("arc lengths must be > 0")

        self._curvatures = curvatures
        self._signed = curvatures * orientations
        self._orientations = orientations.astype(int)
        self._lengths = lengths
        self._phase = float(phase)
        self._knots = np.concatenate([[0.0], np.cumsum(lengths)])

        # tangent angle and position at the start of every arc
        self._phases = self._phase + np.concatenate([[0.0], np.cumsum(self._signed * lengths)])
        starts = np.zeros((len(lengths) + 1, 2))
        for k, (w, span) in enumerate(zip(self._signed, lengths)):
            a0 = self._phases[k]
            a1 = a0 + w * span
            starts[k + 1] = starts[k] + np.array(
                [math.sin(a1) - math.sin(a0), math.cos(a0) - math.cos(a1)]
            ) / w
        self._starts = starts

    @property
    def dim(self) -> int:
        return 2

    @property
    def length(self) -> float:
        return float(self._knots[-1])

    @property
    def phases(self) -> np.ndarray:
        """Tangent angle at the start of each arc."""
        return self._phases[:-1].copy()

    @property
    def curvature_sup(self) -> float:
        return float(self._curvatures.max())

    @property
    def lipschitz_inverse_curvature(self) -> float:
        # |gamma''|^-1 jumps between arcs of different curvature
        return 0.0 if np.ptp(self._curvatures) == 0 else math.inf

    def _segment(self, t: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._knots, t, side="right") - 1
        return np.clip(idx, 0, len(self._lengths) - 1)

    def _angle(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        idx = self._segment(t)
        return idx, self._phases[idx] + self._signed[idx] * (t - self._knots[idx])

    def _position(self, t: np.ndarray) -> np.ndarray:
        idx, a = self._angle(t)
        a0 = self._phases[idx]
        w = self._signed[idx]
        offset = np.stack([np.sin(a) - np.sin(a0), np.cos(a0) - np.cos(a)], axis=-1)
        return self._starts[idx] + offset / w[:, None]

    def _tangent(self, t: np.ndarray) -> np.ndarray:
        _, a = self._angle(t)
        return np.stack([np.cos(a), np.sin(a)], axis=-1)

    def _acceleration(self, t: np.ndarray) -> np.ndarray:
        idx, a = self._angle(t)
        return self._signed[idx][:, None] * np.stack([-np.sin(a), np.cos(a)], axis=-1)

    def describe(self) -> Dict[str, Any]:
        return {
            **super().describe(),
            "curvatures": self._curvatures.tolist(),
            "orientations": self._orientations.tolist(),
            "lengths": self._lengths.tolist(),
            "phase": self._phase,
        }
