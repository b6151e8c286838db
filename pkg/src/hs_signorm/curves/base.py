"""Base class for unit-speed curves."""

from __future__ import annotations

from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Union

import numpy as np

from ..errors import OutOfDomain, UnsupportedDerivative, ValidationError

TimeLike = Union[float, np.ndarray]

_DOMAIN_SLACK = 1e-12


class CurveKind(Enum):
    """Curve families understood by the library."""

    CIRCLE_ARC = "circle-arc"
    AXIS_PATH = "axis-path"
    PIECEWISE_CIRCULAR = "piecewise-circular"
    POLYLINE = "polyline"


class Curve(ABC):
    """
    Unit-speed curve on ``[0, length]`` in ``R^dim``.

    Subclasses are immutable and implement the vectorised primitives
    ``_position``, ``_tangent`` and (when curvature exists) ``_acceleration``
    on arrays of times already checked against the domain.

    Usage:
        arc = CircleArc(curvature=2 * np.pi, length=1.0)
        arc.evaluate(0.25, order=1)    # unit tangent
        arc.evaluate(np.linspace(0, 1, 5), order=2)
    """

    kind: CurveKind

    @property
    @abstractmethod
    def dim(self) -> int:
        """Ambient dimension."""

    @property
    @abstractmethod
    def length(self) -> float:
        """Total arc length (the parameter interval is ``[0, length]``)."""

    @property
    def has_curvature(self) -> bool:
        """Whether ``evaluate(..., order=2)`` is supported."""
        return True

    @property
    def curvature_sup(self) -> float:
        """Declared ``M = sup |gamma''|``."""
        raise UnsupportedDerivative(f"{self.kind.value} curves carry no curvature")

    @property
    def lipschitz_inverse_curvature(self) -> float:
        """Declared Lipschitz constant of ``t -> |gamma''_t|^-1``."""
        raise UnsupportedDerivative(f"{self.kind.value} curves carry no curvature")

    @abstractmethod
    def _position(self, t: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _tangent(self, t: np.ndarray) -> np.ndarray:
        pass

    def _acceleration(self, t: np.ndarray) -> np.ndarray:
        raise UnsupportedDerivative(
            f"second derivative is undefined for {self.kind.value} curves"
        )

    def _check_times(self, t: TimeLike) -> np.ndarray:
        times = np.asarray(t, dtype=float)
        slack = _DOMAIN_SLACK * max(1.0, self.length)
        if np.any(~np.isfinite(times)) or np.any(times < -slack) or np.any(
            times > self.length + slack
        ):
            raise OutOfDomain(f"time outside [0, {self.length}]: {t!r}")
        return np.clip(times, 0.0, self.length)

    def evaluate(self, t: TimeLike, order: int = 0) -> np.ndarray:
        """
        Evaluate the curve or one of its derivatives.

        Args:
            t: Time (scalar or array) in ``[0, length]``
            order: 0 for the position, 1 for the unit tangent, 2 for ``gamma''``

        Returns:
            Array of shape ``(dim,)`` for a scalar time, ``(k, dim)`` for ``k`` times

        Raises:
            OutOfDomain: If any time lies outside ``[0, length]``
            UnsupportedDerivative: For order 2 on curves without curvature
        """
        times = self._check_times(t)
        flat = np.atleast_1d(times)
        if order == 0:
            values = self._position(flat)
        elif order == 1:
            values = self._tangent(flat)
        elif order == 2:
            if not self.has_curvature:
                raise UnsupportedDerivative(
                    f"second derivative is undefined for {self.kind.value} curves"
                )
            values = self._acceleration(flat)
        else:
            raise ValidationError(f"derivative order must be 0, 1 or 2, got {order}")
        return values[0] if times.ndim == 0 else values

    def curvature(self, t: TimeLike) -> np.ndarray:
        """Return ``|gamma''_t|`` (vectorised)."""
        return np.linalg.norm(np.atleast_2d(self.evaluate(t, order=2)), axis=-1)

    def describe(self) -> Dict[str, Any]:
        """Return the constructor parameters as a JSON-friendly dict."""
        return {"kind": self.kind.value, "dim": self.dim, "length": self.length}

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} dim={self.dim} length={self.length:.6g}>"
