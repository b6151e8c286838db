"""
Solvers for ``psi'' = psi * mu`` on ``[0, 1]`` with ``psi(0) = 0``, ``psi'(0) = 1``.

The solvers are neutral in the normalisation of ``mu``: every constant factor
(the 2 in front of the measure, ``l^2``, ``2D/n``) is put into the measure or
density by the caller.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from ..config_loader import get_initial_steps, get_max_refinements, get_psi_tolerance
from ..errors import PositivityError, ValidationError
from ..numerics import rk4_fixed

logger = logging.getLogger(__name__)

Density = Callable[[float], float]


@dataclass(frozen=True)
class DiscreteMeasure:
    """
    Atomic measure ``scale * sum_i weights[i] delta_{atoms[i]}`` on ``(0, 1]``.

    Attributes:
        atoms: Strictly increasing atom positions in ``(0, 1]``
        weights: Non-negative raw weights
        scale: Constant factor applied to every weight
    """

    atoms: np.ndarray
    weights: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float).ravel()
        weights = np.asarray(self.weights, dtype=float).ravel()
        if atoms.shape != weights.shape:
            raise ValidationError("atoms and weights must have the same length")
        if atoms.size and (atoms[0] <= 0.0 or atoms[-1] > 1.0):
            raise ValidationError("atoms must lie in (0, 1]")
        if np.any(np.diff(atoms) <= 0):
            raise ValidationError("atoms must be strictly increasing")
        if np.any(weights < 0) or self.scale < 0:
            raise ValidationError("weights and scale must be >= 0")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @property
    def effective_weights(self) -> np.ndarray:
        return self.scale * self.weights

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.effective_weights))

    @classmethod
    def empty(cls) -> "DiscreteMeasure":
        return cls(np.zeros(0), np.zeros(0))

    @classmethod
    def uniform_grid(cls, values: np.ndarray, scale: float = 1.0) -> "DiscreteMeasure":
        """Atoms at ``j/n`` (``j = 1..n``) carrying ``values[j-1]``."""
        values = np.asarray(values, dtype=float)
        n = values.size
        return cls(np.arange(1, n + 1) / n, values, scale)

    @classmethod
    def from_density(cls, density: Density, n: int) -> "DiscreteMeasure":
        """Right-endpoint discretisation: atom ``j/n`` carries ``density(j/n) / n``."""
        if n < 1:
            raise ValidationError(f"grid size must be >= 1, got {n}")
        atoms = np.arange(1, n + 1) / n
        values = np.array([density(t) for t in atoms], dtype=float)
        return cls(atoms, values, 1.0 / n)


@dataclass(frozen=True)
class SturmLiouvilleSolution:
    """
    Solution ``psi`` on ``[0, 1]``.

    A ``piecewise-linear`` solution stores ``psi(t) = a[j] + b[j] t`` on segment
    ``j`` between ``knots[j]`` and ``knots[j+1]``; a ``grid`` solution stores
    ``psi`` and ``psi'`` at RK4 nodes and interpolates with cubic Hermite splines.
    """

    kind: str
    knots: np.ndarray
    value: float
    a: Optional[np.ndarray] = None
    b: Optional[np.ndarray] = None
    psi: Optional[np.ndarray] = None
    dpsi: Optional[np.ndarray] = None
    steps: int = 0
    psi0: float = 0.0
    dpsi0: float = 1.0
    _spline: Optional[CubicHermiteSpline] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "grid":
            object.__setattr__(self, "_spline", CubicHermiteSpline(self.knots, self.psi, self.dpsi))

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
        if self.kind == "grid":
            return self._spline(t)
        segment = np.clip(np.searchsorted(self.knots, t, side="right") - 1, 0, len(self.a) - 1)
        return self.a[segment] + self.b[segment] * t

    def continuity_defect(self) -> float:
        """Largest jump of ``psi`` at the interior knots (piecewise-linear only)."""
        if self.kind != "piecewise-linear" or len(self.a) < 2:
            return 0.0
        t = self.knots[1:-1]
        left = self.a[:-1] + self.b[:-1] * t
        right = self.a[1:] + self.b[1:] * t
        return float(np.max(np.abs(left - right)))


def solve_psi_discrete(mu: DiscreteMeasure, dtype=np.float64) -> SturmLiouvilleSolution:
    """
    Exact piecewise-linear solution for an atomic measure.

    Starting from ``psi(t) = t``, at every atom ``t_i`` with weight ``w_i`` the
    slope jumps by ``w_i psi(t_i)`` and the intercept is reset so ``psi`` stays
    continuous.

    Args:
        mu: Atomic measure on ``(0, 1]``
        dtype: Floating type of the recursion

    Raises:
        PositivityError: If ``psi`` is not positive at an atom
    """
    atoms = mu.atoms.astype(dtype)
    weights = mu.effective_weights.astype(dtype)
    count = atoms.size
    a = np.zeros(count + 1, dtype=dtype)
    b = np.ones(count + 1, dtype=dtype)
    for i in range(count):
        t_i = atoms[i]
        value = a[i] + b[i] * t_i
        if not value > 0:
            raise PositivityError(f"psi({float(t_i):.6g}) = {float(value):.6g} is not positive")
        b[i + 1] = b[i] + weights[i] * value
        a[i + 1] = value - b[i + 1] * t_i

    if count and mu.atoms[-1] == 1.0:
        # the slope change at t = 1 has no segment to act on
        knots = np.concatenate([[0.0], mu.atoms])
        a, b = a[:-1], b[:-1]
    else:
        knots = np.concatenate([[0.0], mu.atoms, [1.0]])
    value = float(a[-1] + b[-1])
    return SturmLiouvilleSolution("piecewise-linear", knots, value, a=a, b=b)


def solve_psi_continuous(
    density: Density, tolerance: Optional[float] = None
) -> SturmLiouvilleSolution:
    """
    Solve ``psi'' = rho psi`` for a continuous density ``rho >= 0``.

    RK4 on ``(psi, psi')`` with step halving until consecutive values of
    ``psi(1)`` agree within ``tolerance`` (relative to ``max(1, psi(1))``).
    """
    tolerance = tolerance or get_psi_tolerance()

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], density(t) * y[0]])

    y0 = np.array([0.0, 1.0])
    steps = get_initial_steps()
    path = rk4_fixed(rhs, 0.0, 1.0, y0, steps)
    for _ in range(get_max_refinements()):
        steps *= 2
        refined = rk4_fixed(rhs, 0.0, 1.0, y0, steps)
        change = abs(refined[-1, 0] - path[-1, 0])
        path = refined
        logger.debug(f"psi ODE with {steps} steps: psi(1)={path[-1, 0]:.15g} change={change:.3g}")
        if change <= tolerance * max(1.0, abs(path[-1, 0])):
            break
    else:
        logger.warning(f"psi ODE not converged with {steps} steps (last change {change:.3g})")

    if np.any(path[1:, 0] <= 0):
        raise PositivityError("psi lost positivity; the density must be >= 0")
    knots = np.linspace(0.0, 1.0, steps + 1)
    return SturmLiouvilleSolution(
        "grid", knots, float(path[-1, 0]), psi=path[:, 0], dpsi=path[:, 1], steps=steps
    )
