"""
The curvature distribution ``F``.

``F`` solves ``F'(t) = 1 / |gamma''(F(t) l)|`` with ``F(0) = 0`` and stops at
``tau = inf{t : F(t) = 1}``; it is extended by 0 on the left and by 1 on the
right, so ``F`` is the distribution function of a compactly supported measure
on ``[0, tau]`` whose quantile function turns uniform order statistics into
curvature-scaled ones.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import bisect

from ..config_loader import (
    get_curvature_floor,
    get_initial_steps,
    get_max_refinements,
    get_ode_tolerance,
)
from ..curves.base import Curve
from ..errors import NonIntegrable, UnsupportedDerivative
from ..numerics import rk4_step
from ..orderstats.sampling import OrderStatSample
from .empirical import EmpiricalMeasure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistributionF:
    """
    Tabulated solution of the distribution ODE with monotone cubic interpolation.

    Attributes:
        times: Strictly increasing grid ``t_0 = 0 < ... < t_K = tau``
        values: ``F(t_k)``, strictly increasing from 0 to 1
        tau: Terminal time
        curve: Source curve, used for the exact density
        refinements: Number of step halvings used
    """

    times: np.ndarray
    values: np.ndarray
    tau: float
    curve: Curve
    refinements: int = 0
    _forward: PchipInterpolator = field(init=False, repr=False, compare=False)
    _inverse: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_forward", PchipInterpolator(self.times, self.values))
        object.__setattr__(self, "_inverse", PchipInterpolator(self.values, self.times))

    def __call__(self, t: np.ndarray) -> np.ndarray:
        """``F(t)``, extended by 0 below 0 and by 1 above ``tau``."""
        t = np.asarray(t, dtype=float)
        inside = self._forward(np.clip(t, 0.0, self.tau))
        return np.where(t <= 0.0, 0.0, np.where(t >= self.tau, 1.0, inside))

    def inverse(self, u: np.ndarray) -> np.ndarray:
        """Quantile function ``F^{-1}(u)`` for ``u`` in ``[0, 1]``."""
        return self._inverse(np.clip(np.asarray(u, dtype=float), 0.0, 1.0))

    def density(self, t: np.ndarray) -> np.ndarray:
        """``f(t) = F'(t) = 1 / |gamma''(F(t) l)|`` on ``[0, tau]``, 0 outside."""
        t = np.asarray(t, dtype=float)
        positions = np.clip(self(t), 0.0, 1.0) * self.curve.length
        f = 1.0 / self.curve.curvature(np.atleast_1d(positions)).reshape(np.shape(t))
        return np.where((t < 0.0) | (t > self.tau), 0.0, f)


def _rate(curve: Curve, floor: float):
    def f(_t: float, y: np.ndarray) -> np.ndarray:
        position = min(max(float(y[0]), 0.0), 1.0) * curve.length
        kappa = float(curve.curvature(position)[0])
        if kappa < floor:
            raise NonIntegrable(f"|gamma''| = {kappa:.3g} below {floor:.3g} at t={position:.6g}")
        return np.array([1.0 / kappa])

    return f


def _integrate(f, horizon: float, steps: int) -> tuple[np.ndarray, np.ndarray, float]:
    """March until ``F`` reaches 1 and locate the crossing by bisection on the last step."""
    h = horizon / steps
    times = [0.0]
    values = [0.0]
    y = np.zeros(1)
    t = 0.0
    # F' >= 1/M, so the crossing lies before the horizon up to rounding
    for _ in range(2 * steps + 2):
        y_next = rk4_step(f, t, y, h)
        if y_next[0] >= 1.0:
            start_t, start_y = t, y

            def overshoot(s: float) -> float:
                return float(rk4_step(f, start_t, start_y, s)[0]) - 1.0

            s = h if overshoot(h) <= 0.0 else bisect(overshoot, 0.0, h, xtol=1e-15, maxiter=200)
            tau = start_t + s
            # drop nodes that would sit on top of the terminal point
            while len(times) > 1 and times[-1] > tau - 1e-6 * h:
                times.pop()
                values.pop()
            times.append(tau)
            values.append(1.0)
            return np.asarray(times), np.asarray(values), tau
        t += h
        y = y_next
        times.append(t)
        values.append(float(y[0]))
    raise NonIntegrable("distribution ODE did not reach F = 1")


def _profile_drift(
    times: np.ndarray, values: np.ndarray, new_times: np.ndarray, new_values: np.ndarray
) -> float:
    """Largest change of ``F`` at the coarse nodes when the step is halved."""
    refined = PchipInterpolator(new_times, new_values, extrapolate=False)
    at = np.clip(times[:-1], 0.0, new_times[-1])
    return float(np.max(np.abs(refined(at) - values[:-1]), initial=0.0))


def solve_distribution(curve: Curve, tolerance: Optional[float] = None) -> DistributionF:
    """
    Solve ``F' = 1 / |gamma''_F|`` by fixed-step RK4 with step halving.

    Starting from ``numerics.initial_steps`` steps over ``[0, sup |gamma''|]``
    the step is halved until consecutive terminal times agree within
    ``tolerance`` and the refined solution moves ``F`` by at most ``tolerance``
    at every coarse node.

    Args:
        curve: Curve with non-vanishing curvature
        tolerance: Agreement required between refinements (config default 1e-10)

    Returns:
        DistributionF

    Raises:
        UnsupportedDerivative: For curves without curvature
        NonIntegrable: If ``|gamma''|`` drops below ``numerics.curvature_floor``
    """
    if not curve.has_curvature:
        raise UnsupportedDerivative(f"{curve.kind.value} curves have no curvature distribution")
    tolerance = tolerance or get_ode_tolerance()
    horizon = curve.curvature_sup
    f = _rate(curve, get_curvature_floor())

    steps = get_initial_steps()
    times, values, tau = _integrate(f, horizon, steps)
    refinements = 0
    for refinements in range(1, get_max_refinements() + 1):
        steps *= 2
        new_times, new_values, new_tau = _integrate(f, horizon, steps)
        change = abs(new_tau - tau)
        drift = _profile_drift(times, values, new_times, new_values)
        times, values, tau = new_times, new_values, new_tau
        logger.debug(
            f"F-ODE with {steps} steps: tau={tau:.12g} change={change:.3g} drift={drift:.3g}"
        )
        if change <= tolerance * max(1.0, abs(tau)) and drift <= tolerance:
            break
    else:
        logger.warning(
            f"F-ODE not converged after {refinements} halvings "
            f"(last change {change:.3g}, drift {drift:.3g})"
        )

    if not math.isfinite(tau) or np.any(np.diff(values) <= 0):
        raise NonIntegrable("distribution ODE produced a non-increasing solution")
    return DistributionF(times, values, tau, curve, refinements)


def inverse_transform(
    distribution: DistributionF, sample: OrderStatSample
) -> tuple[EmpiricalMeasure, EmpiricalMeasure]:
    """Map ``U_(i)``, ``V_(i)`` to ``X_(i) = F^{-1}(U_(i))``, ``Y_(i) = F^{-1}(V_(i))``."""
    x = distribution.inverse(sample.u)
    y = distribution.inverse(sample.v)
    return EmpiricalMeasure(x), EmpiricalMeasure(y)
