"""Classical fourth-order Runge-Kutta stepping shared by the ODE solvers."""

from __future__ import annotations

from typing import Callable

import numpy as np

RHS = Callable[[float, np.ndarray], np.ndarray]


def rk4_step(f: RHS, t: float, y: np.ndarray, h: float) -> np.ndarray:
    """Advance ``y' = f(t, y)`` by one step of size ``h``."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + h * (k1 + 2.0 * (k2 + k3) + k4) / 6.0


def rk4_fixed(f: RHS, t0: float, t1: float, y0: np.ndarray, steps: int) -> np.ndarray:
    """
    Integrate from ``t0`` to ``t1`` with ``steps`` equal RK4 steps.

    Returns:
        Array of shape ``(steps + 1,) + y0.shape`` with the state at every node
    """
    y = np.asarray(y0, dtype=float)
    h = (t1 - t0) / steps
    out = np.empty((steps + 1,) + y.shape)
    out[0] = y
    for k in range(steps):
        y = rk4_step(f, t0 + k * h, y, h)
        out[k + 1] = y
    return out
