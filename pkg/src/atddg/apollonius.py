"""Apollonius circle of the Attacker-Target pair.

The circle is the locus of points the Target and the Attacker reach at the
same instant; the Target gets strictly inside it first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AlphaOutOfRange, CoincidentAgents
from .frame import ReducedState

TANGENCY_TOL = 1e-12


@dataclass(frozen=True)
class ApolloniusCircle:
    center: tuple[float, float]
    radius: float
    d: float

    def points(self, n: int = 360) -> np.ndarray:
        th = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        return np.column_stack(
            (self.center[0] + self.radius * np.cos(th), self.center[1] + self.radius * np.sin(th))
        )


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise AlphaOutOfRange(f"speed ratio must lie in (0, 1), got {alpha}")


def circle(state: ReducedState) -> ApolloniusCircle:
    a = state.alpha
    _check_alpha(a)
    d = math.hypot(state.x_A - state.x_T, state.y_T)
    if d == 0.0:
        raise CoincidentAgents("Target and Attacker start at the same point")
    k = 1.0 - a * a
    x_O = (state.x_T - a * a * state.x_A) / k
    y_O = state.y_T / k
    return ApolloniusCircle((x_O, y_O), a * d / k, d)


def y_axis_radicand(state: ReducedState) -> float:
    a2 = state.alpha**2
    return a2 * state.y_T**2 + (1.0 - a2) * (a2 * state.x_A**2 - state.x_T**2)


def y_axis_intersections(c: ApolloniusCircle, state: ReducedState) -> tuple[float, float] | None:
    """Return ``(y_lower, y_upper)`` where the circle crosses the Y-axis, or None."""
    a = state.alpha
    k = 1.0 - a * a
    rad = y_axis_radicand(state)
    # radicand equals a^2 d^2 - (x_T - a^2 x_A)^2
    tol = TANGENCY_TOL * (a * c.d) ** 2
    if rad < -tol:
        return None
    if rad <= tol:
        y = state.y_T / k
        return (y, y)
    s = math.sqrt(rad)
    return ((state.y_T - s) / k, (state.y_T + s) / k)
