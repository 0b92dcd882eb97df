"""Escape and capture regions of the reduced state space.

For fixed speed ratio and Attacker abscissa the two regions are separated by
the right branch of the hyperbola

    x^2 / (alpha^2 x_A^2) - y^2 / ((1 - alpha^2) x_A^2) = 1

whose asymptotes have slope ``sqrt(1 - alpha^2) / alpha`` for every ``x_A``.
Initial Target positions left of the branch escape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AlphaOutOfRange, GameError
from .game import Outcome

CLASSIFY_TOL = 1e-9


@dataclass(frozen=True)
class RegionBoundary:
    alpha: float
    x_A: float
    samples: np.ndarray
    asymptote_slope: float


def _check(alpha: float, x_A: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise AlphaOutOfRange(f"speed ratio must lie in (0, 1), got {alpha}")
    if not (x_A > 0):
        raise GameError(f"x_A must be positive, got {x_A}")


def asymptote_slope(alpha: float) -> float:
    return math.sqrt(1.0 - alpha * alpha) / alpha


def hyperbola_lhs(alpha: float, x_A: float, x, y):
    return x**2 / (alpha * x_A) ** 2 - y**2 / ((1.0 - alpha * alpha) * x_A**2)


def boundary_x(alpha: float, x_A: float, y):
    """Abscissa of the right branch at ordinate ``y``."""
    return alpha * x_A * np.sqrt(1.0 + np.asarray(y, dtype=float) ** 2 / ((1.0 - alpha * alpha) * x_A**2))


def classify(alpha: float, x_A: float, x: float, y: float) -> Outcome:
    """Escape, Capture or Boundary for a Target starting at ``(x, y)``."""
    _check(alpha, x_A)
    if x <= 0:
        return Outcome.ESCAPE
    # x <= alpha^2 x_A puts the circle centre left of the axis; lhs < 1 covers it
    u = (x / (alpha * x_A)) ** 2
    w = y * y / ((1.0 - alpha * alpha) * x_A**2)
    lhs = u - w
    if abs(lhs - 1.0) <= CLASSIFY_TOL * max(1.0, u):
        return Outcome.BOUNDARY
    return Outcome.ESCAPE if lhs < 1.0 else Outcome.CAPTURE


def boundary_samples(alpha: float, x_A: float, y_min: float, y_max: float, n: int) -> RegionBoundary:
    _check(alpha, x_A)
    if n < 2:
        raise GameError(f"need at least two samples, got n={n}")
    if not (y_min < y_max):
        raise GameError(f"need y_min < y_max, got [{y_min}, {y_max}]")
    y = np.linspace(y_min, y_max, n)
    pts = np.column_stack((boundary_x(alpha, x_A, y), y))
    return RegionBoundary(alpha, x_A, pts, asymptote_slope(alpha))
