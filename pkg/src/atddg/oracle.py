"""Brute-force checks that do not rely on the quartic.

The max-min oracle evaluates the geometric deviation payoff on a grid of
Attacker and Target aimpoints; the derivative check uses central differences
of the payoff.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import game
from .frame import ReducedState


def deviation_grid(state: ReducedState, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Distance matrix ``D[i, j]`` for Target aimpoint ``v[i]`` and Attacker aimpoint ``u[j]``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    dx = np.full_like(v, -state.x_T)
    dy = v - state.y_T
    n = np.hypot(dx, dy)
    if np.any(n == 0):
        lim = game.target_direction(state, state.y_T)
        dx = np.where(n == 0, lim[0], dx)
        dy = np.where(n == 0, lim[1], dy)
        n = np.where(n == 0, 1.0, n)
    ex, ey = dx / n, dy / n
    travel = state.alpha * np.hypot(state.x_A, u)
    px = state.x_T + np.outer(ex, travel)
    py = state.y_T + np.outer(ey, travel) - u[None, :]
    return np.hypot(px, py)


def brute_force_maxmin(
    state: ReducedState, y_lo: float, y_hi: float, n: int, *, chunk: int = 256
) -> tuple[float, float, float]:
    """``(u_best, v_best, value)`` of ``max_v min_u`` over an ``n x n`` grid."""
    if n < 3:
        raise ValueError(f"grid needs n >= 3, got {n}")
    ys = np.linspace(y_lo, y_hi, n)
    row_min = np.empty(n)
    row_arg = np.empty(n, dtype=int)
    for s in range(0, n, chunk):
        D = deviation_grid(state, ys, ys[s : s + chunk])
        row_arg[s : s + chunk] = np.argmin(D, axis=1)
        row_min[s : s + chunk] = D[np.arange(D.shape[0]), row_arg[s : s + chunk]]
    i = int(np.argmax(row_min))
    return float(ys[row_arg[i]]), float(ys[i]), float(row_min[i])


@dataclass(frozen=True)
class DerivativeCheck:
    fd_first: float
    analytic_first: float
    error_first: float
    fd_second: float
    analytic_second: float
    error_second: float

    def as_tuple(self) -> tuple[float, float, float]:
        return self.fd_first, self.analytic_first, self.error_first


def finite_difference_check(state: ReducedState, y: float, h: float = 1e-5) -> DerivativeCheck:
    if not h > 0:
        raise ValueError("h must be positive")
    d1 = game.payoff_derivative(state, y)
    d2 = game.payoff_second_derivative(state, y)
    jm, j0, jp = (game.payoff(state, y + k * h) for k in (-1, 0, 1))
    fd1 = (jp - jm) / (2 * h)
    # a wider step for the second difference keeps roundoff below truncation
    H = h * 10.0
    fd2 = (game.payoff(state, y + H) - 2 * j0 + game.payoff(state, y - H)) / (H * H)
    return DerivativeCheck(fd1, d1, abs(fd1 - d1), fd2, d2, abs(fd2 - d2))



@dataclass(frozen=True)
class SaddleCheck:
    """Unilateral deviations from the common aimpoint on a grid."""

    y_star: float
    J_star: float
    step: float
    tol: float
    target_best_v: float  # argmax over v of min over u
    target_best_value: float
    attacker_worst_u: float  # argmin over u of D(u, y*)
    attacker_worst_value: float

    @property
    def target_ok(self) -> bool:
        return self.target_best_value <= self.J_star + self.tol

    @property
    def attacker_ok(self) -> bool:
        return self.attacker_worst_value >= self.J_star - self.tol

    @property
    def argmax_ok(self) -> bool:
        return abs(self.target_best_v - self.y_star) <= self.step

    @property
    def passed(self) -> bool:
        return self.target_ok and self.attacker_ok and self.argmax_ok


def saddle_check(
    state: ReducedState, y_star: float, J_star: float, y_lo: float, y_hi: float, n: int = 101
) -> SaddleCheck:
    """Scan Target and Attacker deviations over ``n`` points of ``[y_lo, y_hi]``.

    The Target side takes the Attacker's grid best response to each ``v``;
    ``y_star`` is added to both grids so the equilibrium itself is scored.
    """
    grid = np.union1d(np.linspace(y_lo, y_hi, n), [y_star])
    D = deviation_grid(state, grid, grid)
    row_min = D.min(axis=1)
    i = int(np.argmax(row_min))
    k = int(np.searchsorted(grid, y_star))
    col = D[k]
    j = int(np.argmin(col))
    tol = 1e-9 * max(state.x_A, abs(state.x_T), state.y_T)
    return SaddleCheck(
        y_star,
        J_star,
        (y_hi - y_lo) / (n - 1),
        tol,
        float(grid[i]),
        float(row_min[i]),
        float(grid[j]),
        float(col[j]),
    )
