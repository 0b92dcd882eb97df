"""Saddle-point solution of the active target defense game.

The Target and Defender pick a common aimpoint ``(0, y)`` on the orthogonal
bisector of the Attacker-Defender segment, the Attacker heads for the same
point and is intercepted there. The terminal Target-Attacker separation is

    J(y) = alpha * sqrt(x_A^2 + y^2) - sqrt((y - y_T)^2 + x_T^2)

and the Target maximizes it. Its stationary point above ``y_T`` is the upper
real root of a quartic (see :mod:`atddg.quartic`).
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

from . import apollonius, quartic
from .errors import (
    AlphaOutOfRange,
    BoundViolation,
    BracketFailure,
    CoincidentAgents,
    SingularPoint,
)
from .frame import ReducedState

BOUNDARY_TOL = 1e-9
BOUND_TOL = 1e-9


class Outcome(str, enum.Enum):
    ESCAPE = "Escape"
    CAPTURE = "Capture"
    BOUNDARY = "Boundary"
    TRIVIAL_ESCAPE = "TrivialEscape"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Bounds:
    """Intervals that must contain the optimal aimpoint in escape states."""

    y_lower: float | None
    y_upper: float | None
    escape_upper: float
    second_order_upper: float
    active: str


@dataclass(frozen=True)
class GameSolution:
    y_star: float | None
    J_star: float | None
    alpha_bar: float
    outcome: Outcome
    heading_T: float | None
    heading_A: float | None
    heading_D: float | None
    roots: tuple[float, float] | None
    bounds: Bounds | None
    # Diagnostic only: where the Attacker catches a doomed Target heading to (0, y_star).
    capture_point: tuple[float, float] | None = None
    violations: tuple[str, ...] = ()
    payoff_identity_residual: float | None = None

    @property
    def aimpoint(self) -> tuple[float, float] | None:
        return None if self.y_star is None else (0.0, self.y_star)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["outcome"] = self.outcome.value
        return d


@dataclass(frozen=True)
class DeviationPayoff:
    u: float
    v: float
    value: float


def critical_speed_ratio(state: ReducedState) -> float:
    """Speed ratio at which the Apollonius circle just touches the Y-axis."""
    if state.x_T <= 0:
        return 0.0
    near = math.hypot(state.x_A - state.x_T, state.y_T)
    far = math.hypot(state.x_A + state.x_T, state.y_T)
    # (far - near) / (2 x_A) without the cancellation
    return 2.0 * state.x_T / (far + near)


def payoff(state: ReducedState, y: float) -> float:
    return state.alpha * math.hypot(state.x_A, y) - math.hypot(y - state.y_T, state.x_T)


def _check_singular(state: ReducedState, y: float) -> None:
    if state.x_T == 0.0 and y == state.y_T:
        raise SingularPoint("payoff is not differentiable at y = y_T when x_T = 0")


def payoff_derivative(state: ReducedState, y: float) -> float:
    _check_singular(state, y)
    return state.alpha * y / math.hypot(state.x_A, y) - (y - state.y_T) / math.hypot(
        y - state.y_T, state.x_T
    )


def payoff_second_derivative(state: ReducedState, y: float) -> float:
    _check_singular(state, y)
    xA2 = state.x_A**2
    return state.alpha * xA2 / (xA2 + y * y) ** 1.5 - state.x_T**2 / (
        (y - state.y_T) ** 2 + state.x_T**2
    ) ** 1.5


def optimal_payoff(state: ReducedState, y: float) -> float:
    """Payoff at a stationary point ``y > 0``, in the form free of the Target radical."""
    a = state.alpha
    return math.hypot(state.x_A, y) * (state.y_T / y - (1.0 - a * a)) / a


def heading(src, dst) -> float:
    """Two-argument arctangent heading in (-pi, pi]."""
    h = math.atan2(dst[1] - src[1], dst[0] - src[0])
    return math.pi if h == -math.pi else h


def target_direction(state: ReducedState, v: float) -> tuple[float, float]:
    """Unit vector of the Target heading toward ``(0, v)``.

    A Target already on the aimpoint (``x_T = 0``, ``v = y_T``) takes the
    limit of the optimal direction as ``x_T -> 0+``.
    """
    dx, dy = -state.x_T, v - state.y_T
    n = math.hypot(dx, dy)
    if n > 0.0:
        return dx / n, dy / n
    s = state.alpha * state.y_T / math.hypot(state.x_A, state.y_T)
    return -math.sqrt(1.0 - s * s), s


def compute_bounds(state: ReducedState) -> Bounds:
    a = state.alpha
    k = 1.0 - a * a
    escape_upper = state.y_T / k
    ratio = a * state.x_T / state.x_A
    if state.x_T > 0 and ratio < 1.0:
        second = state.y_T / (1.0 - ratio ** (2.0 / 3.0))
    else:
        second = math.inf
    try:
        ys = apollonius.y_axis_intersections(apollonius.circle(state), state)
    except CoincidentAgents:
        ys = None
    active = "second_order" if second < escape_upper else "escape"
    return Bounds(
        ys[0] if ys else None, ys[1] if ys else None, escape_upper, second, active
    )


def check_bounds(state: ReducedState, y: float, bounds: Bounds) -> list[str]:
    """Names of the optimality bounds that ``y`` violates (escape states, ``x_T > 0``)."""
    out = []
    scale = max(state.x_A, abs(state.x_T), state.y_T)
    tol = BOUND_TOL * scale
    if not (y > state.y_T):
        out.append(f"y*={y!r} not above y_T={state.y_T!r}")
    if not (y < bounds.escape_upper + tol):
        out.append(f"y*={y!r} not below y_T/(1-alpha^2)={bounds.escape_upper!r}")
    if not (y < bounds.second_order_upper + tol):
        out.append(f"y*={y!r} not below second-order bound {bounds.second_order_upper!r}")
    if bounds.y_lower is None:
        out.append("Apollonius circle misses the Y-axis")
    elif not (bounds.y_lower - tol <= y <= bounds.y_upper + tol):
        out.append(f"y*={y!r} outside Apollonius interval [{bounds.y_lower!r}, {bounds.y_upper!r}]")
    if y > state.y_T:
        lhs = (state.x_A / state.x_T) ** 2 / state.alpha**2
        rhs = (y / (y - state.y_T)) ** 3
        if not (lhs < rhs * (1.0 + BOUND_TOL)):
            out.append(f"second-order condition fails at y*={y!r} ({lhs!r} >= {rhs!r})")
    return out


def _aimpoint_and_roots(state: ReducedState) -> tuple[float, tuple[float, float]]:
    if not (0.0 < state.alpha < 1.0):
        raise AlphaOutOfRange(f"speed ratio must lie in (0, 1), got {state.alpha}")
    q = quartic.game_quartic(state)
    if state.y_T == 0.0 or q.c0 == 0.0:
        # Target on the X-axis: by symmetry the aimpoint is the origin
        return 0.0, (0.0, 0.0)
    if state.x_T == 0.0:
        return state.y_T, (state.y_T, state.y_T)
    try:
        y1, y2 = quartic.real_roots_bracketed(q, state.y_T, extend=True)
    except BracketFailure:
        noise = 1e-14 * q.scale() * max(1.0, state.y_T**4)
        if abs(q(state.y_T)) <= noise:
            # x_T too small to separate the roots from y_T in floating point
            return state.y_T, (state.y_T, state.y_T)
        raise
    if state.x_T > 0:
        y2 = _polish_stationary(state, y2)
        return y2, (y1, y2)
    return y1, (y1, y2)


def _polish_stationary(state: ReducedState, y: float) -> float:
    """Newton steps on ``dJ/dy = 0`` itself.

    Near a double root the quartic loses about half the digits of ``y``; the
    unsquared condition keeps ``y - y_T`` to full relative precision.
    """
    g = payoff_derivative(state, y)
    for _ in range(8):
        h = payoff_second_derivative(state, y)
        if not h < 0.0 or g == 0.0:
            break
        y_new = y - g / h
        g_new = payoff_derivative(state, y_new)
        if not abs(g_new) < abs(g):
            break
        y, g = y_new, g_new
    return y


def optimal_aimpoint(state: ReducedState, *, strict: bool = True) -> float:
    """Y-coordinate of the common optimal aimpoint.

    ``x_T > 0`` selects the upper quartic root, ``x_T < 0`` the lower one and
    ``x_T = 0`` gives ``y_T``. With ``strict`` set, an escape state whose root
    fails the optimality bounds raises :class:`BoundViolation`.
    """
    y, _ = _aimpoint_and_roots(state)
    if strict and state.x_T > 0 and state.y_T > 0:
        if payoff(state, y) > BOUNDARY_TOL * state.x_A:
            bad = check_bounds(state, y, compute_bounds(state))
            if bad:
                raise BoundViolation("; ".join(bad), bad)
    return y


def ray_circle_exit(state: ReducedState, e) -> tuple[float, float]:
    """Where a ray from the Target with unit direction ``e`` leaves the Apollonius circle."""
    if state.x_T == state.x_A and state.y_T == 0.0:
        return state.x_T, state.y_T
    c = apollonius.circle(state)
    ox, oy = state.x_T - c.center[0], state.y_T - c.center[1]
    b = e[0] * ox + e[1] * oy
    cc = ox * ox + oy * oy - c.radius**2
    s = -b + math.sqrt(max(b * b - cc, 0.0))
    return state.x_T + s * e[0], state.y_T + s * e[1]


def capture_point(state: ReducedState, y: float) -> tuple[float, float]:
    return ray_circle_exit(state, target_direction(state, y))


def solve(state: ReducedState) -> GameSolution:
    alpha_bar = critical_speed_ratio(state)
    if state.alpha >= 1.0:
        return GameSolution(
            None, None, alpha_bar, Outcome.TRIVIAL_ESCAPE, None, None, None, None, None
        )

    y, roots = _aimpoint_and_roots(state)
    J5 = payoff(state, y)
    stationary = state.x_T >= 0 and y > 0
    if stationary:
        J = optimal_payoff(state, y)
        residual = abs(J - J5)
    else:
        # the lower root is not a stationary point of J, so only the direct form applies
        J, residual = J5, None

    if state.x_T < 0:
        outcome = Outcome.ESCAPE
    elif abs(J) <= BOUNDARY_TOL * state.x_A:
        outcome = Outcome.BOUNDARY
    elif J > 0:
        outcome = Outcome.ESCAPE
    else:
        outcome = Outcome.CAPTURE

    bounds = compute_bounds(state)
    violations: list[str] = []
    if state.x_T > 0 and state.y_T > 0 and outcome is Outcome.ESCAPE:
        violations = check_bounds(state, y, bounds)
    if residual is not None and residual > 1e-9 * max(abs(J), state.x_A):
        violations.append(f"payoff identity residual {residual!r}")

    aim = (0.0, y)
    tx, ty = target_direction(state, y)
    cap = capture_point(state, y) if outcome is Outcome.CAPTURE else None
    return GameSolution(
        y_star=y,
        J_star=J,
        alpha_bar=alpha_bar,
        outcome=outcome,
        heading_T=heading((0.0, 0.0), (tx, ty)),
        heading_A=heading((state.x_A, 0.0), aim),
        heading_D=heading((-state.x_A, 0.0), aim),
        roots=roots,
        bounds=bounds,
        capture_point=cap,
        violations=tuple(violations),
        payoff_identity_residual=residual,
    )


def deviation_payoff(state: ReducedState, u: float, v: float) -> DeviationPayoff:
    """Terminal Target distance from ``(0, u)`` when the Attacker aims at ``u``,
    the Defender mirrors it and the Target heads for ``(0, v)``.

    The Attacker reaches ``(0, u)`` after ``sqrt(x_A^2 + u^2)`` (unit speed)
    and the Target covers ``alpha`` times that distance in the meantime.
    """
    ex, ey = target_direction(state, v)
    travel = state.alpha * math.hypot(state.x_A, u)
    px = state.x_T + travel * ex
    py = state.y_T + travel * ey
    return DeviationPayoff(u, v, math.hypot(px, py - u))
