"""Constant-heading engagement simulator with point-capture detection.

Every strategy here resolves to a fixed heading at ``t = 0``, so positions are
advanced in closed form and the capture instants are roots of a quadratic in
``t``. ``dt`` only controls how densely the trajectory is sampled.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import game
from .errors import InvalidStrategy
from .frame import ReducedState
from .game import GameSolution, Outcome

DEFAULT_DT = 1e-3
DEFAULT_EPS = 1e-6

TRAJECTORY_COLUMNS = ("t", "xT", "yT", "xA", "yA", "xD", "yD")


class StrategyKind(str, enum.Enum):
    OPTIMAL = "OptimalAimpoint"
    FIXED_AIMPOINT = "FixedAimpoint"
    FIXED_HEADING = "FixedHeading"


@dataclass(frozen=True)
class Strategy:
    kind: StrategyKind = StrategyKind.OPTIMAL
    value: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", StrategyKind(self.kind))
        if self.kind is not StrategyKind.OPTIMAL:
            if self.value is None or not math.isfinite(self.value):
                raise InvalidStrategy(f"{self.kind.value} needs a finite value")

    @classmethod
    def aimpoint(cls, y: float) -> "Strategy":
        return cls(StrategyKind.FIXED_AIMPOINT, y)

    @classmethod
    def fixed_heading(cls, angle: float) -> "Strategy":
        return cls(StrategyKind.FIXED_HEADING, angle)


OPTIMAL = Strategy()


@dataclass(frozen=True)
class Strategies:
    target: Strategy = OPTIMAL
    attacker: Strategy = OPTIMAL
    defender: Strategy = OPTIMAL


class Event(str, enum.Enum):
    DEFENDER_INTERCEPTS_ATTACKER = "DefenderInterceptsAttacker"
    ATTACKER_CAPTURES_TARGET = "AttackerCapturesTarget"
    TIMEOUT = "Timeout"


@dataclass
class EngagementOutcome:
    event: Event
    t_event: float
    intercept_point: tuple[float, float] | None
    terminal_AT_separation: float
    trajectory: np.ndarray  # columns TRAJECTORY_COLUMNS
    headings: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def final_positions(self) -> dict[str, np.ndarray]:
        row = self.trajectory[-1]
        return {"T": row[1:3], "A": row[3:5], "D": row[5:7]}


def _fixed_heading(pos, s: Strategy, who: str) -> float:
    if s.kind is StrategyKind.FIXED_HEADING:
        return float(s.value)
    if pos[0] == 0.0 and pos[1] == s.value:
        raise InvalidStrategy(f"{who} aimpoint (0, {s.value}) equals its own position")
    return game.heading(pos, (0.0, s.value))


def _mirror(h: float) -> float:
    m = math.pi - h
    return math.atan2(math.sin(m), math.cos(m))


def resolve_headings(
    state: ReducedState, strategies: Strategies, solution: GameSolution | None = None
) -> tuple[float, float, float]:
    """Headings of Target, Attacker and Defender at ``t = 0``.

    The optimal Defender mirrors the Attacker's heading about the Y-axis, so it
    meets the Attacker wherever the Attacker crosses. The optimal Attacker
    answers the Target's heading: it aims where the Target's ray crosses the
    Y-axis, or, when the game solution says capture, where that ray leaves the
    Apollonius circle.
    """
    T, A = state.target, state.attacker
    needs_solution = any(
        s.kind is StrategyKind.OPTIMAL for s in (strategies.target, strategies.attacker)
    )
    if needs_solution:
        if solution is None:
            solution = game.solve(state)
        if solution.outcome is Outcome.TRIVIAL_ESCAPE:
            raise InvalidStrategy("no optimal strategy: the Target is not slower than the Attacker")

    if strategies.target.kind is StrategyKind.OPTIMAL:
        hT = solution.heading_T
    else:
        hT = _fixed_heading(T, strategies.target, "Target")

    if strategies.attacker.kind is StrategyKind.OPTIMAL:
        e = (math.cos(hT), math.sin(hT))
        if solution.outcome is Outcome.CAPTURE:
            aim = game.ray_circle_exit(state, e)
        elif strategies.target.kind is StrategyKind.OPTIMAL:
            aim = (0.0, solution.y_star)
        elif state.x_T > 0 and e[0] < 0:
            aim = (0.0, state.y_T + e[1] * state.x_T / -e[0])
        else:
            aim = (0.0, solution.y_star)
        hA = game.heading(A, aim)
    else:
        hA = _fixed_heading(A, strategies.attacker, "Attacker")

    if strategies.defender.kind is StrategyKind.OPTIMAL:
        hD = _mirror(hA)
    else:
        hD = _fixed_heading(state.defender, strategies.defender, "Defender")
    return hT, hA, hD


def first_crossing(r0, w, eps: float) -> float:
    """Earliest ``t >= 0`` with ``|r0 + w t| <= eps``; ``inf`` if never."""
    if float(np.hypot(*r0)) <= eps:
        return 0.0
    speed = float(np.hypot(*w))
    along = -float(r0 @ w)
    if speed == 0.0 or along <= 0.0:
        return math.inf
    # miss distance from the cross product, free of the |r0|^2 - eps^2 cancellation
    miss = abs(float(r0[0] * w[1] - r0[1] * w[0])) / speed
    if miss > eps:
        return math.inf
    return max(along / speed - math.sqrt((eps - miss) * (eps + miss)), 0.0) / speed


def propagate(
    positions,
    headings,
    speeds,
    *,
    dt: float = DEFAULT_DT,
    eps: float = DEFAULT_EPS,
    t_max: float,
) -> EngagementOutcome:
    """Straight-line run of Target, Attacker and Defender (in that order)."""
    if not (dt > 0 and eps > 0 and t_max > 0):
        raise ValueError("dt, eps and t_max must be positive")
    P = np.asarray(positions, dtype=float).reshape(3, 2)
    h = np.asarray(headings, dtype=float)
    V = np.column_stack((np.cos(h), np.sin(h))) * np.asarray(speeds, dtype=float)[:, None]

    t_int = first_crossing(P[2] - P[1], V[2] - V[1], eps)
    t_cap = first_crossing(P[1] - P[0], V[1] - V[0], eps)
    if t_int <= t_cap and t_int <= t_max:
        event, t_end = Event.DEFENDER_INTERCEPTS_ATTACKER, t_int
    elif t_cap <= t_max:
        event, t_end = Event.ATTACKER_CAPTURES_TARGET, t_cap
    else:
        event, t_end = Event.TIMEOUT, t_max

    ts = np.arange(0.0, t_end, dt)
    if ts.size == 0 or ts[-1] < t_end:
        ts = np.append(ts, t_end)
    pos = P[None, :, :] + ts[:, None, None] * V[None, :, :]
    traj = np.column_stack((ts, pos.reshape(len(ts), 6)))

    end = P + t_end * V
    if event is Event.DEFENDER_INTERCEPTS_ATTACKER:
        point = tuple(float(c) for c in 0.5 * (end[1] + end[2]))
    elif event is Event.ATTACKER_CAPTURES_TARGET:
        point = tuple(float(c) for c in 0.5 * (end[0] + end[1]))
    else:
        point = None
    sep = float(np.hypot(*(end[1] - end[0])))
    return EngagementOutcome(event, float(t_end), point, sep, traj, tuple(float(x) for x in h))


def default_t_max(state: ReducedState, heading_A: float | None = None) -> float:
    """Generous horizon; covers the Attacker's Y-axis crossing when it heads left."""
    base = 10.0 * (state.x_A + abs(state.x_T) + state.y_T)
    if heading_A is not None and math.cos(heading_A) < 0.0:
        base = max(base, 2.0 * state.x_A / -math.cos(heading_A))
    return base


def simulate(
    state: ReducedState,
    strategies: Strategies = Strategies(),
    dt: float = DEFAULT_DT,
    eps: float = DEFAULT_EPS,
    t_max: float | None = None,
    solution: GameSolution | None = None,
) -> EngagementOutcome:
    """Run the engagement in the reduced frame with ``V_A = V_D = 1``, ``V_T = alpha``."""
    hT, hA, hD = resolve_headings(state, strategies, solution)
    return propagate(
        (state.target, state.attacker, state.defender),
        (hT, hA, hD),
        (state.alpha, 1.0, 1.0),
        dt=dt,
        eps=eps,
        t_max=default_t_max(state, hA) if t_max is None else t_max,
    )


@dataclass
class ResidualReport:
    tolerance: float
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def checks(self) -> dict[str, bool]:
        return {k: v <= self.tolerance for k, v in self.residuals.items()}

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "residuals": dict(self.residuals),
            "checks": self.checks,
            "passed": self.passed,
        }


def validate(
    outcome: EngagementOutcome, solution: GameSolution, eps: float, dt: float
) -> ResidualReport:
    """Compare an all-optimal reduced-frame run with the analytic solution.

    Speeds are normalized so the fastest agent moves at unit speed.
    """
    row0 = outcome.trajectory[0]
    tol = eps + 2.0 * dt

    A0 = (row0[3], row0[4])
    if solution.outcome is Outcome.CAPTURE:
        target_point, target_sep = solution.capture_point, 0.0
    else:
        target_point, target_sep = solution.aimpoint, solution.J_star
    rep = ResidualReport(tol)
    if outcome.intercept_point is None:
        rep.residuals["intercept_point"] = math.inf
    else:
        rep.residuals["intercept_point"] = math.dist(outcome.intercept_point, target_point)
    rep.residuals["terminal_separation"] = abs(outcome.terminal_AT_separation - target_sep)
    rep.residuals["interception_time"] = abs(outcome.t_event - math.dist(A0, target_point))
    return rep
