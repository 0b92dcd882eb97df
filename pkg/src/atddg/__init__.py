"""Active target defense differential game: solver, escape regions, simulation."""
from .errors import (
    AlphaOutOfRange,
    BoundViolation,
    BracketFailure,
    CoincidentAgents,
    DegenerateAxis,
    GameError,
    InvalidScenario,
    InvalidStrategy,
    SingularPoint,
)
from .frame import FramePose, RealisticScenario, ReducedState, to_realistic, to_reduced
from .game import GameSolution, Outcome, critical_speed_ratio, optimal_aimpoint, payoff, solve

__all__ = [
    "AlphaOutOfRange",
    "BoundViolation",
    "BracketFailure",
    "CoincidentAgents",
    "DegenerateAxis",
    "FramePose",
    "GameError",
    "GameSolution",
    "InvalidScenario",
    "InvalidStrategy",
    "Outcome",
    "RealisticScenario",
    "ReducedState",
    "SingularPoint",
    "critical_speed_ratio",
    "optimal_aimpoint",
    "payoff",
    "solve",
    "to_realistic",
    "to_reduced",
]
