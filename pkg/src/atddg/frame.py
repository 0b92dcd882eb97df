"""Mapping between the realistic plane and the reduced game frame.

In the reduced frame the Attacker sits at ``(x_A, 0)``, the Defender at
``(-x_A, 0)`` and the Target in the closed upper half plane. The Y-axis is
the orthogonal bisector of the Attacker-Defender segment.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAxis, InvalidScenario

AXIS_TOL = 1e-12


@dataclass(frozen=True)
class RealisticScenario:
    target_pos: tuple[float, float]
    attacker_pos: tuple[float, float]
    defender_pos: tuple[float, float]
    v_T: float
    v_A: float
    v_D: float

    def __post_init__(self):
        for name in ("v_T", "v_A", "v_D"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidScenario(f"{name} must be a positive finite speed, got {v!r}")
        if not math.isclose(self.v_D, self.v_A, rel_tol=1e-9):
            raise InvalidScenario(
                f"Defender and Attacker speeds must be equal (v_A={self.v_A}, v_D={self.v_D})"
            )
        for name in ("target_pos", "attacker_pos", "defender_pos"):
            p = getattr(self, name)
            if len(p) != 2 or not all(math.isfinite(c) for c in p):
                raise InvalidScenario(f"{name} must be a finite 2-vector")
            object.__setattr__(self, name, (float(p[0]), float(p[1])))

    @property
    def alpha(self) -> float:
        return self.v_T / self.v_A

    @property
    def trivial_escape(self) -> bool:
        return self.alpha >= 1.0


@dataclass(frozen=True)
class ReducedState:
    """Game state in the reduced frame; ``alpha`` is the Target/Attacker speed ratio."""

    x_A: float
    x_T: float
    y_T: float
    alpha: float

    def __post_init__(self):
        for name in ("x_A", "x_T", "y_T", "alpha"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidScenario(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.x_A <= 0:
            raise InvalidScenario(f"x_A must be positive, got {self.x_A}")
        if self.y_T < 0:
            raise InvalidScenario(f"y_T must be non-negative in the reduced frame, got {self.y_T}")
        if self.alpha <= 0:
            raise InvalidScenario(f"alpha must be positive, got {self.alpha}")

    def scaled(self, s: float) -> "ReducedState":
        return ReducedState(self.x_A * s, self.x_T * s, self.y_T * s, self.alpha)

    @property
    def target(self) -> np.ndarray:
        return np.array([self.x_T, self.y_T])

    @property
    def attacker(self) -> np.ndarray:
        return np.array([self.x_A, 0.0])

    @property
    def defender(self) -> np.ndarray:
        return np.array([-self.x_A, 0.0])


@dataclass(frozen=True)
class FramePose:
    """Isometry from the realistic plane to the reduced frame.

    Forward map: ``q = F @ R(rotation_angle) @ (p - translation)`` where ``F``
    negates the second coordinate when ``reflect_y`` is set.
    """

    translation: tuple[float, float] = (0.0, 0.0)
    rotation_angle: float = 0.0
    reflect_y: bool = False

    def _rotation(self) -> np.ndarray:
        c, s = math.cos(self.rotation_angle), math.sin(self.rotation_angle)
        return np.array([[c, -s], [s, c]])

    def _flip(self) -> np.ndarray:
        return np.diag([1.0, -1.0 if self.reflect_y else 1.0])

    def apply(self, p) -> np.ndarray:
        """Realistic point -> reduced point."""
        p = np.asarray(p, dtype=float)
        return (p - np.asarray(self.translation)) @ (self._flip() @ self._rotation()).T

    def apply_vector(self, v) -> np.ndarray:
        return np.asarray(v, dtype=float) @ (self._flip() @ self._rotation()).T

    def invert(self, q) -> np.ndarray:
        """Reduced point -> realistic point."""
        q = np.asarray(q, dtype=float)
        return q @ (self._flip() @ self._rotation()) + np.asarray(self.translation)

    def invert_vector(self, v) -> np.ndarray:
        return np.asarray(v, dtype=float) @ (self._flip() @ self._rotation())

    def invert_heading(self, angle: float) -> float:
        """Heading in the reduced frame -> heading in the realistic plane."""
        d = self.invert_vector([math.cos(angle), math.sin(angle)])
        return math.atan2(d[1], d[0])


def to_reduced(scenario: RealisticScenario) -> tuple[ReducedState, FramePose]:
    A = np.asarray(scenario.attacker_pos, dtype=float)
    D = np.asarray(scenario.defender_pos, dtype=float)
    T = np.asarray(scenario.target_pos, dtype=float)
    AD = A - D
    sep = math.hypot(AD[0], AD[1])
    if sep < AXIS_TOL:
        raise DegenerateAxis(f"Attacker and Defender coincide (|AD| = {sep:g})")

    mid = 0.5 * (A + D)
    # rotate D->A onto +X
    theta = -math.atan2(AD[1], AD[0])
    pose = FramePose((float(mid[0]), float(mid[1])), theta, False)
    t = pose.apply(T)
    if t[1] < 0:
        pose = FramePose(pose.translation, theta, True)
        t = pose.apply(T)

    state = ReducedState(0.5 * sep, float(t[0]), max(float(t[1]), 0.0), scenario.alpha)
    return state, pose


def to_realistic(p, pose: FramePose) -> np.ndarray:
    return pose.invert(p)
