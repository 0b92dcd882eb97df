"""Exception types raised by the solver."""


class GameError(ValueError):
    """Base class for invalid inputs and numerical failures."""


class InvalidScenario(GameError):
    pass


class DegenerateAxis(GameError):
    """Attacker and Defender coincide, so the reduced frame is undefined."""


class AlphaOutOfRange(GameError):
    pass


class CoincidentAgents(GameError):
    pass


class BracketFailure(GameError):
    """The sign pattern needed to bracket a quartic root does not hold."""


class BoundViolation(GameError):
    """A selected aimpoint fails one of the optimality bounds."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class SingularPoint(GameError):
    pass


class InvalidStrategy(GameError):
    pass
