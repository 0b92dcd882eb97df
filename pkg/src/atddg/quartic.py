"""The quartic optimality equation of the aimpoint problem and its two real roots.

Writing the quartic as ``f(y)``, ``f(0) = x_A^2 y_T^2 > 0`` and
``f(y_T) = -alpha^2 x_T^2 y_T^2 < 0`` whenever ``x_T != 0``, and ``f`` grows
without bound, so one real root lies in ``(0, y_T)`` and one above ``y_T``.
Both are found by bisection inside those brackets followed by a safeguarded
Newton polish. No general quartic formula is used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AlphaOutOfRange, BracketFailure
from .frame import ReducedState

BISECT_WIDTH = 1e-3
BRACKET_SLACK = 1e-9
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class QuarticCoeffs:
    c4: float
    c3: float
    c2: float
    c1: float
    c0: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.c4, self.c3, self.c2, self.c1, self.c0)

    def __call__(self, y: float) -> float:
        return (((self.c4 * y + self.c3) * y + self.c2) * y + self.c1) * y + self.c0

    def derivative(self, y: float) -> float:
        return ((4.0 * self.c4 * y + 3.0 * self.c3) * y + 2.0 * self.c2) * y + self.c1

    def scale(self) -> float:
        return max(abs(c) for c in self.as_tuple())

    def residual_ok(self, y: float, tol: float = RESIDUAL_TOL) -> bool:
        return abs(self(y)) <= tol * self.scale() * max(1.0, y**4)


def game_quartic(state: ReducedState) -> QuarticCoeffs:
    a2 = state.alpha**2
    if not (0.0 < state.alpha < 1.0):
        raise AlphaOutOfRange(f"speed ratio must lie in (0, 1), got {state.alpha}")
    k = 1.0 - a2
    xA2 = state.x_A**2
    yT = state.y_T
    return QuarticCoeffs(
        k,
        -2.0 * k * yT,
        k * yT * yT + xA2 - a2 * state.x_T**2,
        -2.0 * xA2 * yT,
        xA2 * yT * yT,
    )


def canonical_quartic(state: ReducedState) -> QuarticCoeffs:
    """Quartic in ``y / y_T`` with lengths measured in units of ``y_T``."""
    if state.y_T <= 0:
        raise BracketFailure("canonical form needs y_T > 0")
    return game_quartic(
        ReducedState(state.x_A / state.y_T, state.x_T / state.y_T, 1.0, state.alpha)
    )


def _solve_in(q: QuarticCoeffs, lo: float, hi: float, width: float) -> float:
    """Root of ``q`` in ``[lo, hi]`` where ``q`` changes sign."""
    flo = q(lo)
    if flo == 0.0:
        return lo
    if q(hi) == 0.0:
        return hi
    rising = flo < 0.0
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fm = q(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == rising:
            lo = mid
        else:
            hi = mid

    x = 0.5 * (lo + hi)
    for _ in range(100):
        fx = q(x)
        if fx == 0.0:
            return x
        if (fx < 0.0) == rising:
            lo = x
        else:
            hi = x
        dfx = q.derivative(x)
        step = fx / dfx if dfx != 0.0 else math.inf
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4.0 * math.ulp(max(abs(x), abs(x_new))) or hi - lo <= 4.0 * math.ulp(hi):
            return x_new
        x = x_new
    return x


def upper_bracket(q: QuarticCoeffs, y_T: float) -> float:
    """``y_T / (1 - alpha^2)`` widened by a relative slack."""
    return y_T / q.c4 * (1.0 + BRACKET_SLACK)


def real_roots_bracketed(
    q: QuarticCoeffs, y_T: float, *, extend: bool = False
) -> tuple[float, float]:
    """Return the real roots ``(y1, y2)`` with ``0 < y1 < y_T < y2``.

    ``y2`` is searched in ``(y_T, y_T/(1 - alpha^2)]``, which contains it
    exactly when the Target can escape. With ``extend=True`` the upper end is
    doubled until the sign changes, which covers capture states as well.
    """
    if not (y_T > 0.0):
        raise BracketFailure(f"need y_T > 0 to bracket roots, got {y_T}")
    if not (q.c0 > 0.0):
        raise BracketFailure(f"f(0) = {q.c0!r} is not positive")
    f_mid = q(y_T)
    if not (f_mid < 0.0):
        raise BracketFailure(f"f(y_T) = {f_mid!r} is not negative (x_T = 0?)")

    hi = upper_bracket(q, y_T)
    if not (q(hi) > 0.0):
        if not extend:
            raise BracketFailure(
                f"f does not change sign on (y_T, y_T/(1-alpha^2)] (f(hi) = {q(hi)!r})"
            )
        for _ in range(2000):
            hi *= 2.0
            if q(hi) > 0.0:
                break
        else:
            raise BracketFailure("no sign change found above y_T")

    width = BISECT_WIDTH * y_T
    y1 = _solve_in(q, 0.0, y_T, width)
    y2 = _solve_in(q, y_T, hi, width)
    for y in (y1, y2):
        if not q.residual_ok(y):
            raise BracketFailure(f"root {y!r} has residual {q(y)!r}")
    return y1, y2


def deflate(q: QuarticCoeffs, y1: float, y2: float) -> tuple[float, float, float]:
    """Quadratic left after dividing out ``(y - y1)(y - y2)``."""
    s, p = y1 + y2, y1 * y2
    a = q.c4
    b = q.c3 + s * a
    c = q.c2 + s * b - p * a
    return a, b, c


def quadratic_discriminant(a: float, b: float, c: float) -> float:
    return b * b - 4.0 * a * c


def has_positive_root(a: float, b: float, c: float) -> bool:
    """Whether ``a y^2 + b y + c`` (``a > 0``) has a real root ``y > 0``."""
    if quadratic_discriminant(a, b, c) < 0:
        return False
    # real roots: both non-positive iff sum <= 0 and product >= 0
    return not (b >= 0 and c >= 0)


def positive_root_count(q: QuarticCoeffs, y1: float, y2: float) -> int:
    """Positive real roots of ``q`` given two of them, counting the deflated pair."""
    a, b, c = deflate(q, y1, y2)
    disc = quadratic_discriminant(a, b, c)
    if disc < 0:
        return 2
    r = math.sqrt(disc)
    return 2 + sum(1 for z in ((-b - r) / (2 * a), (-b + r) / (2 * a)) if z > 0)
