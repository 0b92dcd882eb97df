import math

import numpy as np
import pytest
from hypothesis import given, settings

from atddg import apollonius, game, sim
from atddg.errors import InvalidStrategy
from atddg.frame import RealisticScenario, ReducedState, to_realistic, to_reduced
from atddg.sim import Event, Strategies, Strategy

from .helpers import random_escape_states
from .strategies import escape_states

EX1_Y_STAR = 2.61076539781592
EX1_J_STAR = 0.210159298044508


def test_example1_all_optimal(example1):
    out = sim.simulate(example1, dt=1e-3, eps=1e-6)
    assert out.event is Event.DEFENDER_INTERCEPTS_ATTACKER
    assert out.intercept_point == pytest.approx((0.0, 2.6108), abs=2e-3)
    assert out.terminal_AT_separation == pytest.approx(0.2102, abs=2e-3)
    rep = sim.validate(out, game.solve(example1), 1e-6, 1e-3)
    assert rep.passed
    assert rep.tolerance == pytest.approx(1e-6 + 2e-3)


def test_trajectory_sampling(example1):
    out = sim.simulate(example1, dt=1e-3, eps=1e-6)
    tr = out.trajectory
    t = tr[:, 0]
    assert np.all(np.diff(t) > 0)
    assert t[-1] == out.t_event
    dt = np.diff(t)
    for cols, speed in (((1, 2), 0.5), ((3, 4), 1.0), ((5, 6), 1.0)):
        step = np.hypot(*np.diff(tr[:, cols], axis=0).T)
        assert np.allclose(step, speed * dt, rtol=0, atol=1e-12)
    A, D = tr[-1, 3:5], tr[-1, 5:7]
    assert np.hypot(*(A - D)) == pytest.approx(1e-6, rel=1e-2)


def test_attacker_deviation(example1):
    out = sim.simulate(example1, Strategies(attacker=Strategy.aimpoint(EX1_Y_STAR + 0.3)))
    assert out.event is Event.DEFENDER_INTERCEPTS_ATTACKER
    assert out.intercept_point[1] == pytest.approx(EX1_Y_STAR + 0.3, abs=1e-6)
    assert out.terminal_AT_separation >= EX1_J_STAR - 2e-3
    expected = game.deviation_payoff(example1, EX1_Y_STAR + 0.3, EX1_Y_STAR).value
    assert out.terminal_AT_separation == pytest.approx(expected, abs=1e-5)


def test_target_deviation_answered_by_attacker(example1):
    v = EX1_Y_STAR + 0.3
    out = sim.simulate(example1, Strategies(target=Strategy.aimpoint(v)))
    assert out.event is Event.DEFENDER_INTERCEPTS_ATTACKER
    assert out.intercept_point[1] == pytest.approx(v, abs=1e-6)
    assert out.terminal_AT_separation == pytest.approx(game.payoff(example1, v), abs=1e-5)
    assert out.terminal_AT_separation < EX1_J_STAR


def test_capture_scenario():
    s = ReducedState(6, 3, 2, 0.3)
    sol = game.solve(s)
    out = sim.simulate(s, solution=sol)
    assert out.event is Event.ATTACKER_CAPTURES_TARGET
    c = apollonius.circle(s)
    r = math.dist(out.intercept_point, c.center)
    assert r == pytest.approx(c.radius, abs=1e-3)
    assert out.intercept_point == pytest.approx(sol.capture_point, abs=1e-3)
    assert sim.validate(out, sol, 1e-6, 1e-3).passed


def test_wide_capture_sphere(example1):
    sol = game.solve(example1)
    a = sim.simulate(example1, eps=1e-6)
    b = sim.simulate(example1, eps=0.1)
    # A and D close at 2 x_A / |A I| per unit time
    closing = 2 * 6 / math.hypot(6, sol.y_star)
    assert a.t_event - b.t_event == pytest.approx(0.1 / closing, rel=1e-4)
    rep = sim.validate(b, sol, 0.1, 1e-3)
    assert rep.tolerance == pytest.approx(0.102)
    assert rep.checks["interception_time"]


def test_timeout(example1):
    t_f = math.hypot(6, EX1_Y_STAR)
    out = sim.simulate(example1, t_max=0.5 * t_f)
    assert out.event is Event.TIMEOUT
    assert out.t_event == 0.5 * t_f
    assert out.intercept_point is None


def test_invalid_aimpoint_strategy():
    s = ReducedState(6, 0, 2, 0.5)
    with pytest.raises(InvalidStrategy):
        sim.simulate(s, Strategies(target=Strategy.aimpoint(2.0)))
    with pytest.raises(InvalidStrategy):
        Strategy(sim.StrategyKind.FIXED_HEADING, None)


def test_trivial_escape_needs_fixed_strategies():
    s = ReducedState(6, 3, 2, 1.2)
    with pytest.raises(InvalidStrategy):
        sim.simulate(s)
    out = sim.simulate(
        s,
        Strategies(Strategy.fixed_heading(math.pi), Strategy.aimpoint(2.0), Strategy.aimpoint(2.0)),
    )
    assert out.event is Event.DEFENDER_INTERCEPTS_ATTACKER


def test_tie_goes_to_defender():
    # T shadows D, so both pairs close in exactly the same way
    out = sim.propagate(
        [(-1, 0), (1, 0), (-1, 0)],
        [0.0, math.pi, 0.0],
        [1, 1, 1],
        eps=1e-9,
        t_max=5,
    )
    assert out.event is Event.DEFENDER_INTERCEPTS_ATTACKER
    assert out.t_event == pytest.approx(1.0)


def test_first_crossing():
    assert sim.first_crossing(np.array([3.0, 4.0]), np.array([-3.0, -4.0]), 1.0) == pytest.approx(0.8)
    assert sim.first_crossing(np.array([3.0, 4.0]), np.array([3.0, 4.0]), 1.0) == math.inf
    assert sim.first_crossing(np.array([0.5, 0.0]), np.array([1.0, 0.0]), 1.0) == 0.0
    assert sim.first_crossing(np.array([3.0, 2.0]), np.array([-1.0, 0.0]), 1.0) == math.inf
    # head-on with a tiny radius: eps^2 is far below the roundoff of |r0|^2
    assert sim.first_crossing(np.array([-188.0, 0.0]), np.array([2.0, 0.0]), 1e-6) == pytest.approx(94 - 5e-7)


def test_realistic_plane_run_matches():
    rot, shift = math.radians(30), np.array([5.0, 7.0])
    R = np.array([[math.cos(rot), -math.sin(rot)], [math.sin(rot), math.cos(rot)]])
    T, A, D = (R @ p + shift for p in (np.array([3.0, 2.0]), np.array([6.0, 0.0]), np.array([-6.0, 0.0])))
    state, pose = to_reduced(RealisticScenario(T, A, D, 1.0, 2.0, 2.0))
    sol = game.solve(state)
    headings = [pose.invert_heading(h) for h in (sol.heading_T, sol.heading_A, sol.heading_D)]
    out = sim.propagate([T, A, D], headings, [1.0, 2.0, 2.0], eps=1e-6, t_max=100)
    expected = to_realistic((0.0, sol.y_star), pose)
    assert out.event is Event.DEFENDER_INTERCEPTS_ATTACKER
    assert out.intercept_point == pytest.approx(expected, abs=1e-5)
    assert out.terminal_AT_separation == pytest.approx(sol.J_star, abs=1e-5)


@settings(max_examples=50, deadline=None)
@given(escape_states())
def test_defender_never_later_on_axis(s):
    """Any Y-axis point is equidistant from A and D, so the mirrored Defender
    meets the Attacker exactly there."""
    sol = game.solve(s)
    for u in (0.0, sol.y_star, 2 * s.y_T + 1):
        out = sim.simulate(s, Strategies(attacker=Strategy.aimpoint(u)), dt=1.0, solution=sol)
        assert out.event is Event.DEFENDER_INTERCEPTS_ATTACKER or out.terminal_AT_separation <= 1e-6


def test_many_escape_scenarios_reproduce_solution():
    for s in random_escape_states(100, seed=7, lo=0.5, hi=20):
        sol = game.solve(s)
        out = sim.simulate(s, dt=1e-3, eps=1e-6, solution=sol)
        assert out.event is Event.DEFENDER_INTERCEPTS_ATTACKER
        assert sim.validate(out, sol, 1e-6, 1e-3).passed
