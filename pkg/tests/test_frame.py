import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from atddg.errors import DegenerateAxis, InvalidScenario
from atddg.frame import FramePose, RealisticScenario, ReducedState, to_realistic, to_reduced

pts = st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))


def rotate(p, deg, shift):
    c, s = math.cos(math.radians(deg)), math.sin(math.radians(deg))
    return (c * p[0] - s * p[1] + shift[0], s * p[0] + c * p[1] + shift[1])


def test_canonical_frame_is_identity():
    state, pose = to_reduced(RealisticScenario((0.5, 0.5), (1, 0), (-1, 0), 1, 1, 1))
    assert (state.x_A, state.x_T, state.y_T, state.alpha) == (1.0, 0.5, 0.5, 1.0)
    assert pose.translation == (0.0, 0.0)
    assert pose.rotation_angle == 0.0
    assert not pose.reflect_y
    assert to_realistic((2, 3), pose) == pytest.approx([2, 3])


def test_target_below_axis_is_reflected():
    state, pose = to_reduced(RealisticScenario((0.5, -0.5), (1, 0), (-1, 0), 1, 1, 1))
    assert (state.x_A, state.x_T, state.y_T) == (1.0, 0.5, 0.5)
    assert pose.reflect_y
    assert to_realistic((0.5, 0.5), pose) == pytest.approx([0.5, -0.5])


def test_rotated_translated_scenario():
    T, A, D = (rotate(p, 30, (5, 7)) for p in ((0.5, 0.5), (1, 0), (-1, 0)))
    state, pose = to_reduced(RealisticScenario(T, A, D, 1, 1, 1))
    assert state.x_A == pytest.approx(1.0, rel=1e-14)
    assert state.x_T == pytest.approx(0.5, rel=1e-14)
    assert state.y_T == pytest.approx(0.5, rel=1e-14)
    assert to_realistic((state.x_T, state.y_T), pose) == pytest.approx(T, rel=1e-12)
    assert pose.apply(A) == pytest.approx([1, 0], abs=1e-12)
    assert pose.apply(D) == pytest.approx([-1, 0], abs=1e-12)


def test_speed_ratio_and_trivial_flag():
    sc = RealisticScenario((0, 1), (1, 0), (-1, 0), 3.0, 2.0, 2.0)
    assert sc.alpha == 1.5
    assert sc.trivial_escape


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(v_T=1, v_A=1, v_D=2),
        dict(v_T=0, v_A=1, v_D=1),
        dict(v_T=1, v_A=-1, v_D=-1),
    ],
)
def test_bad_speeds_rejected(kwargs):
    with pytest.raises(InvalidScenario):
        RealisticScenario((0, 1), (1, 0), (-1, 0), **kwargs)


def test_coincident_attacker_defender():
    with pytest.raises(DegenerateAxis):
        to_reduced(RealisticScenario((0, 1), (2, 3), (2, 3), 1, 1, 1))


@pytest.mark.parametrize("bad", [dict(x_A=0.0), dict(y_T=-1.0), dict(alpha=0.0)])
def test_reduced_state_invariants(bad):
    kw = dict(x_A=1.0, x_T=0.5, y_T=0.5, alpha=0.5) | bad
    with pytest.raises(InvalidScenario):
        ReducedState(**kw)


@given(pts, pts, pts, pts, pts)
def test_pose_is_isometry_and_invertible(T, A, D, p, q):
    if math.dist(A, D) < 1e-6:
        return
    _, pose = to_reduced(RealisticScenario(T, A, D, 1, 1, 1))
    scale = max(1.0, *map(abs, p + q), *map(abs, pose.translation))
    dp = math.dist(p, q)
    assert math.dist(pose.apply(p), pose.apply(q)) == pytest.approx(dp, rel=1e-12, abs=1e-12 * scale)
    assert pose.invert(pose.apply(p)) == pytest.approx(p, rel=1e-12, abs=1e-12 * scale)


@given(pts, pts, pts)
def test_agents_land_on_canonical_positions(T, A, D):
    sep = math.dist(A, D)
    if sep < 1e-6:
        return
    state, pose = to_reduced(RealisticScenario(T, A, D, 1, 1, 1))
    scale = max(sep, *map(abs, A + D + T))
    assert np.hypot(*(pose.apply(A) - [state.x_A, 0])) <= 1e-12 * scale
    assert np.hypot(*(pose.apply(D) + [state.x_A, 0])) <= 1e-12 * scale
    assert state.y_T >= 0


def test_heading_maps_back():
    pose = FramePose((5.0, 7.0), math.radians(-30), True)
    d = pose.invert_vector([math.cos(0.3), math.sin(0.3)])
    assert pose.invert_heading(0.3) == pytest.approx(math.atan2(d[1], d[0]))
