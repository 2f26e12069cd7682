import math
import random

import pytest

from agsim.geometry import wrap_angle
from agsim.ugv import UgvControlParams, UgvState, ugv_control, ugv_step

P = UgvControlParams()


def drive(state, waypoint, p, dt, steps):
    """Reference closed loop: perfect pose feedback, no noise or latency."""
    for _ in range(steps):
        dx, dy = waypoint[0] - state.x, waypoint[1] - state.y
        d = math.hypot(dx, dy)
        alpha = wrap_angle(math.atan2(dy, dx) - state.psi)
        u, r = ugv_control(d, alpha, p)
        state = ugv_step(state, u, r, dt, p)
    return state


def test_default_params():
    assert P.K == 0.1
    assert P.L == 0.15
    assert P.u_max == 0.5
    assert P.r_max == 1.0


def test_param_validation():
    with pytest.raises(ValueError):
        UgvControlParams(K=0.0)
    with pytest.raises(ValueError):
        UgvControlParams(L=-0.1)


def test_control_objective_reached():
    u, r = ugv_control(0.15, 0.0, P)
    assert u == pytest.approx(0.0)
    assert r == pytest.approx(0.0)


def test_control_straight_ahead():
    u, r = ugv_control(1.15, 0.0, P)
    assert u == pytest.approx(0.1)
    assert r == pytest.approx(0.0)


def test_control_waypoint_abeam():
    u, r = ugv_control(0.3, math.pi / 2, P)
    assert u == pytest.approx(-0.015)
    assert r == pytest.approx(0.2)


def test_control_reverses_inside_stop_radius():
    u, _ = ugv_control(0.05, 0.0, P)
    assert u < 0.0


def test_saturation_preserves_sign():
    big = UgvControlParams(K=10.0)
    u, r = ugv_control(5.0, 0.5, big)
    assert u == big.u_max and r == big.r_max
    u, r = ugv_control(5.0, -0.5, big)
    assert r == -big.r_max
    u, r = ugv_control(0.01, 0.0, big)  # strong reverse command
    assert u == -big.u_max


def test_control_continuous():
    eps = 1e-9
    u0, r0 = ugv_control(0.4, 0.2, P)
    u1, r1 = ugv_control(0.4 + eps, 0.2 + eps, P)
    assert abs(u1 - u0) < 1e-6
    assert abs(r1 - r0) < 1e-6


def test_step_straight_line():
    s = ugv_step(UgvState(), 1.0, 0.0, 0.01, P)
    assert s.x == pytest.approx(0.01)
    assert s.y == pytest.approx(0.0)
    assert s.psi == pytest.approx(0.0)


def test_step_heading_wrap():
    s = ugv_step(UgvState(psi=0.0), 0.0, math.pi, 1.0, P)
    assert s.psi == pytest.approx(math.pi)
    s = ugv_step(s, 0.0, 0.2, 1.0, P)
    assert s.psi == pytest.approx(0.2 - math.pi)


def test_step_rejects_bad_dt():
    with pytest.raises(ValueError):
        ugv_step(UgvState(), 0.1, 0.0, 0.0, P)
    with pytest.raises(ValueError):
        ugv_step(UgvState(), 0.1, 0.0, -0.01, P)


def test_step_heading_integrates_rotation():
    s = UgvState()
    for _ in range(100):
        s = ugv_step(s, 0.0, 0.5, 0.01, P)
    assert s.psi == pytest.approx(0.5)
    assert s.x == pytest.approx(0.0)


def test_actuator_lag_first_order():
    p = UgvControlParams(tau_act=0.5)
    s = UgvState()
    s = ugv_step(s, 1.0, 0.0, 0.25, p)
    # exact exponential update over one step
    assert s.u == pytest.approx(1.0 - math.exp(-0.5), rel=1e-12)


def test_closed_loop_exponential_distance_decay():
    # straight-in approach: d(t) - L = (d0 - L) * exp(-K t)
    d0 = 1.15
    dt = 0.001
    s = UgvState(x=-d0, y=0.0, psi=0.0)
    t = 0.0
    for checkpoint in (5.0, 10.0, 20.0):
        steps = round((checkpoint - t) / dt)
        s = drive(s, (0.0, 0.0), P, dt, steps)
        t = checkpoint
        want = 0.15 + (d0 - 0.15) * math.exp(-0.1 * t)
        have = math.hypot(s.x, s.y)
        assert have == pytest.approx(want, rel=0.02)


def test_converges_from_random_poses():
    rnd = random.Random(2024)
    dt = 0.01
    horizon = int(10.0 / P.K / dt)  # T = 10/K
    for _ in range(100):
        s = UgvState(
            x=rnd.uniform(-3, 3),
            y=rnd.uniform(-3, 3),
            psi=rnd.uniform(-math.pi, math.pi),
        )
        if math.hypot(s.x, s.y) < 0.2:
            continue
        s = drive(s, (0.0, 0.0), P, dt, horizon)
        d = math.hypot(s.x, s.y)
        alpha = wrap_angle(math.atan2(-s.y, -s.x) - s.psi)
        assert 0.15 - 0.01 <= d <= 0.15 + 0.01
        assert abs(alpha) < math.radians(1.0)
