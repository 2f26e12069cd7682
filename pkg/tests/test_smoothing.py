import math
import random

import pytest

from agsim.geometry import wrap_angle
from agsim.smoothing import DesChannel, des_init, des_update


def textbook_des(samples, gamma, lam):
    """Independent oracle: the two recurrences in their standard form.

    S_n = gamma*m_n + (1-gamma)*(S + b)
    b_n = lam*(S_n - S) + (1-lam)*b
    seeded with S = m1, b = m2 - m1, then updated from m2 onward.
    """
    s = samples[0]
    b = samples[1] - samples[0]
    for m in samples[1:]:
        s_new = gamma * m + (1.0 - gamma) * (s + b)
        b = lam * (s_new - s) + (1.0 - lam) * b
        s = s_new
    return s, b


def test_init_constant_stream():
    st = des_init(5.0, 5.0, 0.6, 0.3)
    assert st.level == 5.0
    assert st.trend == 0.0
    assert st.count == 1


def test_init_trend_from_difference():
    st = des_init(0.0, 2.0, 0.6, 0.3)
    assert st.level == 0.0
    assert st.trend == 2.0


def test_init_negative_start():
    st = des_init(-1.0, 1.0, 0.6, 0.3)
    assert st.level == -1.0
    assert st.trend == 2.0


def test_update_passthrough_at_unit_factors():
    st = des_init(0.0, 1.0, 1.0, 1.0)
    st = des_update(st, 1.0)
    assert st.level == 1.0
    assert st.trend == 1.0
    st = des_update(st, 2.0)
    assert st.level == 2.0
    assert st.trend == 1.0


def test_update_half_factors():
    st = des_init(0.0, 2.0, 0.5, 0.5)
    st = des_update(st, 2.0)
    assert st.level == 2.0
    assert st.trend == 2.0


def test_constant_input_is_fixed_point():
    for gamma, lam in [(0.0, 0.0), (0.3, 0.7), (1.0, 1.0), (0.6, 0.3)]:
        st = des_init(4.25, 4.25, gamma, lam)
        for _ in range(500):
            st = des_update(st, 4.25)
            assert st.level == 4.25
            assert st.trend == 0.0


def test_ramp_tracking_at_unit_factors():
    # dyadic slope/offset so the arithmetic is exact
    ch = DesChannel(1.0, 1.0)
    for n in range(1, 50):
        m = 3.0 + 0.5 * n
        ch.feed(m)
        if ch.primed:
            assert ch.value == m
            assert ch.trend == 0.5


def test_oracle_equivalence_random_streams():
    rng = random.Random(42)
    for _ in range(10_000):
        n = rng.randint(2, 12)
        samples = [rng.uniform(-100, 100) for _ in range(n)]
        gamma = rng.random()
        lam = rng.random()
        want_s, want_b = textbook_des(samples, gamma, lam)
        ch = DesChannel(gamma, lam)
        for m in samples:
            ch.feed(m)
        assert ch.value == pytest.approx(want_s, rel=1e-12, abs=1e-12)
        assert ch.trend == pytest.approx(want_b, rel=1e-12, abs=1e-12)


def test_continuous_in_factors():
    samples = [1.0, 4.0, 2.0, 8.0, 5.0, 5.5]
    eps = 1e-9
    base_s, base_b = textbook_des(samples, 0.6, 0.3)
    ds, db = textbook_des(samples, 0.6 + eps, 0.3)
    assert abs(ds - base_s) < 1e-6
    ds, db = textbook_des(samples, 0.6, 0.3 + eps)
    assert abs(db - base_b) < 1e-6


def test_factor_bounds():
    with pytest.raises(ValueError):
        des_init(0.0, 0.0, -0.1, 0.5)
    with pytest.raises(ValueError):
        des_init(0.0, 0.0, 0.5, 1.1)
    with pytest.raises(ValueError):
        DesChannel(2.0, 0.5)
    # endpoints are legal
    des_init(0.0, 0.0, 0.0, 0.0)
    des_init(0.0, 0.0, 1.0, 1.0)


def test_channel_priming_protocol():
    ch = DesChannel(0.6, 0.3)
    assert not ch.primed
    assert ch.feed(1.0) is None
    assert not ch.primed
    with pytest.raises(ValueError):
        ch.value
    st = ch.feed(3.0)
    assert ch.primed
    # textbook start: level at the second sample, trend at the difference
    assert st.level == pytest.approx(3.0)
    assert st.trend == pytest.approx(2.0)
    assert st.count == 2


def test_channel_reset_and_reseed():
    ch = DesChannel(0.6, 0.3)
    ch.feed(1.0)
    ch.feed(2.0)
    ch.reset()
    assert not ch.primed
    ch.reseed(7.5)
    assert ch.primed
    assert ch.value == 7.5
    assert ch.trend == 0.0


def test_angular_channel_tracks_across_seam():
    # unwrapped ramp crossing +pi; the angular channel sees wrapped samples
    # and must produce the same sequence of levels (mod 2*pi) as a linear
    # channel fed the unwrapped stream.
    unwrapped = [2.9 + 0.1 * n for n in range(10)]  # 2.9 .. 3.8 rad
    lin = DesChannel(0.6, 0.3)
    ang = DesChannel(0.6, 0.3, angular=True)
    for theta in unwrapped:
        lin.feed(theta)
        ang.feed(wrap_angle(theta))
        if lin.primed:
            assert wrap_angle(ang.value) == pytest.approx(wrap_angle(lin.value), abs=1e-12)


def test_angular_innovation_never_jumps():
    ang = DesChannel(0.5, 0.5, angular=True)
    ang.feed(3.1)
    ang.feed(3.14)
    before = ang.value
    ang.feed(-3.1)  # just across the seam, ~0.12 rad ahead
    # level advances a fraction of a radian, not by ~2*pi
    assert abs(ang.value - before) < 0.5


def test_angular_init_wraps_trend():
    st = des_init(3.1, -3.1, 0.6, 0.3, angular=True)
    assert st.trend == pytest.approx(2 * math.pi - 6.2, abs=1e-12)
