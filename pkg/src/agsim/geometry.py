"""Small angle and interval helpers shared across the package."""

import math

TAU = 2.0 * math.pi


def wrap_angle(a: float) -> float:
    """Wrap an angle in radians into (-pi, pi]."""
    a = math.fmod(a, TAU)
    if a > math.pi:
        a -= TAU
    elif a <= -math.pi:
        a += TAU
    return a


def clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x
