"""Double exponential smoothing of the measurement streams.

Holt's two-parameter recurrence, written in innovation form so a constant
input is an exact fixed point (no drift from rounding the two terms
differently):

    predicted = S + b
    S' = predicted + gamma * (m - predicted)
    b' = lam * (S' - S) + (1 - lam) * b

``gamma`` weights the new sample into the level, ``lam`` turns level changes
into the trend estimate.  Initialization from the first two samples is the
textbook one: level at the first sample, trend at their difference.

Angular channels wrap the innovation and the initial trend into (-pi, pi] so
a stream hopping across the +-pi seam is tracked as a continuous angle; the
level itself is left unwrapped and callers wrap on read.
"""

from dataclasses import dataclass

from .geometry import wrap_angle


@dataclass(frozen=True)
class DesState:
    level: float
    trend: float
    count: int
    gamma: float
    lam: float
    angular: bool = False


def _check_factors(gamma: float, lam: float):
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must be in [0, 1]")
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must be in [0, 1]")


def des_init(m1: float, m2: float, gamma: float, lam: float, angular: bool = False) -> DesState:
    """Seed the recurrence from the first two samples."""
    _check_factors(gamma, lam)
    trend = wrap_angle(m2 - m1) if angular else m2 - m1
    return DesState(m1, trend, 1, gamma, lam, angular)


def des_update(s: DesState, m: float) -> DesState:
    """Absorb one sample and return the new state."""
    predicted = s.level + s.trend
    innovation = m - predicted
    if s.angular:
        innovation = wrap_angle(innovation)
    level = predicted + s.gamma * innovation
    trend = s.lam * (level - s.level) + (1.0 - s.lam) * s.trend
    return DesState(level, trend, s.count + 1, s.gamma, s.lam, s.angular)


class DesChannel:
    """Streaming wrapper holding one smoothed channel.

    The first sample is buffered; the second seeds the recurrence and is then
    absorbed as a regular update, which reproduces the textbook start
    (level = second sample, trend = their difference).
    """

    __slots__ = ("gamma", "lam", "angular", "state", "_first")

    def __init__(self, gamma: float, lam: float, angular: bool = False):
        _check_factors(gamma, lam)
        self.gamma = gamma
        self.lam = lam
        self.angular = angular
        self.state: DesState | None = None
        self._first: float | None = None

    @property
    def primed(self) -> bool:
        return self.state is not None

    def feed(self, m: float) -> DesState | None:
        if self.state is not None:
            self.state = des_update(self.state, m)
        elif self._first is None:
            self._first = m
            return None
        else:
            self.state = des_update(des_init(self._first, m, self.gamma, self.lam, self.angular), m)
            self._first = None
        return self.state

    def reset(self):
        self.state = None
        self._first = None

    def reseed(self, m: float):
        """Restart the channel at a known value with zero trend."""
        self.state = des_init(m, m, self.gamma, self.lam, self.angular)
        self._first = None

    @property
    def value(self) -> float:
        if self.state is None:
            raise ValueError("channel not primed")
        return self.state.level

    @property
    def trend(self) -> float:
        if self.state is None:
            raise ValueError("channel not primed")
        return self.state.trend
