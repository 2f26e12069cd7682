"""Lossy, delayed message channels between the vehicles and the station.

A channel is a FIFO pipe in simulated time.  Each accepted message is
assigned a delivery time ``now + latency_mean + jitter`` (jitter uniform in
``[-latency_jitter, +latency_jitter]``, never driving the total delay below
zero) and delivery order is forced to match send order: a message can never
overtake an earlier one.  Random draws (loss, then jitter) are skipped
entirely when the corresponding parameter is zero so that configurations
differing only in unused noise terms consume the generator identically.

``DirectChannel`` is the loop-back used for bypass runs: same interface,
no delay, no draws.
"""

from collections import deque
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from .perception import MarkerObservation


class CommandMsg(NamedTuple):
    """Station to robot: smoothed distance and bearing error plus context."""

    t_sent: float
    d: float
    alpha: float
    waypoint_id: int


class MeasurementMsg(NamedTuple):
    """Camera to station: one marker observation."""

    t_sent: float
    obs: MarkerObservation


@dataclass(frozen=True)
class ChannelParams:
    latency_mean: float = 0.0
    latency_jitter: float = 0.0
    loss_prob: float = 0.0
    rate_hz: float = 25.0
    bypass: bool = False

    def __post_init__(self):
        if self.latency_mean < 0 or self.latency_jitter < 0:
            raise ValueError("latencies must be >= 0")
        if not 0.0 <= self.loss_prob < 1.0:
            raise ValueError("loss_prob must be in [0, 1)")
        if self.rate_hz <= 0:
            raise ValueError("rate_hz must be > 0")


class Channel:
    """One direction of a radio link carrying opaque payloads."""

    def __init__(self, params: ChannelParams, rng: np.random.Generator):
        self.params = params
        self.rng = rng
        self._queue: deque[tuple[float, Any]] = deque()
        self._last_send = -np.inf
        self._last_delivery = -np.inf
        self.sent = 0
        self.dropped = 0
        self.delivered = 0

    @property
    def in_flight(self) -> int:
        return len(self._queue)

    def send(self, payload: Any, now: float):
        if now < self._last_send:
            raise ValueError("send times must be non-decreasing")
        self._last_send = now
        self.sent += 1
        p = self.params
        if p.loss_prob > 0 and self.rng.random() < p.loss_prob:
            self.dropped += 1
            return
        delay = p.latency_mean
        if p.latency_jitter > 0:
            delay += self.rng.uniform(-p.latency_jitter, p.latency_jitter)
        if delay < 0:
            delay = 0.0
        when = now + delay
        if when < self._last_delivery:
            when = self._last_delivery
        self._last_delivery = when
        self._queue.append((when, payload))

    def poll(self, now: float) -> list[Any]:
        out = []
        q = self._queue
        while q and q[0][0] <= now:
            out.append(q.popleft()[1])
        self.delivered += len(out)
        return out


class DirectChannel:
    """Zero-delay stand-in for a Channel; delivers on the next poll."""

    def __init__(self):
        self._queue: deque[Any] = deque()
        self.sent = 0
        self.dropped = 0
        self.delivered = 0

    @property
    def in_flight(self) -> int:
        return len(self._queue)

    def send(self, payload: Any, now: float):
        self.sent += 1
        self._queue.append(payload)

    def poll(self, now: float) -> list[Any]:
        out = list(self._queue)
        self._queue.clear()
        self.delivered += len(out)
        return out
