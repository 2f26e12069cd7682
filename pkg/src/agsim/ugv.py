"""Differential-drive inspection robot: waypoint controller and unicycle model.

The robot carries two tracking markers, one over the axle center and one on
the heading axis ``L`` meters ahead.  The station measures the distance ``d``
from the axle marker to the waypoint and the bearing error ``alpha`` between
the robot heading and the waypoint direction; the control law

    u = K * (d * cos(alpha) - L)
    r = K * d * sin(alpha) / L

drives ``d -> L`` and ``alpha -> 0``, parking the head marker on the waypoint
with the axle ``L`` short of it.  Along-track error then decays as
exp(-K t).  Commands saturate at ``u_max`` / ``r_max`` preserving sign.
"""

import math
from dataclasses import dataclass

from .geometry import clamp, wrap_angle


@dataclass(frozen=True)
class UgvControlParams:
    K: float = 0.1
    L: float = 0.15
    u_max: float = 0.5
    r_max: float = 1.0
    tau_act: float = 0.0

    def __post_init__(self):
        if self.K <= 0:
            raise ValueError("K must be > 0")
        if self.L <= 0:
            raise ValueError("L must be > 0")
        if self.u_max <= 0 or self.r_max <= 0:
            raise ValueError("u_max and r_max must be > 0")
        if self.tau_act < 0:
            raise ValueError("tau_act must be >= 0")


@dataclass
class UgvState:
    x: float = 0.0
    y: float = 0.0
    psi: float = 0.0
    u: float = 0.0
    r: float = 0.0


def ugv_control(d: float, alpha: float, p: UgvControlParams) -> tuple[float, float]:
    """Velocity commands (u, r) for an axle-marker distance d >= 0 and bearing error alpha."""
    u = p.K * (d * math.cos(alpha) - p.L)
    r = p.K * d * math.sin(alpha) / p.L
    return clamp(u, -p.u_max, p.u_max), clamp(r, -p.r_max, p.r_max)


def ugv_step(s: UgvState, u_cmd: float, r_cmd: float, dt: float, p: UgvControlParams) -> UgvState:
    """Advance the unicycle one Euler step under (u_cmd, r_cmd).

    With ``tau_act > 0`` the achieved velocities relax toward the commands
    first order; at zero they are taken instantaneously.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if p.tau_act > 0:
        a = 1.0 - math.exp(-dt / p.tau_act)
        u = s.u + a * (u_cmd - s.u)
        r = s.r + a * (r_cmd - s.r)
    else:
        u = u_cmd
        r = r_cmd
    return UgvState(
        s.x + u * math.cos(s.psi) * dt,
        s.y + u * math.sin(s.psi) * dt,
        wrap_angle(s.psi + r * dt),
        u,
        r,
    )
