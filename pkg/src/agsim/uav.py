"""Quadrotor hover-and-follow: image-based servo loop over simplified dynamics.

The outer loop converts the (smoothed) pixel offset of the robot's center
marker into normalized lateral thrust components through a PD law scaled by
the dynamics inversion factor ``m / U1``:

    u_x = (m / U1) * (K1 * e_x + K2 * de_x)      clamped to [-1, 1]

Those components are realized exactly by the attitude pair

    phi_d   = asin(-u_y)
    theta_d = asin(u_x / cos(phi_d))

with yaw held at zero, both clamped to ``angle_max``.  Translational
acceleration then follows from the standard flat-Earth force balance; the
attitude inner loop is abstracted as a first-order lag ``tau_att`` and the
vertical axis by a critically damped altitude PD setting collective thrust.
Gains K1 = 1.5, K2 = 3 put the closed-loop lateral poles at -0.634 and
-2.366: overdamped, no overshoot.

Integration is semi-implicit Euler (velocity first, then position), which
keeps the hover equilibrium exact: at level attitude and z = z_d the thrust
is m*g and nothing moves.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .camera import CameraModel
from .geometry import clamp


@dataclass(frozen=True)
class UavParams:
    m: float = 1.4
    K1: float = 1.5
    K2: float = 3.0
    tau_att: float = 0.15
    z_d: float = 3.0
    z_min: float = 1.5
    z_max: float = 6.0
    angle_max: float = math.radians(20.0)
    g: float = 9.81
    kp_z: float = 4.0
    kd_z: float = 4.0
    # airframe constants of the modeled vehicle; the simplified inner loop
    # does not consume them but scenarios may record them
    b: float = 1.3e-5
    d: float = 1.0e-9
    J_r: float = 6.0e-7
    L_arm: float = 1.0
    I_x: float = 0.02582
    I_y: float = 0.02616
    I_z: float = 0.04543

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("m must be > 0")
        if self.K1 <= 0 or self.K2 <= 0:
            raise ValueError("K1 and K2 must be > 0")
        if self.tau_att < 0:
            raise ValueError("tau_att must be >= 0")
        if not 0 < self.z_min < self.z_d < self.z_max:
            raise ValueError("altitude band must satisfy 0 < z_min < z_d < z_max")
        if not 0 < self.angle_max < math.pi / 2:
            raise ValueError("angle_max must be in (0, pi/2)")
        if self.g <= 0:
            raise ValueError("g must be > 0")
        if self.kp_z <= 0 or self.kd_z < 0:
            raise ValueError("altitude gains must be kp_z > 0, kd_z >= 0")


@dataclass
class UavState:
    x: float = 0.0
    y: float = 0.0
    z: float = 3.0
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0
    phi: float = 0.0
    theta: float = 0.0
    psi: float = 0.0
    thrust: float = 0.0


class ServoError(NamedTuple):
    """Metric tracking error of the center marker and its rate, camera frame."""

    ex: float
    ey: float
    dex: float
    dey: float
    stale: bool = False


def servo_error(
    level_x: float,
    level_y: float,
    trend_x: float,
    trend_y: float,
    frame_period: float,
    z: float,
    cam: CameraModel,
    pixel_units: bool = False,
) -> ServoError:
    """Turn smoothed pixel level/trend into the servo error and its rate.

    Metric mode (default) backprojects at altitude z so the PD gains are
    altitude independent; ``pixel_units`` keeps the raw pixel scale for
    comparison runs.
    """
    if frame_period <= 0:
        raise ValueError("frame_period must be > 0")
    if z <= 0:
        raise ValueError("altitude must be > 0")
    if pixel_units:
        kx = ky = 1.0
    else:
        kx = z / cam.gx
        ky = z / cam.gy
    return ServoError(level_x * kx, level_y * ky, trend_x * kx / frame_period, trend_y * ky / frame_period)


def servo_control(err: ServoError, p: UavParams, thrust: float) -> tuple[float, float]:
    """Normalized lateral thrust components from the metric servo error."""
    if thrust <= 0:
        raise ValueError("thrust must be > 0")
    s = p.m / thrust
    ux = s * (p.K1 * err.ex + p.K2 * err.dex)
    uy = s * (p.K1 * err.ey + p.K2 * err.dey)
    return clamp(ux, -1.0, 1.0), clamp(uy, -1.0, 1.0)


def desired_angles(ux: float, uy: float, angle_max: float) -> tuple[float, float]:
    """Roll/pitch setpoints realizing the normalized components at zero yaw."""
    phi_d = clamp(math.asin(clamp(-uy, -1.0, 1.0)), -angle_max, angle_max)
    c = math.cos(phi_d)
    theta_d = clamp(math.asin(clamp(ux / c, -1.0, 1.0)), -angle_max, angle_max)
    return phi_d, theta_d


def translational_accel(
    phi: float, theta: float, psi: float, thrust: float, m: float
) -> tuple[float, float]:
    """Horizontal acceleration produced by the tilted collective thrust."""
    sp, cp = math.sin(phi), math.cos(phi)
    st, ct = math.sin(theta), math.cos(theta)
    ss, cs = math.sin(psi), math.cos(psi)
    f = thrust / m
    return (cp * st * cs + sp * ss) * f, (cp * st * ss - sp * cs) * f


def inner_loop_step(s: UavState, phi_d: float, theta_d: float, p: UavParams, dt: float) -> UavState:
    """Advance attitude, thrust and translation one step.

    Attitude relaxes toward the setpoints with the exact exponential decrement
    for ``dt`` (instantaneous when ``tau_att`` is 0), collective thrust comes
    from the altitude PD, and translation integrates semi-implicitly.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if p.tau_att > 0:
        a = 1.0 - math.exp(-dt / p.tau_att)
    else:
        a = 1.0
    phi = s.phi + a * (phi_d - s.phi)
    theta = s.theta + a * (theta_d - s.theta)

    az = p.kp_z * (p.z_d - s.z) - p.kd_z * s.vz
    thrust = p.m * (p.g + az) / (math.cos(phi) * math.cos(theta))
    if thrust < 0.0:
        thrust = 0.0

    ax, ay = translational_accel(phi, theta, s.psi, thrust, p.m)
    avz = thrust * math.cos(phi) * math.cos(theta) / p.m - p.g
    vx = s.vx + ax * dt
    vy = s.vy + ay * dt
    vz = s.vz + avz * dt
    return UavState(
        s.x + vx * dt,
        s.y + vy * dt,
        s.z + vz * dt,
        vx,
        vy,
        vz,
        phi,
        theta,
        s.psi,
        thrust,
    )
