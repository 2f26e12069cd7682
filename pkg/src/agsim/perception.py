"""Synthetic marker detection and pose recovery from a single frame.

``observe`` plays the role of the onboard vision pipeline: it projects the
robot's two markers into the image, corrupts the pixels with Gaussian noise,
and reports whether the detection survived (both markers inside the image
bounds, no dropout).  The noise generator is owned by the caller so streams
stay reproducible.

``estimate_pose`` is the station-side inverse: backproject the marker and
waypoint pixels at the current altitude estimate and form

    theta = atan2(y_w - y_rc, x_w - x_rc)      bearing to the waypoint
    beta  = atan2(y_rh - y_rc, x_rh - x_rc)    robot heading
    alpha = wrap(theta - beta)                 in (-pi, pi]
    d     = |waypoint - rc|                    meters

Both atan2 forms are quadrant-correct, so poses behind or beside the robot
need no case analysis.
"""

import math
from typing import NamedTuple

import numpy as np

from .camera import CameraModel, PixelPoint, TrackingLossError, backproject, project
from .geometry import wrap_angle
from .uav import UavState
from .ugv import UgvState


class NoiseModel(NamedTuple):
    pixel_stddev: float = 0.0
    dropout_prob: float = 0.0
    seed: int = 0


class MarkerObservation(NamedTuple):
    t: float
    rc: PixelPoint
    rh: PixelPoint
    in_frame: bool
    valid: bool


class PoseEstimate(NamedTuple):
    d: float
    alpha: float
    theta: float
    beta: float


def check_noise(noise: NoiseModel):
    if noise.pixel_stddev < 0:
        raise ValueError("pixel_stddev must be >= 0")
    if not 0.0 <= noise.dropout_prob < 1.0:
        raise ValueError("dropout_prob must be in [0, 1)")


def _project_tilted(px: float, py: float, uav: UavState, cam: CameraModel) -> PixelPoint | None:
    """Project a ground point through the camera rigidly attached to the tilted body.

    Returns None when the point falls on or behind the camera plane.
    """
    sp, cp = math.sin(uav.phi), math.cos(uav.phi)
    st, ct = math.sin(uav.theta), math.cos(uav.theta)
    ss, cs = math.sin(uav.psi), math.cos(uav.psi)
    dx, dy, dz = px - uav.x, py - uav.y, -uav.z
    # body frame components of the world offset, R = Rz(psi) Ry(theta) Rx(phi)
    bx = cs * ct * dx + ss * ct * dy - st * dz
    by = (cs * st * sp - ss * cp) * dx + (ss * st * sp + cs * cp) * dy + ct * sp * dz
    bz = (cs * st * cp + ss * sp) * dx + (ss * st * cp - cs * sp) * dy + ct * cp * dz
    depth = -bz
    if depth <= 1e-9:
        return None
    return PixelPoint(cam.x0 + cam.gx * bx / depth, cam.y0 + cam.gy * by / depth)


def observe(
    ugv: UgvState,
    uav: UavState,
    marker_gap: float,
    cam: CameraModel,
    noise: NoiseModel,
    rng: np.random.Generator,
    t: float,
    tilted: bool = False,
) -> MarkerObservation:
    """One synthetic detection of the axle and head markers at time t.

    Noise draws happen in a fixed order (rc.x, rc.y, rh.x, rh.y, dropout) and
    only when the corresponding parameter is nonzero, so disabling a noise
    term does not shift the stream of the others.
    """
    if uav.z <= 0:
        raise ValueError("altitude must be > 0")
    hx = ugv.x + marker_gap * math.cos(ugv.psi)
    hy = ugv.y + marker_gap * math.sin(ugv.psi)
    if tilted:
        rc = _project_tilted(ugv.x, ugv.y, uav, cam)
        rh = _project_tilted(hx, hy, uav, cam)
        if rc is None or rh is None:
            far = PixelPoint(math.inf, math.inf)
            return MarkerObservation(t, far, far, False, False)
    else:
        rc = project((ugv.x - uav.x, ugv.y - uav.y), uav.z, cam)
        rh = project((hx - uav.x, hy - uav.y), uav.z, cam)
    if noise.pixel_stddev > 0:
        s = noise.pixel_stddev
        rc = PixelPoint(rc.x + s * rng.standard_normal(), rc.y + s * rng.standard_normal())
        rh = PixelPoint(rh.x + s * rng.standard_normal(), rh.y + s * rng.standard_normal())
    in_frame = cam.in_frame(rc) and cam.in_frame(rh)
    valid = in_frame
    if noise.dropout_prob > 0 and rng.random() < noise.dropout_prob:
        valid = False
    return MarkerObservation(t, rc, rh, in_frame, valid)


def estimate_pose(
    obs: MarkerObservation, waypoint_px: PixelPoint, z: float, cam: CameraModel
) -> PoseEstimate:
    """Distance and bearing errors of the robot relative to a waypoint pixel."""
    rc = backproject(obs.rc, z, cam)
    rh = backproject(obs.rh, z, cam)
    wp = backproject(waypoint_px, z, cam)
    ex, ey = rh.x - rc.x, rh.y - rc.y
    if ex * ex + ey * ey < 1e-24:
        raise TrackingLossError("marker pixels coincide, heading undefined")
    theta = math.atan2(wp.y - rc.y, wp.x - rc.x)
    beta = math.atan2(ey, ex)
    return PoseEstimate(
        math.hypot(wp.x - rc.x, wp.y - rc.y),
        wrap_angle(theta - beta),
        theta,
        beta,
    )
