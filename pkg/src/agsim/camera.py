"""Pinhole geometry between a down-facing camera and the ground plane.

Conventions used everywhere in this package:

* Pixel coordinates are signed and centered: the optical axis pierces the
  image at ``(x0, y0)`` (default ``(0, 0)``), +x is right on the sensor and
  maps to the +x ground direction, +y likewise.  "In frame" is a separate
  predicate; coordinates themselves are never clamped to the sensor.
* Ground coordinates are meters in the camera's level frame: the offset of
  a ground-plane point from the point directly below the camera.
* Altitude ``z`` is the camera height above the ground plane, meters, > 0.

The per-axis pixel gain is ``gx = focal_length / pixel_pitch_x`` (pixels),
so a ground offset of ``X`` meters seen from ``z`` meters up lands at
``x0 + gx * X / z`` pixels.  Backprojection inverts that relation at a known
altitude; with two markers a known distance apart the altitude itself can be
recovered from their pixel separation.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple


class PixelPoint(NamedTuple):
    x: float
    y: float


class GroundPoint(NamedTuple):
    x: float
    y: float


class TrackingLossError(ValueError):
    """Raised when marker geometry degenerates and estimation is impossible."""


@dataclass(frozen=True)
class CameraModel:
    """Intrinsics of the down-facing camera.

    Defaults model a 4 mm lens on an 8 um-pitch sensor (gain 500 px) with a
    640x480 active area.
    """

    focal_length: float = 0.004
    pixel_pitch_x: float = 8.0e-6
    pixel_pitch_y: float = 8.0e-6
    x0: float = 0.0
    y0: float = 0.0
    image_width: int = 640
    image_height: int = 480

    def __post_init__(self):
        if self.focal_length <= 0:
            raise ValueError("focal_length must be > 0")
        if self.pixel_pitch_x <= 0 or self.pixel_pitch_y <= 0:
            raise ValueError("pixel pitch must be > 0")
        if self.image_width <= 0 or self.image_height <= 0:
            raise ValueError("image dimensions must be > 0")

    @property
    def gx(self) -> float:
        return self.focal_length / self.pixel_pitch_x

    @property
    def gy(self) -> float:
        return self.focal_length / self.pixel_pitch_y

    def in_frame(self, p: PixelPoint) -> bool:
        """True when the pixel lies on the centered sensor rectangle."""
        return (
            abs(p.x - self.x0) <= self.image_width / 2.0
            and abs(p.y - self.y0) <= self.image_height / 2.0
        )

    @classmethod
    def from_gains(cls, gx: float, gy: float | None = None, **kw) -> "CameraModel":
        """Build a model with the given pixel gains on a 1 um reference pitch."""
        if gy is None:
            gy = gx
        f = gx * 1.0e-6
        return cls(focal_length=f, pixel_pitch_x=1.0e-6, pixel_pitch_y=f / gy, **kw)


def project(p: GroundPoint, z: float, cam: CameraModel) -> PixelPoint:
    """Map a ground offset (meters) to a sensor position (pixels) from altitude z."""
    if z <= 0:
        raise ValueError("altitude must be > 0")
    return PixelPoint(cam.x0 + cam.gx * p[0] / z, cam.y0 + cam.gy * p[1] / z)


def backproject(p: PixelPoint, z: float, cam: CameraModel) -> GroundPoint:
    """Map a sensor position (pixels) back to a ground offset (meters)."""
    if z <= 0:
        raise ValueError("altitude must be > 0")
    return GroundPoint((p[0] - cam.x0) * z / cam.gx, (p[1] - cam.y0) * z / cam.gy)


def estimate_altitude(rc: PixelPoint, rh: PixelPoint, gap: float, cam: CameraModel) -> float:
    """Recover altitude from the pixel separation of two markers ``gap`` meters apart.

    Separation is measured anisotropically (each axis scaled by its own gain)
    so the estimate stays exact when gx != gy.  Coincident marker pixels carry
    no scale information and raise :class:`TrackingLossError`.
    """
    if gap <= 0:
        raise ValueError("marker gap must be > 0")
    dx = (rh[0] - rc[0]) / cam.gx
    dy = (rh[1] - rc[1]) / cam.gy
    sep = math.hypot(dx, dy)
    if sep < 1e-12:
        raise TrackingLossError("marker pixels coincide, cannot estimate altitude")
    return gap / sep
