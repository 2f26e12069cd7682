"""Ground station mission logic: clicks become waypoints, frames become commands.

The station never sees vehicle truth.  Its inputs are marker observations
(pixels) arriving over the video link together with the capture-time camera
context, and operator clicks on the displayed frame.  From those it keeps:

* smoothed center-marker pixel channels feeding the hover servo,
* the active waypoint, frozen in world coordinates at click time by
  backprojecting the clicked pixel through the current altitude estimate,
* smoothed distance/bearing-error channels feeding the robot commands.

Altitude for backprojection is, in order of preference: the smoothed
marker-separation estimate (when enabled), the capture-time altitude carried
with the frame, or the nominal hover altitude before any frame arrived.

A click restarts the distance and bearing channels from the latest valid
detection so each leg's transient starts crisp instead of blending into the
previous leg's tail.  Commands stop when the pose has gone stale (no valid
detection for ``stale_timeout``); the robot then coasts on its last command.
"""

from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .camera import CameraModel, PixelPoint, TrackingLossError, backproject, estimate_altitude
from .geometry import wrap_angle
from .netlink import CommandMsg
from .perception import MarkerObservation, PoseEstimate, estimate_pose
from .smoothing import DesChannel
from .uav import ServoError, servo_error
from .ugv import UgvControlParams


class ClickError(ValueError):
    """Operator click that cannot become a waypoint."""


class CameraView(NamedTuple):
    """Capture-time context of a frame: camera position and true altitude."""

    uav_x: float
    uav_y: float
    altitude: float


@dataclass(frozen=True)
class WaypointMsg:
    waypoint_id: int
    pixel: PixelPoint
    ground_x: float
    ground_y: float
    t_set: float


class Event(NamedTuple):
    t: float
    kind: str
    data: dict


@dataclass(frozen=True)
class StationParams:
    arrival_epsilon: float = 0.05
    stale_timeout: float = 0.5
    hover_altitude: float = 3.0
    use_marker_altitude: bool = False
    frame_period: float = 0.04
    servo_pixel_units: bool = False

    def __post_init__(self):
        if self.arrival_epsilon <= 0:
            raise ValueError("arrival_epsilon must be > 0")
        if self.stale_timeout <= 0:
            raise ValueError("stale_timeout must be > 0")
        if self.hover_altitude <= 0:
            raise ValueError("hover_altitude must be > 0")
        if self.frame_period <= 0:
            raise ValueError("frame_period must be > 0")


def waypoint_reached(d: float, p: UgvControlParams, epsilon: float) -> bool:
    """Arrival test on the smoothed axle-to-waypoint distance, boundary inclusive."""
    return d <= p.L + epsilon


class Station:
    def __init__(
        self,
        cam: CameraModel,
        ugv_params: UgvControlParams,
        params: StationParams,
        factors: Mapping[str, tuple[float, float]],
    ):
        self.cam = cam
        self.ugv_params = ugv_params
        self.params = params
        self.ch_d = DesChannel(*factors["d"])
        self.ch_alpha = DesChannel(*factors["alpha"], angular=True)
        self.ch_x = DesChannel(*factors["x"])
        self.ch_y = DesChannel(*factors["y"])
        self.ch_alt = DesChannel(*factors["altitude"])
        self.waypoint: WaypointMsg | None = None
        self.next_waypoint_id = 1
        self.last_obs: MarkerObservation | None = None
        self.last_view: CameraView | None = None
        self.last_valid_t = -float("inf")
        self.raw_pose: PoseEstimate | None = None
        self.events: list[Event] = []
        self._reached_notified = False
        self._in_frame = True
        self._stale_evented = False

    # -- state queries ------------------------------------------------------

    def altitude(self) -> float:
        if self.params.use_marker_altitude and self.ch_alt.primed:
            return self.ch_alt.value
        if not self.params.use_marker_altitude and self.last_view is not None:
            return self.last_view.altitude
        return self.params.hover_altitude

    def pose_fresh(self, now: float) -> bool:
        return now - self.last_valid_t <= self.params.stale_timeout

    def drain_events(self) -> list[Event]:
        out = self.events
        self.events = []
        return out

    # -- inputs -------------------------------------------------------------

    def ingest(self, obs: MarkerObservation, wp_px: PixelPoint | None, view: CameraView, now: float):
        """Absorb one delivered frame captured under ``view``."""
        self.last_view = view
        self.last_obs = obs
        if not obs.in_frame and self._in_frame:
            self.events.append(Event(now, "frame_exit", {}))
        self._in_frame = obs.in_frame
        if not obs.valid:
            return
        self.last_valid_t = now
        self._stale_evented = False
        if self.params.use_marker_altitude:
            try:
                self.ch_alt.feed(estimate_altitude(obs.rc, obs.rh, self.ugv_params.L, self.cam))
            except TrackingLossError:
                return
        z = self.altitude()
        self.ch_x.feed(obs.rc.x)
        self.ch_y.feed(obs.rc.y)
        if self.waypoint is None or wp_px is None:
            return
        try:
            pose = estimate_pose(obs, wp_px, z, self.cam)
        except TrackingLossError:
            return
        self.raw_pose = pose
        self.ch_d.feed(pose.d)
        self.ch_alpha.feed(pose.alpha)
        if (
            not self._reached_notified
            and self.ch_d.primed
            and waypoint_reached(self.ch_d.value, self.ugv_params, self.params.arrival_epsilon)
        ):
            self._reached_notified = True
            self.events.append(
                Event(now, "waypoint_reached", {"waypoint_id": self.waypoint.waypoint_id, "d": self.ch_d.value})
            )

    def handle_click(self, pixel: PixelPoint, now: float) -> WaypointMsg:
        """Turn a click on the displayed frame into the new active waypoint."""
        if self.last_view is None:
            raise ClickError("no video frame received yet")
        if not self.cam.in_frame(pixel):
            raise ClickError("click outside the camera frame")
        z = self.altitude()
        gx, gy = backproject(pixel, z, self.cam)
        wp = WaypointMsg(
            self.next_waypoint_id,
            pixel,
            self.last_view.uav_x + gx,
            self.last_view.uav_y + gy,
            now,
        )
        self.next_waypoint_id += 1
        self.waypoint = wp
        self._reached_notified = False
        self.raw_pose = None
        self.ch_d.reset()
        self.ch_alpha.reset()
        if self.last_obs is not None and self.last_obs.valid:
            try:
                pose = estimate_pose(self.last_obs, pixel, z, self.cam)
            except TrackingLossError:
                pose = None
            if pose is not None:
                self.raw_pose = pose
                self.ch_d.reseed(pose.d)
                self.ch_alpha.reseed(pose.alpha)
        self.events.append(
            Event(
                now,
                "waypoint_set",
                {
                    "waypoint_id": wp.waypoint_id,
                    "pixel_x": pixel.x,
                    "pixel_y": pixel.y,
                    "ground_x": wp.ground_x,
                    "ground_y": wp.ground_y,
                },
            )
        )
        return wp

    # -- outputs ------------------------------------------------------------

    def command_tick(self, now: float) -> CommandMsg | None:
        """Command emission attempt; None when there is nothing safe to send."""
        if self.waypoint is None or not self.ch_d.primed:
            return None
        if not self.pose_fresh(now):
            if not self._stale_evented:
                self._stale_evented = True
                self.events.append(Event(now, "stale_pose", {}))
            return None
        d = self.ch_d.value
        if d < 0.0:
            d = 0.0
        return CommandMsg(now, d, wrap_angle(self.ch_alpha.value), self.waypoint.waypoint_id)

    def servo_feedback(self, now: float) -> ServoError | None:
        """Smoothed center-marker error for the hover servo; None when unusable."""
        if not self.ch_x.primed or not self.pose_fresh(now):
            return None
        return servo_error(
            self.ch_x.value,
            self.ch_y.value,
            self.ch_x.trend,
            self.ch_y.trend,
            self.params.frame_period,
            self.altitude(),
            self.cam,
            self.params.servo_pixel_units,
        )
