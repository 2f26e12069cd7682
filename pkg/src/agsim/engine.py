"""Fixed-step closed-loop scheduler.

Each step advances simulated time by ``dt`` through the same sub-step order:

  0. queued operator input (scripted clicks, live clicks, parameter changes)
  1. camera capture on frame-rate ticks, pushed into the video link
  2. delivered frames ingested by the station (smoothing, pose estimation)
  3. on 20 ms ticks the station emits a command into the command link
  4. delivered commands update the robot's held setpoint; robot integrates
  5. hover servo turns the station's smoothed error into attitude setpoints;
     vehicle inner loop integrates
  6. one telemetry frame appended

Time is carried as an integer step index so ``t = step_index * dt`` holds
exactly.  Every random draw comes from one of three generators seeded as
(seed, fixed label), one per consumer (pixel noise, video link, command
link), so enabling one noise source never shifts another's stream.
"""

import math
from collections import deque
from dataclasses import replace

import numpy as np

from .camera import PixelPoint, project
from .netlink import Channel, DirectChannel, MeasurementMsg
from .perception import observe
from .scenario import COMMAND_PERIOD, Scenario
from .station import CameraView, ClickError, Event, Station, StationParams
from .telemetry import TelemetryFrame
from .uav import ServoError, desired_angles, inner_loop_step, servo_control
from .ugv import ugv_control, ugv_step

RNG_NOISE = 1
RNG_VIDEO = 2
RNG_COMMAND = 3

_TUNABLE_PARAMS = ("arrival_epsilon", "stale_timeout")


def _rng(seed: int, label: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, label]))


class SimClock:
    __slots__ = ("step_index", "dt")

    def __init__(self, dt: float):
        self.step_index = 0
        self.dt = dt

    @property
    def t(self) -> float:
        return self.step_index * self.dt

    def advance(self):
        self.step_index += 1


class Engine:
    """One scenario instance: owns all state, steps strictly sequentially."""

    def __init__(self, scn: Scenario):
        self.scn = scn
        self.ops: deque = deque()
        self.reset()

    def reset(self):
        scn = self.scn
        self.clock = SimClock(scn.dt)
        self.ugv = replace(scn.ugv_init)
        self.uav = replace(scn.uav_init)
        self.station = Station(
            scn.camera,
            scn.ugv,
            StationParams(
                arrival_epsilon=scn.arrival_epsilon,
                stale_timeout=scn.stale_timeout,
                hover_altitude=scn.uav.z_d,
                use_marker_altitude=scn.use_marker_altitude,
                frame_period=1.0 / scn.video_link.rate_hz,
                servo_pixel_units=scn.servo_pixel_units,
            ),
            scn.smoothing,
        )
        self.noise_rng = _rng(scn.noise.seed, RNG_NOISE)
        if scn.video_link.bypass:
            self.video = DirectChannel()
        else:
            self.video = Channel(scn.video_link, _rng(scn.seed, RNG_VIDEO))
        if scn.command_link.bypass:
            self.command = DirectChannel()
        else:
            self.command = Channel(scn.command_link, _rng(scn.seed, RNG_COMMAND))
        self.frame_steps = round(1.0 / scn.video_link.rate_hz / scn.dt)
        self.cmd_steps = round(COMMAND_PERIOD / scn.dt)
        self.frames: list[TelemetryFrame] = []
        self.events: list[Event] = []
        self.servo = ServoError(0.0, 0.0, 0.0, 0.0, stale=True)
        self._held_cmd = (0.0, 0.0)
        self._click_idx = 0

    # -- operator input ------------------------------------------------------

    def queue_click(self, x_px: float, y_px: float, reply=None):
        self.ops.append(("click", PixelPoint(x_px, y_px), reply))

    def queue_set_param(self, name: str, value: float, reply=None):
        self.ops.append(("set_param", (name, value), reply))

    def _do_click(self, pixel: PixelPoint, t: float, reply):
        try:
            wp = self.station.handle_click(pixel, t)
        except ClickError as err:
            self.station.events.append(Event(t, "click_rejected", {"reason": str(err)}))
            if reply is not None:
                reply(False, str(err))
            return
        if reply is not None:
            reply(True, wp)

    def _do_set_param(self, name: str, value, t: float, reply):
        try:
            if name not in _TUNABLE_PARAMS:
                raise ValueError(f"parameter '{name}' is not settable at runtime")
            self.station.params = replace(self.station.params, **{name: float(value)})
        except (ValueError, TypeError) as err:
            if reply is not None:
                reply(False, str(err))
            return
        if reply is not None:
            reply(True, name)

    def _apply_input(self, t: float):
        clicks = self.scn.clicks
        while self._click_idx < len(clicks) and clicks[self._click_idx][0] <= t + 1e-12:
            _, x, y = clicks[self._click_idx]
            self._click_idx += 1
            self._do_click(PixelPoint(x, y), t, None)
        while self.ops:
            kind, payload, reply = self.ops.popleft()
            if kind == "click":
                self._do_click(payload, t, reply)
            elif kind == "set_param":
                self._do_set_param(payload[0], payload[1], t, reply)

    # -- stepping ------------------------------------------------------------

    def _capture(self, t: float):
        scn = self.scn
        obs = observe(
            self.ugv, self.uav, scn.ugv.L, scn.camera, scn.noise, self.noise_rng, t,
            tilted=scn.tilt_projection,
        )
        view = CameraView(self.uav.x, self.uav.y, self.uav.z)
        wp = self.station.waypoint
        wp_px = None
        if wp is not None:
            wp_px = project(
                (wp.ground_x - self.uav.x, wp.ground_y - self.uav.y), self.uav.z, scn.camera
            )
        self.video.send((MeasurementMsg(t, obs), wp_px, view), t)

    def step(self) -> list[Event]:
        t = self.clock.t
        i = self.clock.step_index
        st = self.station
        scn = self.scn

        self._apply_input(t)
        if i % self.frame_steps == 0 and self.uav.z > 0:
            self._capture(t)
        for msg, wp_px, view in self.video.poll(t):
            st.ingest(msg.obs, wp_px, view, t)
        sent = False
        if i % self.cmd_steps == 0:
            cmd = st.command_tick(t)
            if cmd is not None:
                self.command.send(cmd, t)
                sent = True
        for cmd in self.command.poll(t):
            self._held_cmd = ugv_control(cmd.d, cmd.alpha, scn.ugv)
        self.ugv = ugv_step(self.ugv, self._held_cmd[0], self._held_cmd[1], scn.dt, scn.ugv)
        fb = st.servo_feedback(t)
        if fb is not None:
            self.servo = fb
        elif not self.servo.stale:
            self.servo = self.servo._replace(stale=True)
        ux, uy = servo_control(self.servo, scn.uav, max(self.uav.thrust, 1e-3))
        phi_d, theta_d = desired_angles(ux, uy, scn.uav.angle_max)
        self.uav = inner_loop_step(self.uav, phi_d, theta_d, scn.uav, scn.dt)

        new_events = st.drain_events()
        self.events.extend(new_events)
        self.frames.append(self._telemetry(t, sent))
        self.clock.advance()
        return new_events

    def run(self) -> list[TelemetryFrame]:
        """Step through the configured duration; scripted clicks fire on time."""
        for _ in range(round(self.scn.duration / self.scn.dt)):
            self.step()
        return self.frames

    # -- recording -----------------------------------------------------------

    def _telemetry(self, t: float, command_sent: bool) -> TelemetryFrame:
        nan = math.nan
        st = self.station
        g = self.ugv
        a = self.uav
        obs = st.last_obs
        if obs is not None:
            rcx, rcy = obs.rc
            rhx, rhy = obs.rh
            valid = int(obs.valid)
            in_frame = int(obs.in_frame)
        else:
            rcx = rcy = rhx = rhy = nan
            valid = 0
            in_frame = 0
        wp = st.waypoint
        if wp is not None:
            wp_id = wp.waypoint_id
            wgx, wgy = wp.ground_x, wp.ground_y
            if a.z > 0:
                wpx, wpy = project((wgx - a.x, wgy - a.y), a.z, self.scn.camera)
            else:
                wpx = wpy = nan
            hx = g.x + self.scn.ugv.L * math.cos(g.psi)
            hy = g.y + self.scn.ugv.L * math.sin(g.psi)
            head_dist = math.hypot(wgx - hx, wgy - hy)
        else:
            wp_id = 0
            wgx = wgy = wpx = wpy = head_dist = nan
        pose = st.raw_pose
        d_raw = pose.d if pose is not None else nan
        alpha_raw = pose.alpha if pose is not None else nan
        d_smooth = st.ch_d.value if st.ch_d.primed else nan
        alpha_smooth = st.ch_alpha.value if st.ch_alpha.primed else nan
        return TelemetryFrame(
            t,
            g.x,
            g.y,
            g.psi,
            g.u,
            g.r,
            a.x,
            a.y,
            a.z,
            a.vx,
            a.vy,
            a.vz,
            a.phi,
            a.theta,
            a.thrust,
            rcx,
            rcy,
            rhx,
            rhy,
            valid,
            in_frame,
            wp_id,
            wgx,
            wgy,
            wpx,
            wpy,
            d_raw,
            alpha_raw,
            d_smooth,
            alpha_smooth,
            self.servo.ex,
            self.servo.ey,
            head_dist,
            int(command_sent),
        )
