"""Telemetry frames, CSV persistence, and run summaries.

One frame is appended per engine step.  The CSV form is the reproducibility
contract: floats are written with repr (shortest round-trip form, decimal
point, no locale), missing values as nan, flags as 0/1, and the header row is
exactly FIELDS.  Two runs of the same scenario and seed must produce
byte-identical files.
"""

import math
from typing import Iterable, NamedTuple


class TelemetryFrame(NamedTuple):
    t: float
    ugv_x: float
    ugv_y: float
    ugv_psi: float
    ugv_u: float
    ugv_r: float
    uav_x: float
    uav_y: float
    uav_z: float
    uav_vx: float
    uav_vy: float
    uav_vz: float
    uav_roll: float
    uav_pitch: float
    uav_thrust: float
    rc_px_x: float
    rc_px_y: float
    rh_px_x: float
    rh_px_y: float
    obs_valid: int
    obs_in_frame: int
    wp_id: int
    wp_ground_x: float
    wp_ground_y: float
    wp_px_x: float
    wp_px_y: float
    d_raw: float
    alpha_raw: float
    d_smooth: float
    alpha_smooth: float
    err_x: float
    err_y: float
    head_dist: float
    command_sent: int


FIELDS = TelemetryFrame._fields

_INT_FIELDS = {"obs_valid", "obs_in_frame", "wp_id", "command_sent"}
_INT_INDEXES = tuple(FIELDS.index(f) for f in _INT_FIELDS)


def _format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(frames: Iterable[TelemetryFrame], path):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(FIELDS))
        fh.write("\n")
        for frame in frames:
            fh.write(",".join(map(_format_value, frame)))
            fh.write("\n")


def read_csv(path) -> list[TelemetryFrame]:
    frames = []
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().rstrip("\n")
        if header.split(",") != list(FIELDS):
            raise ValueError(f"unexpected telemetry header in {path}")
        for line in fh:
            parts = line.rstrip("\n").split(",")
            if len(parts) != len(FIELDS):
                raise ValueError(f"malformed telemetry row in {path}")
            values = [float(p) for p in parts]
            for i in _INT_INDEXES:
                values[i] = int(values[i])
            frames.append(TelemetryFrame(*values))
    return frames


def summarize(frames: list[TelemetryFrame], L: float, arrival_epsilon: float) -> dict:
    """Per-waypoint convergence report computed from recorded frames only."""
    waypoints = []
    current = None
    for f in frames:
        if f.wp_id >= 1 and (current is None or f.wp_id != current["waypoint_id"]):
            current = {
                "waypoint_id": f.wp_id,
                "t_set": f.t,
                "t_reached": None,
                "final_d": math.nan,
                "final_alpha": math.nan,
            }
            waypoints.append(current)
        if current is not None and f.wp_id == current["waypoint_id"]:
            if not math.isnan(f.d_smooth):
                current["final_d"] = f.d_smooth
                current["final_alpha"] = f.alpha_smooth
                if current["t_reached"] is None and f.d_smooth <= L + arrival_epsilon:
                    current["t_reached"] = f.t
    max_px = 0.0
    in_frame = 0
    seen = 0
    for f in frames:
        if f.obs_valid:
            r = math.hypot(f.rc_px_x, f.rc_px_y)
            if r > max_px:
                max_px = r
        if not math.isnan(f.rc_px_x):
            seen += 1
            in_frame += f.obs_in_frame
    return {
        "steps": len(frames),
        "duration": frames[-1].t if frames else 0.0,
        "waypoints": waypoints,
        "max_center_offset_px": max_px,
        "in_frame_fraction": in_frame / seen if seen else math.nan,
    }


def format_summary(summary: dict) -> str:
    lines = [
        f"steps: {summary['steps']}",
        f"duration: {summary['duration']:.3f} s",
        f"in-frame fraction: {summary['in_frame_fraction']:.3f}",
        f"max center-marker offset: {summary['max_center_offset_px']:.1f} px",
    ]
    for wp in summary["waypoints"]:
        reached = f"reached {wp['t_reached'] - wp['t_set']:.2f} s after set" if wp["t_reached"] is not None else "not reached"
        alpha_deg = math.degrees(wp["final_alpha"]) if not math.isnan(wp["final_alpha"]) else math.nan
        lines.append(
            f"waypoint {wp['waypoint_id']}: set t={wp['t_set']:.2f} s, {reached}, "
            f"final d={wp['final_d']:.3f} m, final alpha={alpha_deg:.2f} deg"
        )
    return "\n".join(lines)
