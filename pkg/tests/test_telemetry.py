import math

import pytest

from agsim.telemetry import FIELDS, TelemetryFrame, read_csv, summarize, write_csv

from conftest import run_text

SHORT = """
[engine]
duration = 2
dt = 0.002
seed = 0
[uav]
x = 0.0
y = 0.0
z = 3.0
[ugv]
x = 0.3
y = 0.0
psi = 0.0
[video_link]
latency_mean = 0.0
[command_link]
latency_mean = 0.0
[clicks]
schedule = 0.5 100 0
"""


def test_field_count_and_names():
    assert len(FIELDS) == 34
    assert FIELDS[0] == "t"
    assert "command_sent" in FIELDS
    assert "d_smooth" in FIELDS and "alpha_smooth" in FIELDS


def test_csv_roundtrip_exact(tmp_path):
    _, frames = run_text(SHORT)
    path = tmp_path / "run.csv"
    write_csv(frames, path)
    back = read_csv(path)
    assert len(back) == len(frames)
    for a, b in zip(frames, back):
        for name, va, vb in zip(FIELDS, a, b):
            if isinstance(va, float) and math.isnan(va):
                assert math.isnan(vb), name
            else:
                assert va == vb, name  # repr round-trips floats exactly


def test_csv_header_matches_fields(tmp_path):
    _, frames = run_text(SHORT)
    path = tmp_path / "run.csv"
    write_csv(frames, path)
    header = path.read_text().splitlines()[0]
    assert header == ",".join(FIELDS)


def test_csv_bytes_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(run_text(SHORT)[1], p1)
    write_csv(run_text(SHORT)[1], p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_summary_reports_reached_waypoint():
    _, frames = run_text(SHORT.replace("duration = 2", "duration = 12").replace("schedule = 0.5 100 0", "schedule = 0.5 33.333333333333336 0"))
    s = summarize(frames, 0.15, 0.05)
    assert s["steps"] == len(frames)
    assert len(s["waypoints"]) == 1
    wp = s["waypoints"][0]
    assert wp["waypoint_id"] == 1
    assert wp["t_set"] == pytest.approx(0.5, abs=0.01)
    assert wp["t_reached"] is not None
    assert wp["final_d"] <= 0.2


def test_summary_empty_history():
    s = summarize([], 0.15, 0.05)
    assert s["steps"] == 0
    assert s["waypoints"] == []


def test_summary_recomputable_from_csv(tmp_path):
    _, frames = run_text(SHORT)
    path = tmp_path / "run.csv"
    write_csv(frames, path)
    assert summarize(read_csv(path), 0.15, 0.05) == summarize(frames, 0.15, 0.05)
