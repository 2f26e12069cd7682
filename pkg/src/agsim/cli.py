"""Command-line front door for headless runs and the live operator service."""

import argparse
import sys
from pathlib import Path

from .engine import Engine
from .scenario import Scenario, ScenarioError, load_scenario_file
from .serve import serve_live
from .telemetry import format_summary, summarize, write_csv


def _parse_endpoint(text: str) -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    if not sep or not host:
        raise ValueError("endpoint must be host:port")
    return host, int(port)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="agsim",
        description="Simulate a hovering quadrotor steering a ground robot to clicked waypoints.",
    )
    parser.add_argument("--scenario", metavar="PATH", help="scenario INI file; omit for built-in defaults")
    parser.add_argument("--out", metavar="CSV", help="write per-step telemetry to this file")
    parser.add_argument("--seed", type=int, metavar="N", help="override the master seed (and the pixel-noise seed with it)")
    parser.add_argument("--duration", type=float, metavar="S", help="override the simulated duration")
    parser.add_argument("--serve", metavar="HOST:PORT", help="serve the operator WebSocket endpoint instead of running headless")
    parser.add_argument("--decimate", type=int, default=20, metavar="N", help="send every Nth frame to consoles (live mode, default 20)")
    parser.add_argument("--pause-on-start", action="store_true", help="start the live engine paused until an operator resumes")
    args = parser.parse_args(argv)

    if args.scenario is not None:
        path = Path(args.scenario)
        if not path.is_file():
            print(f"error: scenario file not found: {path}", file=sys.stderr)
            return 2
        try:
            scn = load_scenario_file(path)
        except ScenarioError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
    else:
        scn = Scenario()

    if args.seed is not None:
        scn.seed = args.seed
        scn.noise = scn.noise._replace(seed=args.seed)
    if args.duration is not None:
        if args.duration < 0:
            print("error: --duration must be >= 0", file=sys.stderr)
            return 2
        scn.duration = args.duration
    if args.decimate < 1:
        print("error: --decimate must be >= 1", file=sys.stderr)
        return 2

    engine = Engine(scn)

    if args.serve is not None:
        try:
            host, port = _parse_endpoint(args.serve)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        try:
            serve_live(engine, host, port, args.decimate, args.pause_on_start)
        finally:
            # interrupt must not lose the recording
            if args.out is not None and engine.frames:
                write_csv(engine.frames, args.out)
        return 0

    frames = engine.run()
    if args.out is not None:
        write_csv(frames, args.out)
    print(format_summary(summarize(frames, scn.ugv.L, scn.arrival_epsilon)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
