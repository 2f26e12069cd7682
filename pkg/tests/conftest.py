from pathlib import Path

from agsim.engine import Engine
from agsim.scenario import load_scenario

REPO_ROOT = Path(__file__).resolve().parent.parent
SCENARIO_DIR = REPO_ROOT / "scenarios"


def run_text(text: str):
    """Load inline scenario text, run it to completion, return (engine, frames)."""
    engine = Engine(load_scenario(text))
    frames = engine.run()
    return engine, frames


def moving_average(values, window: int):
    out = []
    acc = 0.0
    for i, v in enumerate(values):
        acc += v
        if i >= window:
            acc -= values[i - window]
            out.append(acc / window)
        elif i == window - 1:
            out.append(acc / window)
    return out
