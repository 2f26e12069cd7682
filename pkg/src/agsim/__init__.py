"""Software-in-the-loop simulator of a quadrotor hovering over a small ground
robot, steering it to operator-clicked waypoints through a simulated camera
and radio links.

The public surface is intentionally small:

* :class:`agsim.camera.CameraModel` and the projection helpers,
* :func:`agsim.scenario.load_scenario` for INI scenario files,
* :class:`agsim.engine.Engine` to run a scenario,
* :mod:`agsim.cli` / the ``agsim`` console script as the front door.
"""

from .camera import CameraModel, GroundPoint, PixelPoint, backproject, project
from .engine import Engine
from .scenario import Scenario, ScenarioError, load_scenario, load_scenario_file

__all__ = [
    "CameraModel",
    "PixelPoint",
    "GroundPoint",
    "project",
    "backproject",
    "Scenario",
    "ScenarioError",
    "load_scenario",
    "load_scenario_file",
    "Engine",
]

__version__ = "0.1.0"
