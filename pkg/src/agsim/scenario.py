"""Scenario files: flat INI text mapped onto the module parameter sets.

Sections and keys (all optional; an empty file is the default mission):

    [engine]       duration=20.0  dt=0.001  seed=0
    [camera]       focal_length=0.004  pixel_pitch_x=8e-6  pixel_pitch_y=8e-6
                   X0=0.0  Y0=0.0  image_width=640  image_height=480
    [perception]   pixel_stddev=0.0  dropout_prob=0.0  seed=<engine seed>
                   tilt_projection=false
    [smoothing]    gamma=0.6  lambda=0.3  plus per-channel overrides
                   gamma_d lambda_d gamma_alpha lambda_alpha gamma_x lambda_x
                   gamma_y lambda_y gamma_altitude lambda_altitude
    [ugv]          x=-8.0  y=-8.0  psi=0.0  K=0.1  L=0.15  u_max=0.5
                   r_max=1.0  tau_act=0.0
    [uav]          x=-6.0  y=-9.0  z=3.0  m=1.4  K1=1.5  K2=3.0  tau_att=0.15
                   z_d=3.0  z_min=1.5  z_max=6.0  angle_max=0.349066  g=9.81
                   kp_z=4.0  kd_z=4.0  servo_error_units=metric
                   b=1.3e-5  d=1e-9  J_r=6e-7  L_arm=1.0
                   I_x=0.02582  I_y=0.02616  I_z=0.04543
    [video_link]   latency_mean=0.08  latency_jitter=0.0  loss_prob=0.0
                   rate_hz=25.0  bypass=false
    [command_link] latency_mean=0.0  latency_jitter=0.0  loss_prob=0.0
                   bypass=false    (rate is fixed at 50 Hz)
    [station]      arrival_epsilon=0.05  stale_timeout=0.5
                   altitude_source=truth   (truth | marker)
    [clicks]       schedule=          multiline, one "t x_px y_px" per line

Units are SI throughout (seconds, meters, radians); pixels where noted.
Unknown sections or keys are rejected, as is any dt that does not evenly
divide both the 20 ms command period and the camera frame period.
"""

import math
from configparser import ConfigParser, Error as ConfigParserError
from dataclasses import dataclass, field

from .camera import CameraModel
from .netlink import ChannelParams
from .perception import NoiseModel, check_noise
from .uav import UavParams, UavState
from .ugv import UgvControlParams, UgvState

COMMAND_PERIOD = 0.02
DES_CHANNELS = ("d", "alpha", "x", "y", "altitude")


class ScenarioError(ValueError):
    """Scenario text that cannot become a valid configuration."""


@dataclass
class Scenario:
    duration: float = 20.0
    dt: float = 0.001
    seed: int = 0
    camera: CameraModel = field(default_factory=CameraModel)
    noise: NoiseModel = field(default_factory=NoiseModel)
    tilt_projection: bool = False
    smoothing: dict = field(default_factory=dict)
    ugv_init: UgvState = field(default_factory=lambda: UgvState(-8.0, -8.0, 0.0))
    ugv: UgvControlParams = field(default_factory=UgvControlParams)
    uav_init: UavState = field(default_factory=lambda: UavState(-6.0, -9.0, 3.0))
    uav: UavParams = field(default_factory=UavParams)
    servo_pixel_units: bool = False
    video_link: ChannelParams = field(default_factory=lambda: ChannelParams(0.08, 0.0, 0.0, 25.0))
    command_link: ChannelParams = field(default_factory=lambda: ChannelParams(0.0, 0.0, 0.0, 50.0))
    arrival_epsilon: float = 0.05
    stale_timeout: float = 0.5
    use_marker_altitude: bool = False
    clicks: tuple = ()

    def __post_init__(self):
        if not self.smoothing:
            self.smoothing = {ch: (0.6, 0.3) for ch in DES_CHANNELS}
        if self.uav_init.thrust == 0.0:
            self.uav_init.thrust = self.uav.m * self.uav.g


_SCHEMA = {
    "engine": {"duration", "dt", "seed"},
    "camera": {
        "focal_length",
        "pixel_pitch_x",
        "pixel_pitch_y",
        "X0",
        "Y0",
        "image_width",
        "image_height",
    },
    "perception": {"pixel_stddev", "dropout_prob", "seed", "tilt_projection"},
    "smoothing": {"gamma", "lambda"}
    | {f"gamma_{c}" for c in DES_CHANNELS}
    | {f"lambda_{c}" for c in DES_CHANNELS},
    "ugv": {"x", "y", "psi", "K", "L", "u_max", "r_max", "tau_act"},
    "uav": {
        "x",
        "y",
        "z",
        "m",
        "K1",
        "K2",
        "tau_att",
        "z_d",
        "z_min",
        "z_max",
        "angle_max",
        "g",
        "kp_z",
        "kd_z",
        "servo_error_units",
        "b",
        "d",
        "J_r",
        "L_arm",
        "I_x",
        "I_y",
        "I_z",
    },
    "video_link": {"latency_mean", "latency_jitter", "loss_prob", "rate_hz", "bypass"},
    "command_link": {"latency_mean", "latency_jitter", "loss_prob", "bypass"},
    "station": {"arrival_epsilon", "stale_timeout", "altitude_source"},
    "clicks": {"schedule"},
}

_BOOL_WORDS = {"true": True, "yes": True, "on": True, "1": True,
               "false": False, "no": False, "off": False, "0": False}


class _Section:
    """Typed accessors over one raw section with context-carrying errors."""

    def __init__(self, name: str, raw: dict):
        self.name = name
        self.raw = raw

    def _get(self, key, default, conv, kind):
        text = self.raw.get(key)
        if text is None:
            return default
        try:
            return conv(text)
        except ValueError:
            raise ScenarioError(f"[{self.name}] {key}: expected {kind}, got '{text}'") from None

    def real(self, key, default):
        def conv(text):
            v = float(text)
            if not math.isfinite(v):
                raise ValueError
            return v

        return self._get(key, default, conv, "a finite number")

    def integer(self, key, default):
        return self._get(key, default, int, "an integer")

    def boolean(self, key, default):
        def conv(text):
            try:
                return _BOOL_WORDS[text.strip().lower()]
            except KeyError:
                raise ValueError from None

        return self._get(key, default, conv, "a boolean")

    def choice(self, key, default, options):
        def conv(text):
            v = text.strip().lower()
            if v not in options:
                raise ValueError
            return v

        return self._get(key, default, conv, "one of " + "/".join(sorted(options)))


def _parse_sections(text: str) -> dict[str, _Section]:
    parser = ConfigParser(interpolation=None, strict=True)
    parser.optionxform = str  # keys like K, K1, X0 are case-sensitive
    try:
        parser.read_string(text)
    except ConfigParserError as err:
        raise ScenarioError(f"cannot parse scenario: {err}") from None
    sections: dict[str, _Section] = {}
    for name in parser.sections():
        if name not in _SCHEMA:
            raise ScenarioError(f"unknown section [{name}]")
        allowed = _SCHEMA[name]
        raw = dict(parser.items(name))
        for key in raw:
            if key not in allowed:
                raise ScenarioError(f"unknown key '{key}' in section [{name}]")
        sections[name] = _Section(name, raw)
    for name in _SCHEMA:
        sections.setdefault(name, _Section(name, {}))
    return sections


def _parse_clicks(text: str) -> tuple:
    clicks = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ScenarioError(f"[clicks] schedule line {lineno}: expected 't x_px y_px', got '{line}'")
        try:
            t, x, y = (float(p) for p in parts)
        except ValueError:
            raise ScenarioError(f"[clicks] schedule line {lineno}: non-numeric value in '{line}'") from None
        if not (math.isfinite(t) and math.isfinite(x) and math.isfinite(y)) or t < 0:
            raise ScenarioError(f"[clicks] schedule line {lineno}: times must be finite and >= 0")
        clicks.append((t, x, y))
    clicks.sort(key=lambda c: c[0])
    return tuple(clicks)


def _build(ctor, section: str, /, **kw):
    try:
        return ctor(**kw)
    except ValueError as err:
        raise ScenarioError(f"[{section}] {err}") from None


def _check_period(name: str, period: float, dt: float):
    steps = round(period / dt)
    if steps < 1 or abs(steps * dt - period) > 1e-9 * max(1.0, period):
        raise ScenarioError(f"dt={dt!r} does not divide the {name} period {period!r}")


def load_scenario(text: str) -> Scenario:
    """Parse scenario text into a validated Scenario (empty text = defaults)."""
    sec = _parse_sections(text)

    eng = sec["engine"]
    duration = eng.real("duration", 20.0)
    dt = eng.real("dt", 0.001)
    seed = eng.integer("seed", 0)
    if duration < 0:
        raise ScenarioError("[engine] duration must be >= 0")
    if dt <= 0:
        raise ScenarioError("[engine] dt must be > 0")

    c = sec["camera"]
    camera = _build(
        CameraModel,
        "camera",
        focal_length=c.real("focal_length", 0.004),
        pixel_pitch_x=c.real("pixel_pitch_x", 8.0e-6),
        pixel_pitch_y=c.real("pixel_pitch_y", 8.0e-6),
        x0=c.real("X0", 0.0),
        y0=c.real("Y0", 0.0),
        image_width=c.integer("image_width", 640),
        image_height=c.integer("image_height", 480),
    )

    p = sec["perception"]
    noise = NoiseModel(
        pixel_stddev=p.real("pixel_stddev", 0.0),
        dropout_prob=p.real("dropout_prob", 0.0),
        seed=p.integer("seed", seed),
    )
    try:
        check_noise(noise)
    except ValueError as err:
        raise ScenarioError(f"[perception] {err}") from None
    tilt_projection = p.boolean("tilt_projection", False)

    s = sec["smoothing"]
    gamma = s.real("gamma", 0.6)
    lam = s.real("lambda", 0.3)
    smoothing = {}
    for ch in DES_CHANNELS:
        g = s.real(f"gamma_{ch}", gamma)
        l = s.real(f"lambda_{ch}", lam)
        for label, v in ((f"gamma_{ch}", g), (f"lambda_{ch}", l)):
            if not 0.0 <= v <= 1.0:
                raise ScenarioError(f"[smoothing] {label} must be in [0, 1]")
        smoothing[ch] = (g, l)

    u = sec["ugv"]
    ugv_init = UgvState(u.real("x", -8.0), u.real("y", -8.0), u.real("psi", 0.0))
    ugv = _build(
        UgvControlParams,
        "ugv",
        K=u.real("K", 0.1),
        L=u.real("L", 0.15),
        u_max=u.real("u_max", 0.5),
        r_max=u.real("r_max", 1.0),
        tau_act=u.real("tau_act", 0.0),
    )

    a = sec["uav"]
    uav = _build(
        UavParams,
        "uav",
        m=a.real("m", 1.4),
        K1=a.real("K1", 1.5),
        K2=a.real("K2", 3.0),
        tau_att=a.real("tau_att", 0.15),
        z_d=a.real("z_d", 3.0),
        z_min=a.real("z_min", 1.5),
        z_max=a.real("z_max", 6.0),
        angle_max=a.real("angle_max", math.radians(20.0)),
        g=a.real("g", 9.81),
        kp_z=a.real("kp_z", 4.0),
        kd_z=a.real("kd_z", 4.0),
        b=a.real("b", 1.3e-5),
        d=a.real("d", 1.0e-9),
        J_r=a.real("J_r", 6.0e-7),
        L_arm=a.real("L_arm", 1.0),
        I_x=a.real("I_x", 0.02582),
        I_y=a.real("I_y", 0.02616),
        I_z=a.real("I_z", 0.04543),
    )
    uav_z = a.real("z", 3.0)
    if uav_z <= 0:
        raise ScenarioError("[uav] z must be > 0")
    uav_init = UavState(a.real("x", -6.0), a.real("y", -9.0), uav_z, thrust=uav.m * uav.g)
    servo_pixel_units = a.choice("servo_error_units", "metric", {"metric", "pixel"}) == "pixel"

    def link(section: str, rate_default: float | None) -> ChannelParams:
        ln = sec[section]
        rate = ln.real("rate_hz", rate_default) if rate_default is not None else 50.0
        return _build(
            ChannelParams,
            section,
            latency_mean=ln.real("latency_mean", 0.08 if section == "video_link" else 0.0),
            latency_jitter=ln.real("latency_jitter", 0.0),
            loss_prob=ln.real("loss_prob", 0.0),
            rate_hz=rate,
            bypass=ln.boolean("bypass", False),
        )

    video_link = link("video_link", 25.0)
    command_link = link("command_link", None)

    st = sec["station"]
    arrival_epsilon = st.real("arrival_epsilon", 0.05)
    stale_timeout = st.real("stale_timeout", 0.5)
    if arrival_epsilon <= 0:
        raise ScenarioError("[station] arrival_epsilon must be > 0")
    if stale_timeout <= 0:
        raise ScenarioError("[station] stale_timeout must be > 0")
    use_marker_altitude = st.choice("altitude_source", "truth", {"truth", "marker"}) == "marker"

    clicks = _parse_clicks(sec["clicks"].raw.get("schedule", ""))

    _check_period("command", COMMAND_PERIOD, dt)
    _check_period("camera frame", 1.0 / video_link.rate_hz, dt)

    return Scenario(
        duration=duration,
        dt=dt,
        seed=seed,
        camera=camera,
        noise=noise,
        tilt_projection=tilt_projection,
        smoothing=smoothing,
        ugv_init=ugv_init,
        ugv=ugv,
        uav_init=uav_init,
        uav=uav,
        servo_pixel_units=servo_pixel_units,
        video_link=video_link,
        command_link=command_link,
        arrival_epsilon=arrival_epsilon,
        stale_timeout=stale_timeout,
        use_marker_altitude=use_marker_altitude,
        clicks=clicks,
    )


def load_scenario_file(path) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ScenarioError(f"cannot read scenario file {path}: {err.strerror}") from None
    return load_scenario(text)
