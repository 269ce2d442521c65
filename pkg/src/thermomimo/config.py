"""TOML configuration files and the ``table1`` preset.

A config file is a TOML document with scenario keys at the top level and
an optional ``[sweep]`` table::

    defaults = "table1"
    snr_db = 10
    coding_overhead = 0.2
    noise_dof = 100        # or "inf"

    [sweep]
    variable = "noise_dof"
    start = 1
    stop = 1e6
    num = 61
    spacing = "log"

Keys absent from the file come from the preset.  Unknown keys are errors.
"""

import math
import re
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .channel import ROOM_TEMPERATURE, Scenario
from .exceptions import ConfigError, ThermoMimoError
from .sweep import SweepSpec, SweepVariable

__all__ = ["PRESETS", "RunConfig", "parse_config", "load_config", "build_scenario", "build_sweep_spec"]

PRESETS = {
    "table1": {
        "n_t": 128,
        "n_r": 4,
        "bandwidth": 20e6,
        "symbol_period": None,
        "modulation": "64QAM",
        "snr_db": 10.0,
        "total_signal_power": None,
        "coding_overhead": 0.2,
        "noise_temperature": ROOM_TEMPERATURE,
        "noise_dof": 100.0,
        "noise_pool_temperature": ROOM_TEMPERATURE,
        "channel": "unit_gain",
        "seed": 0,
    },
}

SCENARIO_KEYS = frozenset(PRESETS["table1"])
SWEEP_KEYS = frozenset({"variable", "grid", "start", "stop", "num", "spacing", "outputs"})

_INT_KEYS = {"n_t", "n_r", "seed"}
_STR_KEYS = {"modulation", "channel"}


@dataclass
class RunConfig:
    """Resolved settings: scenario keys plus the raw ``[sweep]`` table."""

    preset: str = "table1"
    settings: dict = field(default_factory=lambda: dict(PRESETS["table1"]))
    sweep: dict = field(default_factory=dict)

    def with_overrides(self, **overrides):
        settings = dict(self.settings)
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig(self.preset, settings, dict(self.sweep))

    def to_dict(self):
        return {"defaults": self.preset, **self.settings, "sweep": dict(self.sweep)}


def _key_line(text, key):
    pattern = re.compile(r"^[ \t]*" + re.escape(key) + r"[ \t]*=", re.MULTILINE)
    m = pattern.search(text)
    if m is None:
        return None
    return text.count("\n", 0, m.start()) + 1


def _coerce(key, value, text):
    line = _key_line(text, key)
    if value is None:
        return None
    if key in _STR_KEYS:
        if not isinstance(value, str):
            raise ConfigError(f"{key} must be a string", line)
        return value
    if key in _INT_KEYS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key} must be an integer", line)
        return value
    if key == "noise_dof" and isinstance(value, str) and value.strip().lower() in ("inf", "infinity"):
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number", line)
    return float(value)


def parse_config(text: str) -> RunConfig:
    """Parse config text, filling unset keys from the selected preset."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        msg = str(exc)
        msg = re.sub(r"\s*\(at line \d+, column \d+\)$", "", msg)
        raise ConfigError(f"invalid TOML: {msg}", getattr(exc, "lineno", None),
                          getattr(exc, "colno", None)) from None

    preset = doc.pop("defaults", "table1")
    if preset not in PRESETS:
        raise ConfigError(f"unknown defaults preset {preset!r}; available: {sorted(PRESETS)}",
                          _key_line(text, "defaults"))
    sweep = doc.pop("sweep", {})
    if not isinstance(sweep, dict):
        raise ConfigError("sweep must be a table", _key_line(text, "sweep"))

    for key in doc:
        if key not in SCENARIO_KEYS:
            raise ConfigError(f"unknown key {key!r}", _key_line(text, key))
    for key in sweep:
        if key not in SWEEP_KEYS:
            raise ConfigError(f"unknown key 'sweep.{key}'", _key_line(text, key))

    settings = dict(PRESETS[preset])
    settings.update({k: _coerce(k, v, text) for k, v in doc.items()})
    return RunConfig(preset, settings, sweep)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    return parse_config(text)


def build_scenario(config: RunConfig) -> Scenario:
    """Turn resolved settings into a :class:`Scenario`.

    An explicit ``total_signal_power`` wins over ``snr_db``.
    """
    s = dict(config.settings)
    snr_db = s.pop("snr_db")
    channel = s.pop("channel")
    try:
        return Scenario.table1(snr_db=float(snr_db), channel_mode=channel, **s)
    except ThermoMimoError as exc:
        raise ConfigError(f"invalid scenario: {exc}") from None
    except TypeError as exc:
        raise ConfigError(f"invalid scenario: {exc}") from None


def build_sweep_spec(scenario: Scenario, sweep: dict, default_outputs=("thermo", "shannon")) -> SweepSpec:
    """Build a :class:`SweepSpec` from a ``[sweep]`` table (or CLI equivalents)."""
    try:
        variable = SweepVariable.parse(sweep.get("variable", "noise_dof"))
        if sweep.get("grid") is not None:
            grid = [float(v) for v in sweep["grid"]]
        else:
            if variable is SweepVariable.NOISE_DOF:
                start, stop, spacing = 1.0, 1e6, "log"
            else:
                start, stop, spacing = 0.0, 2.0, "linear"
            start = float(sweep.get("start", start))
            stop = float(sweep.get("stop", stop))
            num = int(sweep.get("num", 50))
            spacing = sweep.get("spacing", spacing)
            if spacing == "log":
                if start <= 0 or stop <= 0:
                    raise ConfigError("log spacing needs positive start and stop")
                grid = np.logspace(math.log10(start), math.log10(stop), num)
                grid[0], grid[-1] = start, stop
            elif spacing == "linear":
                grid = np.linspace(start, stop, num)
            else:
                raise ConfigError(f"spacing must be 'log' or 'linear', got {spacing!r}")
            grid = grid.tolist()
        outputs = sweep.get("outputs", default_outputs)
        if isinstance(outputs, str):
            outputs = [o.strip() for o in outputs.split(",") if o.strip()]
        return SweepSpec(scenario, variable, tuple(grid), frozenset(outputs))
    except ConfigError:
        raise
    except (ThermoMimoError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid sweep: {exc}") from None
