"""
Scenario configuration in a flat ``key = value`` text format.

Grammar (one item per line)::

    # comment            ignored, as are blank lines and text after " #"
    key = value          top-level scenario field
    [sweep]              starts the optional sweep section
    axis = gamma         one of: gamma, T, g
    values = 0, 0.2, 1   comma-separated numbers

Top-level keys: name, mu0, g0, g, gamma, N (an integer, or ``inf`` for the
thermodynamic limit), fock_dim (``auto`` or an integer), couple_b, T,
initial (``e1``..``e4`` or ``e1:theta=0.5``), t_max, n_points, alpha, k_max,
dt (``auto`` or a number), trace_tol, mode, epsilon, leakage_tol, output.
"""

from dataclasses import dataclass, field, fields, replace

import numpy as np

from ..model import ModelParams
from ..propagator import MODES, PropagatorConfig
from ..states import InitialState
from ..thermal import DEFAULT_EPSILON

SWEEP_AXES = ("gamma", "T", "g")


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the line and field."""


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "scenario"
    mu0: float = 2.0
    g0: float = 1.0
    g: float = 1.0
    gamma: float = 0.6
    N: int | None = None
    fock_dim: int | None = None
    couple_b: bool = False
    T: float = 1.0
    initial: InitialState = InitialState("e1")
    t_max: float = 25.0
    n_points: int = 500
    alpha: float = 0.0
    k_max: int = 20
    dt: float | None = None
    trace_tol: float = 1e-12
    mode: str = "laguerre"
    epsilon: float = DEFAULT_EPSILON
    leakage_tol: float = 1e-8
    output: str = "out"
    sweep_axis: str | None = None
    sweep_values: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.t_max > 0:
            raise ConfigError(f"field 't_max': must be > 0, got {self.t_max}")
        if self.n_points < 2:
            raise ConfigError(f"field 'n_points': must be >= 2, got {self.n_points}")
        if self.T < 0:
            raise ConfigError(f"field 'T': must be >= 0, got {self.T}")
        if self.mode not in MODES:
            raise ConfigError(f"field 'mode': must be one of {MODES}, got {self.mode!r}")
        if self.sweep_axis is not None:
            if self.sweep_axis not in SWEEP_AXES:
                raise ConfigError(f"field 'axis': must be one of {SWEEP_AXES}")
            if not self.sweep_values:
                raise ConfigError("field 'values': sweep value list is empty")

    def t_grid(self):
        return np.linspace(0.0, self.t_max, self.n_points)

    def propagator(self):
        return PropagatorConfig(alpha=self.alpha, k_max=self.k_max, dt=self.dt,
                                trace_tol=self.trace_tol, mode=self.mode)

    def points(self):
        """Sweep points as (value, ScenarioConfig without sweep) pairs."""
        if self.sweep_axis is None:
            return [(None, self)]
        base = replace(self, sweep_axis=None, sweep_values=())
        return [(v, replace(base, **{self.sweep_axis: v})) for v in self.sweep_values]

    def model_params(self):
        return ModelParams(mu0=self.mu0, g0=self.g0, g=self.g, gamma=self.gamma, N=self.N,
                           fock_dim=self.fock_dim, couple_b=self.couple_b)

    def to_text(self):
        """Serialize to the config grammar; ``parse_config(cfg.to_text()) == cfg``."""
        lines = []
        for f in fields(self):
            if f.name in ("sweep_axis", "sweep_values"):
                continue
            lines.append(f"{f.name} = {_format_value(f.name, getattr(self, f.name))}")
        if self.sweep_axis is not None:
            lines += ["", "[sweep]", f"axis = {self.sweep_axis}",
                      "values = " + ", ".join(repr(float(v)) for v in self.sweep_values)]
        return "\n".join(lines) + "\n"


def _format_value(key, value):
    if value is None:
        return "inf" if key == "N" else "auto"
    if isinstance(value, InitialState):
        return value.label() if value.theta is None else f"{value.base}:theta={value.theta!r}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_bool(s):
    low = s.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _parse_optional_int(s, none_words):
    return None if s.lower() in none_words else int(s)


def _parse_optional_float(s):
    return None if s.lower() == "auto" else float(s)


_PARSERS = {
    "name": str,
    "mu0": float,
    "g0": float,
    "g": float,
    "gamma": float,
    "N": lambda s: _parse_optional_int(s, ("inf", "infinity", "limit", "none")),
    "fock_dim": lambda s: _parse_optional_int(s, ("auto", "none")),
    "couple_b": _parse_bool,
    "T": float,
    "initial": InitialState.parse,
    "t_max": float,
    "n_points": int,
    "alpha": float,
    "k_max": int,
    "dt": _parse_optional_float,
    "trace_tol": float,
    "mode": str,
    "epsilon": float,
    "leakage_tol": float,
    "output": str,
}


def parse_config(text, source="<config>"):
    """Parse config text into a :class:`ScenarioConfig`."""
    values, sweep = {}, {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(" #", 1)[0].strip()
        if not line or line.startswith("#"):
            continue
        where = f"{source}:{lineno}"
        if line.startswith("["):
            if line != "[sweep]":
                raise ConfigError(f"{where}: unknown section {line}")
            if section == "sweep" or sweep:
                raise ConfigError(f"{where}: only one [sweep] section is allowed")
            section = "sweep"
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq or not key:
            raise ConfigError(f"{where}: expected 'key = value', got {raw.strip()!r}")
        target = sweep if section == "sweep" else values
        if key in target:
            raise ConfigError(f"{where}: field {key!r} given twice")
        if section == "sweep":
            if key == "axis":
                if value not in SWEEP_AXES:
                    raise ConfigError(f"{where}: field 'axis' must be one of {SWEEP_AXES}")
                sweep[key] = value
            elif key == "values":
                try:
                    sweep[key] = tuple(float(v) for v in value.split(",") if v.strip())
                except ValueError as exc:
                    raise ConfigError(f"{where}: field 'values': {exc}") from None
            else:
                raise ConfigError(f"{where}: unknown sweep field {key!r}")
            continue
        if key not in _PARSERS:
            raise ConfigError(f"{where}: unknown field {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{where}: field {key!r}: {exc}") from None
    if sweep:
        if "axis" not in sweep or "values" not in sweep:
            raise ConfigError(f"{source}: [sweep] needs both 'axis' and 'values'")
        values["sweep_axis"] = sweep["axis"]
        values["sweep_values"] = sweep["values"]
    cfg = ScenarioConfig(**values)
    try:
        for _, point in cfg.points():
            point.model_params()
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    return cfg


def load_config(path):
    with open(path) as fh:
        return parse_config(fh.read(), source=str(path))
