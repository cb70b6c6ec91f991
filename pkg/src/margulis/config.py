"""Group configuration: generator axes and eigenvalues plus run settings.

Configs are plain JSON objects with the field names of :class:`GroupConfig`;
missing keys fall back to the chosen preset.  Angles are radians.
"""
import json
import math
import os
from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import ConfigError, LambdaOutOfRange, NotUnitSpacelike
from .isometry import make_hyperbolic
from .lorentz import TOL, lorentz_unit

PRESETS = {
    # default group; not Schottky, see README
    "example": dict(axis_g=[1.0, 0.0, 0.0], axis_h=[0.0, 1.0, 0.0],
                  lambda_g=math.exp(-1.0), lambda_h=math.exp(-2.0)),
    # same axes, translation lengths large enough for a genuine Schottky system
    "schottky": dict(axis_g=[1.0, 0.0, 0.0], axis_h=[0.0, 1.0, 0.0],
                     lambda_g=math.exp(-3.0), lambda_h=math.exp(-1.5)),
}


@dataclass
class GroupConfig:
    axis_g: list
    axis_h: list
    lambda_g: float
    lambda_h: float
    tolerance: float = TOL
    seed_t: float = 0.5
    property_c_depth: int = None
    property_c_samples: int = 64
    ordering_depth: int = 5
    schottky_samples: int = 256
    require_schottky: bool = True
    preset: str = "example"

    def validate(self):
        for name in ("lambda_g", "lambda_h"):
            lam = getattr(self, name)
            if not (isinstance(lam, (int, float)) and 0.0 < lam < 1.0):
                raise LambdaOutOfRange(f"{name} = {lam!r} is not in (0, 1)")
        for name in ("axis_g", "axis_h"):
            try:
                setattr(self, name, [float(x) for x in lorentz_unit(getattr(self, name), self.tolerance)])
            except (NotUnitSpacelike, ValueError, TypeError) as exc:
                raise ConfigError(f"{name}: {exc}") from exc
        if not 0.0 < self.seed_t < 1.0:
            raise ConfigError("seed_t must lie in (0, 1)")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        return self

    def generators(self):
        g, _ = make_hyperbolic(np.array(self.axis_g), self.lambda_g, self.tolerance)
        h, _ = make_hyperbolic(np.array(self.axis_h), self.lambda_h, self.tolerance)
        return g, h

    def as_dict(self):
        return asdict(self)


def load_config(path=None, preset="example", overrides=None, env=None):
    """Preset, then JSON file, then explicit overrides, then MARGULIS_TOL."""
    if preset not in PRESETS:
        raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
    data = dict(PRESETS[preset], preset=preset)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        data.update(loaded)
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    env = os.environ if env is None else env
    if env.get("MARGULIS_TOL"):
        try:
            data["tolerance"] = float(env["MARGULIS_TOL"])
        except ValueError as exc:
            raise ConfigError(f"MARGULIS_TOL: {exc}") from exc
    known = {f.name for f in fields(GroupConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return GroupConfig(**data).validate()
