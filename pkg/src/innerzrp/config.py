"""Model configuration: a single JSON document from a file or stdin, overridable by flags."""

from __future__ import annotations

import dataclasses
import json
import math
import sys
from dataclasses import dataclass, field

from .errors import ConfigError

MODES = ("observables", "reduced")


@dataclass(frozen=True)
class ModelConfig:
    mode: str = "observables"
    a: float | None = None
    r0: float | None = None
    spectrum_k: tuple[float, ...] = field(default_factory=tuple)
    a0: float | None = None
    alpha: float | None = None
    k0: float | None = None
    energy_scale: float = 1.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        try:
            ks = tuple(float(k) for k in self.spectrum_k)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"spectrum_k must be a list of numbers: {exc}") from None
        if any(not math.isfinite(k) or k <= 0 for k in ks):
            raise ConfigError(f"spectrum_k entries must be positive: {list(ks)}")
        if any(hi <= lo for lo, hi in zip(ks, ks[1:])):
            raise ConfigError(f"spectrum_k must be strictly increasing: {list(ks)}")
        object.__setattr__(self, "spectrum_k", ks)
        required = ("a", "r0") if self.mode == "observables" else ("a0", "alpha")
        if self.mode == "observables" and not ks and self.r0 is None:
            object.__setattr__(self, "r0", 0.0)
        for name in required:
            value = getattr(self, name)
            if value is None:
                raise ConfigError(f"mode {self.mode!r} requires field {name!r}")
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(f"field {name!r} must be a finite number, got {value!r}")
        if self.mode == "reduced" and self.a0 == 0:
            raise ConfigError("a0 must be nonzero")
        if self.k0 is not None and not self.k0 > 0:
            raise ConfigError(f"k0 must be positive, got {self.k0}")
        if not self.energy_scale > 0:
            raise ConfigError(f"energy_scale must be positive, got {self.energy_scale}")

    @classmethod
    def from_dict(cls, data: dict) -> ModelConfig:
        if "config" in data and isinstance(data["config"], dict):
            # a fit report: reuse the configuration it was produced from
            data = data["config"]
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["spectrum_k"] = list(self.spectrum_k)
        return d

    def override(self, **changes) -> ModelConfig:
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes) if changes else self


def load_document(path: str | None) -> dict:
    """Read a JSON object from ``path`` ('-' for stdin); ``None`` gives an empty document."""
    if path is None:
        return {}
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config document must be a JSON object")
    return data


def load_config(path: str | None, **overrides) -> ModelConfig:
    """Merge file values with flag overrides (flags win) and validate."""
    data = load_document(path)
    if "config" in data and isinstance(data["config"], dict):
        data = dict(data["config"])
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    if not data:
        raise ConfigError("no model given: pass --config or the model flags")
    try:
        return ModelConfig.from_dict(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
