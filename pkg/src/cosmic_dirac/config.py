"""Run configuration: flat key=value files ('#' comments) or a JSON object."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .exceptions import ParameterError
from .model import ModelParams, QuantumNumbers

__all__ = ["RunConfig", "parse_config", "load_config"]

_FLOAT_KEYS = {"M", "omega", "rho", "s1", "s2", "k"}
_INT_KEYS = {"m", "s", "n_r"}
ALLOWED_KEYS = _FLOAT_KEYS | _INT_KEYS


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams = field(default_factory=ModelParams)
    qn: QuantumNumbers = field(default_factory=QuantumNumbers)

    def as_dict(self) -> dict:
        p, q = self.params, self.qn
        return {"M": p.M, "omega": p.omega, "rho": p.rho, "s1": p.s1, "s2": p.s2, "m": q.m, "k": q.k, "s": q.s, "n_r": q.n_r}


def _coerce(key, value):
    if key in _INT_KEYS:
        if isinstance(value, bool):
            raise ParameterError(f"{key} must be an integer")
        try:
            as_float = float(value)
        except (TypeError, ValueError):
            raise ParameterError(f"{key} must be an integer, got {value!r}") from None
        if not as_float.is_integer():
            raise ParameterError(f"{key} must be an integer, got {value!r}")
        return int(as_float)
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{key} must be a number, got {value!r}") from None
    if not math.isfinite(out):
        raise ParameterError(f"{key} must be finite")
    return out


def parse_config(text: str) -> RunConfig:
    """Parse and validate; unknown or repeated keys are rejected."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"malformed JSON config: {exc}") from None
        if not isinstance(raw, dict):
            raise ParameterError("JSON config must be an object")
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"line {lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in raw:
                raise ParameterError(f"line {lineno}: duplicate key {key!r}")
            raw[key] = value
    unknown = sorted(set(raw) - ALLOWED_KEYS)
    if unknown:
        raise ParameterError(f"unknown config keys: {', '.join(unknown)}")
    values = {key: _coerce(key, value) for key, value in raw.items()}
    params = ModelParams(**{k: values[k] for k in ("M", "omega", "rho", "s1", "s2") if k in values})
    qn = QuantumNumbers(**{k: values[k] for k in ("m", "k", "s", "n_r") if k in values})
    return RunConfig(params, qn)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParameterError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text)
