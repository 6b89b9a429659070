"""Key = value experiment configuration with strict validation.

The on-disk format is one ``key = value`` pair per line, ``#`` comments,
blank lines ignored.  Unknown keys are rejected (a silent typo in ``s`` or
``omega`` would invalidate an experiment), every value is type-checked
against the schema of the subcommand, and parse(serialize(parse(text)))
is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

__all__ = ["ConfigError", "SCHEMAS", "parse_text", "load_config", "serialize"]


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending line/field."""


@dataclass(frozen=True)
class Key:
    type: str                 # int | float | str | bool | int_list | float_list
    required: bool = False
    default: Any = None


_SOLVER_KEYS = {
    "init_width": Key("float", default=2.0),
    "step_size": Key("float", default=None),
    "max_iters": Key("int", default=50_000),
    "action_tol": Key("float", default=1e-11),
    "residual_tol": Key("float", default=1e-7),
}

_GRID_KEYS = {
    "d": Key("int", required=True),
    "n": Key("int", required=True),
    "L": Key("float", required=True),
}

SCHEMAS: dict[str, dict[str, Key]] = {
    "groundstate": {
        **_GRID_KEYS,
        "s": Key("float", required=True),
        "omega": Key("float", required=True),
        **_SOLVER_KEYS,
    },
    "evolve": {
        **_GRID_KEYS,
        "s": Key("float", required=True),
        "m": Key("int", default=100),
        "tau": Key("float", required=True),
        "t_final": Key("float", required=True),
        "snapshot_every": Key("int", default=100),
        "init": Key("str", default="gaussian"),
        "init_width": Key("float", default=1.0),
        "init_amplitude": Key("float", default=1.0),
        "init_mode": Key("int", default=1),
        "init_file": Key("str", default=None),
        "charge_drift_max": Key("float", default=1e-10),
        "energy_drift_max": Key("float", default=1e-6),
        "write_snapshots": Key("bool", default=True),
    },
    "verify": {
        "seed": Key("int", default=42),
        "suites": Key("str", default=""),
    },
    "stability": {
        **_GRID_KEYS,
        "s": Key("float", required=True),
        "omega": Key("float", required=True),
        "delta": Key("float", required=True),
        "t_final": Key("float", required=True),
        "tau": Key("float", default=5e-3),
        "m": Key("int", default=1_000_000),
        "snapshot_every": Key("int", default=400),
        "seeds": Key("int_list", required=True),
        "pass_ratio": Key("float", default=10.0),
        "groundstate_file": Key("str", default=None),
        "residual_tol": Key("float", default=1e-7),
    },
    "sweep": {
        **_GRID_KEYS,
        "s_list": Key("float_list", required=True),
        "omega_list": Key("float_list", required=True),
        **_SOLVER_KEYS,
    },
}


def parse_text(text: str) -> dict[str, tuple[str, int]]:
    """Split config text into {key: (raw value, line number)}."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if not key:
            raise ConfigError(f"line {lineno}: missing key before '='")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (raw, lineno)
    return entries


def _convert(raw: str, kind: str, key: str, lineno: int):
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "str":
            return raw
        if kind == "bool":
            low = raw.lower()
            if low in ("true", "yes", "1"):
                return True
            if low in ("false", "no", "0"):
                return False
            raise ValueError(raw)
        if kind == "int_list":
            return [int(tok) for tok in raw.split(",") if tok.strip() != ""]
        if kind == "float_list":
            return [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError:
        raise ConfigError(
            f"line {lineno}: field {key!r} expects {kind}, got {raw!r}"
        ) from None
    raise ConfigError(f"field {key!r} has unknown schema type {kind!r}")


def load_config(text: str, command: str) -> dict[str, Any]:
    """Parse and validate config text against a subcommand schema."""
    if command not in SCHEMAS:
        raise ConfigError(f"unknown command {command!r}")
    schema = SCHEMAS[command]
    entries = parse_text(text)

    values: dict[str, Any] = {}
    for key, (raw, lineno) in entries.items():
        if key not in schema:
            raise ConfigError(
                f"line {lineno}: unknown key {key!r} for command {command!r}"
            )
        values[key] = _convert(raw, schema[key].type, key, lineno)
    for key, entry in schema.items():
        if key not in values:
            if entry.required:
                raise ConfigError(f"missing required field {key!r} for {command!r}")
            if entry.default is not None:
                values[key] = entry.default
    return values


def load_config_file(path: str | Path, command: str) -> dict[str, Any]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return load_config(text, command)


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ",".join(_format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize(values: dict[str, Any]) -> str:
    """Render values back to config text (sorted keys; lossless floats)."""
    lines = [f"{key} = {_format_value(values[key])}"
             for key in sorted(values) if values[key] is not None]
    return "\n".join(lines) + "\n"
