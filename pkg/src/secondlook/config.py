"""Run configuration files and tabular output.

The configuration format is a flat UTF-8 ``key = value`` file: one setting
per line, ``#`` comments, lists comma-separated.  Unknown keys are rejected
and every parse or validation error names the file and line.  A config
serialized with :func:`dump_config` parses back to an identical value.

Tables are emitted as CSV with a header row or as a JSON array of flat
records.  Floats are printed with 12 significant digits in both formats so
the two decode to identical records.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, fields, replace

from .errors import ConfigError, ModelError
from .model import InformationStructure, PayoffStructure, Scenario

_FLOAT_FORMAT = "%.12g"


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs: model parameters, priors, seed, grid size."""

    theta1: float = 0.6
    theta2: float = 0.8
    u_correct: float = 1.0
    u_wrong: float = 0.0
    cost: float = 0.1
    priors: tuple[float, ...] = (0.3, 0.7)
    subjective_p: float | None = 0.5
    seed: int = 42
    grid: int = 101
    costs: tuple[float, ...] | None = None

    def info(self) -> InformationStructure:
        return InformationStructure(self.theta1, self.theta2)

    def payoffs(self) -> PayoffStructure:
        return PayoffStructure(self.u_correct, self.u_wrong)

    def scenario(self) -> Scenario:
        return Scenario(self.info(), self.payoffs(), self.cost, self.priors)

    def cost_list(self) -> tuple[float, ...]:
        return self.costs if self.costs is not None else (self.cost,)

    def validate(self, source: str = "<config>") -> "RunConfig":
        """Re-run all underlying type constraints; raise ConfigError on failure."""
        try:
            self.scenario()
            if self.subjective_p is not None and not 0.0 <= self.subjective_p <= 1.0:
                raise ModelError(
                    f"subjective_p must lie in [0, 1], got {self.subjective_p}"
                )
            if self.grid < 2:
                raise ModelError(f"grid must have at least 2 points, got {self.grid}")
            for c in self.cost_list():
                if not (math.isfinite(c) and c >= 0):
                    raise ModelError(f"costs must be >= 0, got {c}")
        except ModelError as exc:
            raise ConfigError(str(exc), source=source) from exc
        return self


DEFAULT_CONFIG = RunConfig()

_LIST_KEYS = {"priors", "costs"}
_INT_KEYS = {"seed", "grid"}
_OPTIONAL_KEYS = {"subjective_p", "costs"}
_ALL_KEYS = {f.name for f in fields(RunConfig)}


def _parse_scalar(key: str, text: str, source: str, line: int):
    caster = int if key in _INT_KEYS else float
    try:
        return caster(text)
    except ValueError:
        kind = "an integer" if caster is int else "a number"
        raise ConfigError(
            f"expected {kind} for {key!r}, got {text!r}", source=source, line=line
        ) from None


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse a flat key-value configuration; errors carry line numbers."""
    values: dict = {}
    seen_lines: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"expected 'key = value', got {raw.strip()!r}",
                source=source,
                line=lineno,
            )
        key, _, value_text = line.partition("=")
        key, value_text = key.strip(), value_text.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r}", source=source, line=lineno)
        if key in seen_lines:
            raise ConfigError(
                f"duplicate key {key!r} (first set on line {seen_lines[key]})",
                source=source,
                line=lineno,
            )
        seen_lines[key] = lineno
        if key in _OPTIONAL_KEYS and value_text.lower() == "none":
            values[key] = None
        elif key in _LIST_KEYS:
            parts = [part.strip() for part in value_text.split(",") if part.strip()]
            if not parts:
                raise ConfigError(
                    f"{key!r} needs at least one value", source=source, line=lineno
                )
            values[key] = tuple(_parse_scalar(key, part, source, lineno) for part in parts)
        else:
            values[key] = _parse_scalar(key, value_text, source, lineno)
    return replace(DEFAULT_CONFIG, **values).validate(source)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}", source=str(path)) from exc
    return parse_config(text, source=str(path))


def _format_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _FLOAT_FORMAT % value
    if isinstance(value, tuple):
        return ", ".join(_format_value(v) for v in value)
    return str(value)


def dump_config(config: RunConfig) -> str:
    lines = [f"{f.name} = {_format_value(getattr(config, f.name))}" for f in fields(RunConfig)]
    return "\n".join(lines) + "\n"


def format_cell(value) -> str:
    """Render one table cell the same way for CSV and JSON."""
    return _format_value(value)


def _json_ready(value):
    if isinstance(value, float):
        return float(_FLOAT_FORMAT % value)
    return value


def render_csv(columns: list[str], rows: list[dict]) -> str:
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(format_cell(row[c]) for c in columns) + "\n")
    return out.getvalue()


def render_json(columns: list[str], rows: list[dict]) -> str:
    records = [{c: _json_ready(row[c]) for c in columns} for row in rows]
    return json.dumps(records, indent=2) + "\n"


def render_table(columns: list[str], rows: list[dict], fmt: str) -> str:
    if fmt == "csv":
        return render_csv(columns, rows)
    if fmt == "json":
        return render_json(columns, rows)
    raise ConfigError(f"unknown output format {fmt!r}; expected 'csv' or 'json'")
