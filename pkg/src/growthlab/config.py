"""Experiment configuration files (JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .groups import GroupError, GroupSpec, group_from_json
from .products import ElementSet

_coords = {"type": "array", "items": {"type": "integer"}}
_coord_list = {"type": "array", "items": _coords}
_rational = {"type": ["integer", "string"]}

GROUP_SCHEMA: dict = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {
            "enum": ["free_abelian", "cyclic", "heisenberg", "unitriangular", "finite", "product_with_finite"]
        },
        "rank": {"type": "integer", "minimum": 1},
        "modulus": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 2},
        "table": {"type": "array", "items": _coords},
        "base": {"$ref": "#/$defs/group"},
    },
}

CONFIG_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "growthlab experiment",
    "type": "object",
    "$defs": {"group": GROUP_SCHEMA},
    "properties": {
        "group": {"$ref": "#/$defs/group"},
        "set": _coord_list,
        "second_set": _coord_list,
        "r": {"type": "integer", "minimum": 2},
        "h": {"type": "integer", "minimum": 1},
        "h_range": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
        "n_max": {"type": "integer", "minimum": 0},
        "window": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "theta": _rational,
        "R0": _rational,
        "method": {"enum": ["min", "ruzsa", "polynomial_growth"]},
        "cutoff": {"type": "integer", "minimum": 1},
        "L": {"type": "integer", "minimum": 0},
        "depth": {"type": "integer", "minimum": 1},
        "hom": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["identity", "abelianization", "reduction", "project_base", "project_finite"]},
                "modulus": {"type": "integer", "minimum": 1},
            },
        },
        "kernel": _coord_list,
        "budget": {"type": "integer", "minimum": 1},
        "exact_limit": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}


class ConfigError(ValueError):
    pass


def parse_rational(value: Any, name: str) -> Fraction:
    if isinstance(value, float):
        raise ConfigError(f"{name} must be an integer or a 'p/q' string, not a float")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational for {name}: {value!r}") from exc


@dataclass
class ExperimentConfig:
    raw: dict
    group: GroupSpec | None = None

    def get(self, key: str, default=None):
        return self.raw.get(key, default)

    def require(self, key: str):
        if key not in self.raw:
            raise ConfigError(f"config is missing '{key}'")
        return self.raw[key]

    def element_set(self, key: str = "set", group: GroupSpec | None = None) -> ElementSet:
        group = group or self.group
        if group is None:
            raise ConfigError("config has no group")
        try:
            return ElementSet(group, self.require(key))
        except GroupError as exc:
            raise ConfigError(f"{key}: {exc}") from exc

    def h_values(self) -> list[int]:
        lo, hi = self.require("h_range")
        if lo > hi:
            raise ConfigError("h_range must be [lo, hi] with lo <= hi")
        return list(range(lo, hi + 1))


def load_config(source: str | Path | dict) -> ExperimentConfig:
    if isinstance(source, dict):
        raw = source
    else:
        try:
            raw = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {source}: {exc}") from exc
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"invalid config: {exc.message}") from exc
    group = None
    if "group" in raw:
        try:
            group = group_from_json(raw["group"])
        except GroupError as exc:
            raise ConfigError(str(exc)) from exc
    return ExperimentConfig(raw, group)
