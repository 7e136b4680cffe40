"""Strict JSON scenario files.

A scenario is a flat document::

    {"model": "deterrence", "params": {"Q": 10, "d1": 6, "d2": 6}}

Unknown keys anywhere are rejected so a typo cannot silently change the
economics.  Structural problems raise :class:`ScenarioParseError`; values
that are well-formed but out of range raise :class:`ScenarioValidationError`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional


class ScenarioParseError(Exception):
    pass


class ScenarioValidationError(Exception):
    pass


@dataclass(frozen=True)
class ModelSchema:
    summary: str
    required: frozenset
    optional: dict
    integers: frozenset = frozenset()
    modes: tuple = ()


MODELS = {
    "carcass": ModelSchema(
        "two troops contest a carcass worth Q; fighting is dominant for any Q > 0",
        frozenset({"Q"}),
        {},
    ),
    "deterrence": ModelSchema(
        "pirate vs industry blockade game with blockade costs d1 (pirate) and d2 (industry)",
        frozenset({"Q", "d1", "d2"}),
        {},
    ),
    "entry": ModelSchema(
        "two-firm entry game with competitive profits p*Q/n0 - c - D and monopoly profit p*Q - c",
        frozenset({"p", "Q", "n0"}),
        {"c": 0.0, "D_P": 0.0, "D_I": 0.0},
    ),
    "dynamic_game": ModelSchema(
        "entry game over discounted streams: pirates earn T competitive periods, "
        "industry adds a monopoly tail; D_P, D_I are blockade costs",
        frozenset({"p", "Q", "n0", "T"}),
        {"delta": 0.95, "D_P": 0.0, "D_I": 0.0},
        frozenset({"T"}),
    ),
    "bioprospecting": ModelSchema(
        "healers vs a bioprospecting firm; give pi_H and pi_M directly, or p, Q, n0, c, INV "
        "to derive them; f is the firm's entrance cost",
        frozenset({"f"}),
        {"pi_H": None, "pi_M": None, "p": None, "Q": None, "n0": None, "c": 0.0, "INV": 0.0},
    ),
    "dynamics": ModelSchema(
        "multi-period simulation: n falls by r per period, industry deterrence rises by g, "
        "pirate deterrence by g_P; monopoly from the first period with n <= 1",
        frozenset({"p", "Q", "n0"}),
        {"c": 0.0, "D_P": 0.0, "D_I": 0.0, "r": 0.0, "g": 0.0, "g_P": 0.0, "delta": 0.95, "horizon": 30},
        frozenset({"horizon"}),
        ("literal", "eq1"),
    ),
    "classic_attrition": ModelSchema(
        "continuous symmetric war of attrition with prize V and cost rate k; "
        "checks the exponential ESS by quadrature and Monte Carlo",
        frozenset({"V", "k"}),
        {"seed": 0},
        frozenset({"seed"}),
    ),
    "free_entry": ModelSchema(
        "zero-profit producer count n* = p*Q/(c + D) with D given as D_I or D_P",
        frozenset({"p", "Q"}),
        {"c": 0.0, "D_P": None, "D_I": None},
    ),
}

GAME_MODELS = ("carcass", "deterrence", "entry", "dynamic_game", "bioprospecting")
TOP_LEVEL_KEYS = {"model", "params", "mode"}


@dataclass(frozen=True)
class Scenario:
    model: str
    params: dict
    mode: Optional[str] = None

    def get(self, key, default=None):
        value = self.params.get(key)
        return default if value is None else value


def _check_number(key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioParseError(f"params.{key}: expected a number, got {json.dumps(value)}")
    return value


def parse_scenario(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ScenarioParseError("top level must be a JSON object")
    unknown = sorted(set(doc) - TOP_LEVEL_KEYS)
    if unknown:
        raise ScenarioParseError(f"unknown top-level key(s): {', '.join(unknown)}")
    model = doc.get("model")
    if model not in MODELS:
        raise ScenarioParseError(
            f"model: expected one of {', '.join(MODELS)}, got {json.dumps(model)}"
        )
    raw = doc.get("params", {})
    if not isinstance(raw, dict):
        raise ScenarioParseError("params: expected an object")
    schema = MODELS[model]
    allowed = schema.required | set(schema.optional)
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ScenarioParseError(
            f"params: unknown key(s) for model {model}: {', '.join(unknown)} "
            f"(allowed: {', '.join(sorted(allowed))})"
        )
    params = {key: _check_number(key, value) for key, value in raw.items()}
    mode = doc.get("mode")
    if mode is not None:
        if not schema.modes:
            raise ScenarioParseError(f"mode: not applicable to model {model}")
        if mode not in schema.modes:
            raise ScenarioParseError(f"mode: expected one of {', '.join(schema.modes)}, got {json.dumps(mode)}")
    scenario = Scenario(model, params, mode)
    validate(scenario)
    return scenario


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ScenarioParseError(f"cannot read {path}: {exc}") from None
    return parse_scenario(text)


def _require_positive(s: Scenario, *keys):
    for key in keys:
        if key in s.params and not s.params[key] > 0:
            raise ScenarioValidationError(f"params.{key} must be > 0, got {s.params[key]}")


def _require_nonnegative(s: Scenario, *keys):
    for key in keys:
        if key in s.params and not s.params[key] >= 0:
            raise ScenarioValidationError(f"params.{key} must be >= 0, got {s.params[key]}")


def validate(s: Scenario) -> None:
    schema = MODELS[s.model]
    missing = sorted(schema.required - set(s.params))
    if missing:
        raise ScenarioValidationError(f"model {s.model} requires: {', '.join(missing)}")
    for key, value in s.params.items():
        if not math.isfinite(value):
            raise ScenarioValidationError(f"params.{key} must be finite")
        if key in schema.integers and value != int(value):
            raise ScenarioValidationError(f"params.{key} must be an integer, got {value}")
    _require_positive(s, "p", "Q", "V", "k", "T", "horizon")
    _require_nonnegative(s, "c", "D_P", "D_I", "d1", "d2", "INV", "f", "r", "g", "g_P", "seed")
    if "n0" in s.params and s.params["n0"] < 1:
        raise ScenarioValidationError(f"params.n0 must be >= 1, got {s.params['n0']}")
    if "delta" in s.params:
        delta = s.params["delta"]
        if not 0 < delta < 1:
            raise ScenarioValidationError(f"params.delta must be in (0, 1), got {delta}")
    if "seed" in s.params and s.params["seed"] >= 2**64:
        raise ScenarioValidationError("params.seed must fit in 64 bits")

    if s.model == "bioprospecting":
        direct = {"pi_H", "pi_M"} & set(s.params)
        derived = {"p", "Q", "n0", "c", "INV"} & set(s.params)
        if direct and derived:
            raise ScenarioValidationError("bioprospecting: give either pi_H/pi_M or p/Q/n0/c/INV, not both")
        need = {"pi_H", "pi_M"} if direct else {"p", "Q", "n0"}
        missing = sorted(need - set(s.params))
        if missing:
            raise ScenarioValidationError(f"bioprospecting requires: {', '.join(missing)}")
    if s.model == "free_entry":
        if "D_P" in s.params and "D_I" in s.params:
            raise ScenarioValidationError("free_entry: give one deterrence cost, D_I or D_P")
        if s.get("c", 0.0) + s.get("D_I", s.get("D_P", 0.0)) <= 0:
            raise ScenarioValidationError("unbounded entry: c + D must be > 0")
