"""Problem files and report rendering.

A problem file is a JSON object::

    {"field": {"modulus": ["-3", "0", "1"], "embedding": 1},
     "P": ["-1", "0", "18", "0", "-48", "0", "32"],
     "Q": ["-1", "-3", "2", "4"],
     "a": "(-1/2)t", "b": "(1/2)t"}

Coefficient lists are ascending. Scalars are integers or strings in the scalar
syntax of :func:`polymoment.field.parse_scalar`, with ``t`` the field generator.
``field`` may be omitted for rational problems.
"""
from __future__ import annotations

import json

from .errors import InvalidInstance, ParseError, PolyMomentError
from .field import QQ, NumberField, format_scalar, parse_scalar
from .moments import ProblemInstance
from .poly import Poly

METADATA_KEYS = {"name", "description", "expected"}
PROBLEM_KEYS = {"field", "P", "q", "Q", "a", "b"}


def _scalar(value, field, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInstance(f"{where}: scalars must be exact (an integer or a string), got {value!r}")
    if isinstance(value, int):
        return field.element(value)
    if not isinstance(value, str):
        raise InvalidInstance(f"{where}: expected a scalar, got {type(value).__name__}")
    try:
        return parse_scalar(value, field)
    except ParseError as e:
        err = ParseError(f"{where}: {e}")
        err.text, err.position = e.text, e.position
        raise err from None


def _poly(value, field, where):
    if not isinstance(value, list) or not value:
        raise InvalidInstance(f"{where}: expected a non-empty list of ascending coefficients")
    return Poly([_scalar(c, field, f"{where}[{k}]") for k, c in enumerate(value)], field)


def _field(raw):
    if raw is None:
        return QQ
    if not isinstance(raw, dict) or "modulus" not in raw:
        raise InvalidInstance("field: expected an object with a 'modulus' list")
    extra = set(raw) - {"modulus", "embedding"}
    if extra:
        raise InvalidInstance(f"field: unknown keys {sorted(extra)}")
    mod = raw["modulus"]
    if not isinstance(mod, list):
        raise InvalidInstance("field.modulus: expected a list")
    coeffs = [_scalar(c, QQ, f"field.modulus[{k}]").to_fraction() for k, c in enumerate(mod)]
    emb = raw.get("embedding", 0)
    if isinstance(emb, bool) or not isinstance(emb, int):
        raise InvalidInstance("field.embedding: expected an integer")
    try:
        return NumberField(coeffs, emb)
    except ValueError as e:
        raise InvalidInstance(f"field: {e}") from None


def parse_problem_data(data) -> ProblemInstance:
    if not isinstance(data, dict):
        raise InvalidInstance("problem must be a JSON object")
    unknown = set(data) - PROBLEM_KEYS - METADATA_KEYS
    if unknown:
        raise InvalidInstance(f"unknown keys {sorted(unknown)}")
    missing = [k for k in ("P", "a", "b") if k not in data]
    if missing:
        raise InvalidInstance(f"missing keys {missing}")
    if ("q" in data) == ("Q" in data):
        raise InvalidInstance("give exactly one of 'q' and 'Q'")
    K = _field(data.get("field"))
    P = _poly(data["P"], K, "P")
    a = _scalar(data["a"], K, "a")
    b = _scalar(data["b"], K, "b")
    try:
        if "q" in data:
            return ProblemInstance.from_q(P, _poly(data["q"], K, "q"), a, b)
        return ProblemInstance.from_Q(P, _poly(data["Q"], K, "Q"), a, b)
    except PolyMomentError:
        raise
    except ValueError as e:
        raise InvalidInstance(str(e)) from None


def parse_problem(text: str) -> ProblemInstance:
    """Parse problem JSON text. Malformed JSON raises :class:`ParseError` with the offset."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e.msg} at line {e.lineno}, column {e.colno}",
                         text if len(text) < 200 else None, e.pos) from None
    return parse_problem_data(data)


def load_problem(path) -> ProblemInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def problem_to_data(inst: ProblemInstance, name: str | None = None) -> dict:
    out = {}
    if inst.field.degree > 1:
        out["field"] = {"modulus": [format_scalar(c) for c in inst.field.modulus],
                        "embedding": inst.field.embedding}
    out["P"] = inst.P.to_strings()
    if inst.given == "q":
        out["q"] = inst.q.to_strings()
    else:
        out["Q"] = inst.Q.to_strings()
    out["a"] = format_scalar(inst.a)
    out["b"] = format_scalar(inst.b)
    if name is not None:
        out["name"] = name
    return out


def render(payload: dict) -> str:
    """Canonical report text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"
