"""JSON conventions shared by the file formats and the CLI.

Rationals serialize as ``"p/q"`` strings (integers as plain JSON numbers),
floats as their shortest round-trip decimal. Parsing is the inverse: JSON
integers stay exact, ``"p/q"`` strings become fractions, everything else is
a float.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .geometry import Scalar, Vec


def scalar_to_json(s: Scalar):
    if isinstance(s, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(s, int):
        return s
    if isinstance(s, Fraction):
        if s.denominator == 1:
            return int(s)
        return f"{s.numerator}/{s.denominator}"
    if isinstance(s, float):
        return s
    raise ValueError(f"unsupported scalar type: {type(s).__name__}")


def scalar_from_json(v) -> Scalar:
    if isinstance(v, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        num, _, den = v.partition("/")
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    raise ValueError(f"not a scalar: {v!r}")


def vec_to_json(v: Vec) -> list:
    return [scalar_to_json(x) for x in v]


def vec_from_json(doc) -> Vec:
    if not isinstance(doc, list):
        raise ValueError(f"expected a list of scalars, got {doc!r}")
    return tuple(scalar_from_json(x) for x in doc)


def dumps(doc) -> str:
    """Deterministic document rendering: fixed key order, fixed layout."""
    return json.dumps(doc, indent=2, sort_keys=True)


def load_document(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
