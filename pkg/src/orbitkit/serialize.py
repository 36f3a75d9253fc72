"""Stable JSON encoding for scalars, block elements, and check witnesses.

Rationals are encoded as "p/q" strings so reports stay exact and byte-stable
across runs; floats pass through as JSON numbers.  Block elements round-trip
through their named coordinates, which keeps failure witnesses replayable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict

from . import models
from .models import BlockElement


def encode_scalar(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    if isinstance(value, float):
        return value
    raise TypeError(f"cannot encode scalar of type {type(value).__name__}")


def decode_scalar(value):
    if isinstance(value, str):
        num, _, den = value.partition("/")
        return Fraction(int(num), int(den or "1"))
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return value
    raise TypeError(f"cannot decode scalar from {value!r}")


def element_to_obj(e: BlockElement) -> Dict[str, Any]:
    coords = models.to_coordinates(e)
    return {
        "element": {
            "n": e.n,
            "coords": {name: encode_scalar(val)
                       for name, val in coords.items() if val != 0},
        }
    }


def element_from_obj(obj: Dict[str, Any]) -> BlockElement:
    body = obj["element"]
    coords = {name: decode_scalar(val) for name, val in body["coords"].items()}
    return models.from_coordinates(body["n"], coords)


def encode_value(value):
    """Recursively encode a witness value into JSON-compatible data."""
    if isinstance(value, BlockElement):
        return element_to_obj(value)
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if isinstance(value, str) or value is None:
        return value
    return encode_scalar(value)


def decode_value(value):
    if isinstance(value, dict):
        if set(value.keys()) == {"element"}:
            return element_from_obj(value)
        return {k: decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode_value(v) for v in value]
    if value is None:
        return None
    if isinstance(value, str) and "/" in value:
        try:
            return decode_scalar(value)
        except ValueError:
            return value
    return value
