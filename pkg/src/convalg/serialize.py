"""Canonical JSON output: fixed key order, 17 significant digits for floats."""

from __future__ import annotations

import json
import math
from numbers import Real

from .errors import NumericOverflowError, ParseError


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise NumericOverflowError(f"non-finite value {x!r} cannot be serialized")
    s = format(x, ".17g")
    # keep floats recognisable as floats after a round trip
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj) -> str:
    """Serialize ``obj`` deterministically. Dict key order is preserved, not sorted."""
    parts: list[str] = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj, out: list[str]) -> None:
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, Real):
        out.append(format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k)))
            out.append(": ")
            _emit(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def complex_to_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def complex_from_json(obj) -> complex:
    if isinstance(obj, Real) and not isinstance(obj, bool):
        return complex(obj)
    if not isinstance(obj, dict) or "re" not in obj:
        raise ParseError(f"expected a complex number {{'re': .., 'im': ..}}, got {obj!r}")
    re, im = obj["re"], obj.get("im", 0.0)
    for part in (re, im):
        if isinstance(part, bool) or not isinstance(part, Real):
            raise ParseError(f"non-numeric complex component in {obj!r}")
    return complex(float(re), float(im))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
