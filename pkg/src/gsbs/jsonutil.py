"""JSON helpers: canonical dumps and integer encoding safe beyond 64 bits.

Integers with absolute value below 2**63 are emitted as JSON numbers;
anything larger becomes a decimal string so consumers with fixed-width
integer parsers do not silently truncate. Decoding accepts both forms.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import SchemaError

INT64_BOUND = 2**63


def encode_int(v: int) -> int | str:
    if -INT64_BOUND < v < INT64_BOUND:
        return v
    return str(v)


def decode_int(v: Any, what: str = "integer") -> int:
    if isinstance(v, bool):
        raise SchemaError(f"{what}: expected integer, got boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        s = v.strip()
        if s and (s.lstrip("+-").isdigit()):
            return int(s)
    raise SchemaError(f"{what}: expected integer or decimal string, got {v!r}")


def decode_int_list(v: Any, what: str = "integer list") -> list[int]:
    if not isinstance(v, list):
        raise SchemaError(f"{what}: expected array, got {type(v).__name__}")
    return [decode_int(x, what) for x in v]


def require_key(obj: Any, key: str, what: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(f"{what}: expected object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(f"{what}: missing key {key!r}")
    return obj[key]


def dumps(payload: Any) -> str:
    """Canonical serialization: two-space indent, stable key order as built."""
    return json.dumps(payload, indent=2) + "\n"


def loads(text: str, what: str = "document") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: invalid JSON ({exc})") from None
