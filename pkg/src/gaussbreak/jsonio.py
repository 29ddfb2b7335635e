"""JSON rendering with full-precision numbers.

Reports and object documents are serialised with floats written at 17
significant digits, enough to round-trip every IEEE double exactly, so a
document written by one run parses to bit-identical matrices in the next.
Non-finite numbers are rejected rather than smuggled out as ``NaN``.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import InvalidInputError

__all__ = ["dumps", "loads"]


def _render(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    closing = " " * (indent * level)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidInputError("cannot serialise a non-finite number")
        if value == 0.0:
            return "0"
        return format(value, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [_render(item, indent, level + 1) for item in value]
        # Scalar rows stay on one line so matrices read row per line.
        if not any(isinstance(item, (list, tuple, dict)) for item in value):
            return "[" + ", ".join(items) + "]"
        return "[\n" + ",\n".join(pad + it for it in items) + "\n" + closing + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = []
        for key, item in value.items():
            if not isinstance(key, str):
                raise InvalidInputError(f"JSON object keys must be strings, got {key!r}")
            items.append(pad + json.dumps(key) + ": " + _render(item, indent, level + 1))
        return "{\n" + ",\n".join(items) + "\n" + closing + "}"
    raise InvalidInputError(f"cannot serialise value of type {type(value).__name__}")


def dumps(value: Any, indent: int = 2) -> str:
    """Serialise ``value`` to JSON text with 17-significant-digit floats."""
    return _render(value, indent, 0)


def loads(text: str) -> Any:
    """Parse JSON text; raises ``InvalidInputError`` with the parser message."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from exc
