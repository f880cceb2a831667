"""Ordering, printing and JSON encoding for the small value universe used
as states, letters, channels and contents: ints, strings, tuples and
frozensets nested arbitrarily."""

from __future__ import annotations

from typing import Any, Iterable


def canonical_key(value: Any):
    """Total-order key over mixed nested values (frozensets included)."""
    if value is None:
        return (0,)
    if isinstance(value, bool):
        return (1, int(value))
    if isinstance(value, int):
        return (2, value)
    if isinstance(value, str):
        return (3, value)
    if isinstance(value, tuple):
        return (4, tuple(canonical_key(v) for v in value))
    if isinstance(value, (frozenset, set)):
        return (5, tuple(sorted(canonical_key(v) for v in value)))
    raise TypeError(f"unsupported value {value!r}")


def canonical_sorted(values: Iterable[Any]) -> list:
    return sorted(values, key=canonical_key)


def fmt_value(value: Any) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(fmt_value(v) for v in value) + ")"
    if isinstance(value, (frozenset, set)):
        return "{" + ",".join(fmt_value(v) for v in canonical_sorted(value)) + "}"
    return str(value)


def fmt_word(word) -> str:
    return " ".join(str(a) for a in word) if word else "ε"


def encode(value: Any):
    if isinstance(value, tuple):
        return [encode(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return {"set": [encode(v) for v in canonical_sorted(value)]}
    if value is None or isinstance(value, (bool, int, str)):
        return value
    raise TypeError(f"cannot encode {value!r}")


def decode(data: Any):
    if isinstance(data, list):
        return tuple(decode(v) for v in data)
    if isinstance(data, dict):
        return frozenset(decode(v) for v in data["set"])
    return data
