"""JSON encoding of elements.

Ints stay ints, tuples become arrays, tags become ``{"v": ..., "t": ...}``
and arrow symbols stay strings.
"""

from __future__ import annotations

from .signed import Tag


class FormatError(ValueError):
    """Input that does not decode to a well-formed value."""


def element_to_json(x):
    if x.__class__ is Tag:
        return {"v": element_to_json(x.v), "t": element_to_json(x.t)}
    if x.__class__ is tuple:
        return [element_to_json(e) for e in x]
    if isinstance(x, (int, str)):
        return x
    raise FormatError(f"not an element: {x!r}")


def element_from_json(obj):
    if isinstance(obj, bool):
        raise FormatError("booleans are not elements")
    if isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, list):
        return tuple(element_from_json(e) for e in obj)
    if isinstance(obj, dict):
        if set(obj) != {"v", "t"}:
            raise FormatError(f"tagged element needs exactly keys v and t, got {sorted(obj)}")
        return Tag(element_from_json(obj["v"]), element_from_json(obj["t"]))
    raise FormatError(f"cannot decode element from {obj!r}")
