"""Exact JSON file formats for spaces, skeletons and polyhedral norms.

Every scalar is either a JSON integer or a string ``"p"`` / ``"p/q"``.
Float literals and decimal strings are rejected with their line and column.

    space:    {"dim": 2, "states": [["1", "0"], ["0", "1"]], "unit": ["1", "1"]}
    skeleton: {"dim": 2, "head": ["1", "1"], "points": [["0", "0"], ["1", "0"], ...]}
    norm:     {"dim": 1, "functionals": [["1"]]}
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .constructions import PolyhedralNormedSpace
from .exact import RationalParseError, fmt, matrix, to_fraction, vector
from .skeleton import SkeletonSpec
from .space import OrderUnitSpace, make_space


class FileFormatError(ValueError):
    """Malformed input file; the message carries line and column when known."""


_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?')


def _position(text: str, offset: int) -> str:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return f"line {line}, column {col}"


def _locate_bad_scalar(text: str):
    """Offset and token of the first float literal or non-rational string value."""
    for m in _TOKEN.finditer(text):
        tok = m.group(0)
        if tok.startswith('"'):
            after = text[m.end() :].lstrip()
            if after.startswith(":"):
                continue  # an object key
            try:
                to_fraction(json.loads(tok))
            except RationalParseError:
                return m.start(), tok
        elif any(c in tok for c in ".eE"):
            return m.start(), tok
    return None


def _reject_float(tok):
    raise RationalParseError(f"float literal {tok}")


def loads(text: str, source: str = "<input>") -> dict:
    """Parse JSON exactly, converting every scalar leaf to a Fraction."""
    bad = _locate_bad_scalar(text)
    if bad is not None:
        offset, tok = bad
        raise FileFormatError(
            f"{source}: {_position(text, offset)}: {tok} is not an exact rational (use \"p/q\")"
        )
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise FileFormatError(f"{source}: top level must be an object")
    return data


def _field(data, key, source):
    if key not in data:
        raise FileFormatError(f"{source}: missing field {key!r}")
    return data[key]


def _dim(data, source) -> int:
    dim = _field(data, "dim", source)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FileFormatError(f"{source}: 'dim' must be a positive integer")
    return dim


def _wrap(source, fn, *args):
    try:
        return fn(*args)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, FileFormatError):
            raise
        raise FileFormatError(f"{source}: {exc}") from exc


def space_from_text(text: str, source: str = "<space>") -> OrderUnitSpace:
    data = loads(text, source)
    dim = _dim(data, source)
    states = _wrap(source, matrix, _field(data, "states", source), dim)
    unit = _wrap(source, vector, _field(data, "unit", source), dim)
    return _wrap(source, make_space, states, unit)


def skeleton_from_text(text: str, source: str = "<skeleton>") -> SkeletonSpec:
    data = loads(text, source)
    dim = _dim(data, source)
    points = _field(data, "points", source)
    if not points:
        raise FileFormatError(f"{source}: 'points' must be a nonempty list")
    return _wrap(source, SkeletonSpec, dim, _field(data, "head", source), tuple(points))


def norm_from_text(text: str, source: str = "<norm>") -> PolyhedralNormedSpace:
    data = loads(text, source)
    dim = _dim(data, source)
    return _wrap(source, PolyhedralNormedSpace, dim, _field(data, "functionals", source))


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror}") from exc


def load_space(path) -> OrderUnitSpace:
    return space_from_text(_read(path), str(path))


def load_skeleton(path) -> SkeletonSpec:
    return skeleton_from_text(_read(path), str(path))


def load_norm(path) -> PolyhedralNormedSpace:
    return norm_from_text(_read(path), str(path))


def _rows(rows) -> list:
    return [[fmt(x) for x in r] for r in rows]


def space_to_dict(V: OrderUnitSpace) -> dict:
    return {"dim": V.dim, "states": _rows(V.states), "unit": [fmt(x) for x in V.unit]}


def _dump(doc: dict, matrix_key: str) -> str:
    """JSON with one matrix row per line."""
    lines = []
    for key, value in doc.items():
        if key == matrix_key:
            rows = ",\n".join("    " + json.dumps(r) for r in value)
            lines.append(f'  "{key}": [\n{rows}\n  ]')
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(lines) + "\n}"


def dump_space(V: OrderUnitSpace) -> str:
    return _dump(space_to_dict(V), "states")


def dump_skeleton(spec: SkeletonSpec) -> str:
    doc = {"dim": spec.dim, "head": [fmt(x) for x in spec.head], "points": _rows(spec.points)}
    return _dump(doc, "points")
