"""Instance and report (de)serialisation.

Instances are JSON objects::

    {"format_version": "1", "dim": 2, "vertices": [[1, 1], ["-1/2", 0], ...]}
    {"format_version": "1", "dim": 2, "inequalities": [{"normal": [0, 1], "rhs": "0"}, ...]}

Rationals are JSON integers or strings ``"p/q"``; floats are refused.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import re
from fractions import Fraction
from typing import Any, Union

from .errors import ParseError
from .polytope import HPolyhedron, VPolytope, hull_canonicalize

FORMAT_VERSION = "1"
_RAT = re.compile(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*\Z")

Instance = Union[VPolytope, HPolyhedron]


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(f"{where}: floats are not exact; write {value!r} as a 'p/q' string")
    if isinstance(value, str) and _RAT.match(value):
        q = Fraction(value.replace(" ", ""))
        return q
    raise ParseError(f"{where}: {value!r} is not a rational literal (integer or 'p/q')")


def parse_integer(value: Any, where: str) -> int:
    q = parse_rational(value, where)
    if q.denominator != 1:
        raise ParseError(f"{where}: expected an integer, got {q}")
    return int(q)


def instance_from_dict(obj: Any) -> Instance:
    if not isinstance(obj, dict):
        raise ParseError("top level: expected a JSON object")
    if "dim" not in obj:
        raise ParseError("dim: missing")
    d = obj["dim"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ParseError(f"dim: expected a positive integer, got {d!r}")
    has_v, has_h = "vertices" in obj, "inequalities" in obj
    if has_v == has_h:
        raise ParseError("exactly one of 'vertices' or 'inequalities' must be given")
    if has_v:
        verts = obj["vertices"]
        if not isinstance(verts, list) or not verts:
            raise ParseError("vertices: expected a nonempty list")
        pts = []
        for i, v in enumerate(verts):
            if not isinstance(v, list) or len(v) != d:
                raise ParseError(f"vertices[{i}]: expected a list of {d} rationals")
            pts.append(tuple(parse_rational(x, f"vertices[{i}][{j}]") for j, x in enumerate(v)))
        return hull_canonicalize(pts)
    ineqs = obj["inequalities"]
    if not isinstance(ineqs, list):
        raise ParseError("inequalities: expected a list")
    rows = []
    for i, row in enumerate(ineqs):
        if not isinstance(row, dict) or "normal" not in row or "rhs" not in row:
            raise ParseError(f"inequalities[{i}]: expected {{'normal': [...], 'rhs': ...}}")
        n = row["normal"]
        if not isinstance(n, list) or len(n) != d:
            raise ParseError(f"inequalities[{i}].normal: expected a list of {d} integers")
        normal = tuple(parse_integer(x, f"inequalities[{i}].normal[{j}]") for j, x in enumerate(n))
        rows.append((normal, parse_rational(row["rhs"], f"inequalities[{i}].rhs")))
    return HPolyhedron.from_constraints(d, rows)


def parse_instance(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(obj)


def rat_to_json(q: Fraction) -> int | str:
    q = Fraction(q)
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def instance_to_dict(P: Instance) -> dict:
    if isinstance(P, VPolytope):
        return {
            "format_version": FORMAT_VERSION,
            "dim": P.dim_ambient,
            "vertices": [[rat_to_json(x) for x in v] for v in P.vertices],
        }
    return {
        "format_version": FORMAT_VERSION,
        "dim": P.dim_ambient,
        "inequalities": [{"normal": list(n), "rhs": rat_to_json(c)} for n, c in P.constraints],
    }


def dumps(obj: Any, indent: int | None = None) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent,
                      separators=(",", ": ") if indent else (",", ":"))


def serialize_instance(P: Instance) -> str:
    return dumps(instance_to_dict(P))


def instance_digest(P: Instance) -> str:
    return hashlib.sha256(serialize_instance(P).encode()).hexdigest()


def to_jsonable(obj: Any) -> Any:
    """Exact JSON view: Fractions become ints or 'p/q' strings, tuples become lists."""
    if isinstance(obj, (VPolytope, HPolyhedron)):
        return instance_to_dict(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat_to_json(obj)
    if isinstance(obj, float):
        raise TypeError("floats have no exact JSON form here")
    if hasattr(obj, "item") and callable(obj.item):  # numpy scalars
        return to_jsonable(obj.item())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for extra in ("passed",):
            if hasattr(type(obj), extra):
                out[extra] = to_jsonable(getattr(obj, extra))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(x) for x in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=lambda x: json.dumps(x, sort_keys=True))
        return items
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def parse_report(text: str) -> dict:
    return json.loads(text)
