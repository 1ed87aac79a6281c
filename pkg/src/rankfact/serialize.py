"""JSON documents for matrices, witnesses and reports.

Matrix format::

    {"m": 2, "n": 2, "grade": 1, "entries": [["0", "1"], [], [], ["1"]]}

``entries`` is row-major with one ascending coefficient list per entry, each
coefficient a canonical rational string. Output is deterministic: keys sorted,
two-space indent, trailing newline.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .errors import GradeError, ParseError
from .polycore import NEG_INF, Poly, format_rational, poly_display, poly_from_json, poly_to_json
from .polymat import PolyMatrix

_MATRIX_KEYS = {"m", "n", "grade", "entries"}


def matrix_to_json(M: PolyMatrix) -> dict:
    return {"m": M.m, "n": M.n, "grade": M.grade,
            "entries": [poly_to_json(e) for row in M.entries for e in row]}


def _int_field(obj: dict, key: str, path: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ParseError(f"{path}.{key}: expected a nonnegative integer, got {v!r}")
    return v


def matrix_from_json(obj: Any, path: str = "$") -> PolyMatrix:
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected an object with fields m, n, grade, entries")
    missing = _MATRIX_KEYS - obj.keys()
    if missing:
        raise ParseError(f"{path}: missing field(s) {', '.join(sorted(missing))}")
    extra = obj.keys() - _MATRIX_KEYS
    if extra:
        raise ParseError(f"{path}: unexpected field(s) {', '.join(sorted(extra))}")
    m, n, grade = (_int_field(obj, k, path) for k in ("m", "n", "grade"))
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != m * n:
        raise ParseError(f"{path}.entries: expected a list of {m * n} polynomials")
    polys = []
    for k, e in enumerate(entries):
        try:
            polys.append(poly_from_json(e))
        except ParseError as exc:
            raise ParseError(f"{path}.entries[{k}] (row {k // n}, column {k % n}): {exc}") from None
    deg = max((p.degree for p in polys), default=NEG_INF)
    if deg > grade:
        raise GradeError(f"{path}.grade: {grade} is below the largest entry degree {deg}")
    return PolyMatrix([polys[i * n:(i + 1) * n] for i in range(m)], grade, shape=(m, n))


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def read_document(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return loads(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def parse_matrix_text(text: str) -> PolyMatrix:
    return matrix_from_json(loads(text))


def parse_matrix_file(path: Union[str, Path]) -> PolyMatrix:
    return matrix_from_json(read_document(path), f"{path}: $")


def to_jsonable(obj: Any) -> Any:
    """Convert library values to plain JSON data."""
    if isinstance(obj, PolyMatrix):
        return matrix_to_json(obj)
    if isinstance(obj, Poly):
        return {"coeffs": poly_to_json(obj), "display": poly_display(obj)}
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        if obj == NEG_INF:
            return "-inf"
        raise TypeError(f"unexpected float {obj!r}")
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, ensure_ascii=False, indent=2) + "\n"
