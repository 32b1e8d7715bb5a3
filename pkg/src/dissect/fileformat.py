"""JSON arrangement files.

Every file is an object with a ``type`` field; rationals are ``"p/q"`` or
``"p"`` strings (plain JSON integers are accepted too).  Keys ``description``
and ``expected`` are free-form and ignored by the parser.

    {"type": "hyperplane", "ambient_dim": 2,
     "hyperplanes": [{"normal": ["1", "0"], "offset": "0"}, ...]}
    {"type": "toric", "ambient_dim": 2,
     "hypersurfaces": [{"covector": [1, 2], "offset": "0"}, ...]}
    {"type": "sphere" | "projective", "ambient_dim": 2,
     "normals": [["1", "0", "0"], ...]}
    {"type": "circle", "points": ["0", "1/2"]}
    {"type": "abstract", "ambient_dim": 1,
     "flats": [{"id": "X", "dim": 1, "poin_c": [1, 1]}, ...],
     "order": [["X", "p"], ...]}
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .arrangement import ArrangementError, ArrangementModel, FlatNode, model_from_flats
from .builders import (
    BuildError,
    CentralSpec,
    CircleSpec,
    HyperplaneSpec,
    ToricSpec,
    build_circle,
    build_hyperplane,
    build_projective,
    build_sphere,
    build_toric,
)
from .exactmath import IntPolynomial, format_rational, parse_rational
from .poset import PosetError

TYPES = ("hyperplane", "toric", "sphere", "projective", "circle", "abstract")


class ParseError(ValueError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ValidationError(ValueError):
    pass


@dataclass
class ArrangementFile:
    type: str
    ambient_dim: int
    spec: Any
    raw: dict

    def build(self, cap: int | None = None) -> ArrangementModel:
        if self.type == "abstract":
            return self.spec
        builder = {
            "hyperplane": build_hyperplane,
            "toric": build_toric,
            "sphere": build_sphere,
            "projective": build_projective,
        }.get(self.type)
        if builder is None:
            return build_circle(self.spec)
        return builder(self.spec, cap)


def _get(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object")
    if key not in obj:
        raise ParseError(f"{path}.{key}", "missing")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"{path}.{key}", f"expected {kind.__name__}")
    return val


def _int(val, path) -> int:
    if isinstance(val, bool) or not isinstance(val, int):
        raise ParseError(path, "expected an integer")
    return val


def _rational(val, path):
    if isinstance(val, float):
        raise ParseError(path, "floats are not allowed; write rationals as \"p/q\" strings")
    try:
        return parse_rational(val)
    except ValueError as exc:
        if isinstance(val, str) and "zero denominator" in str(exc):
            raise ValidationError(f"{path}: zero denominator") from None
        raise ParseError(path, str(exc)) from None


def _list(val, path) -> list:
    if not isinstance(val, list):
        raise ParseError(path, "expected a list")
    return val


def parse(data: bytes | str) -> ArrangementFile:
    """Parse and validate an arrangement file."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("$", f"not UTF-8: {exc}") from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError("$", f"invalid JSON: {exc}") from None
    kind = _get(raw, "type", "$", str)
    if kind not in TYPES:
        raise ParseError("$.type", f"unknown type {kind!r}")
    try:
        return _PARSERS[kind](raw)
    except (BuildError, ArrangementError, PosetError) as exc:
        raise ValidationError(str(exc)) from exc
    except ValueError as exc:
        if isinstance(exc, (ParseError, ValidationError)):
            raise
        raise ValidationError(str(exc)) from exc


def _parse_hyperplane(raw):
    l = _int(_get(raw, "ambient_dim", "$"), "$.ambient_dim")
    hs = []
    for i, h in enumerate(_list(_get(raw, "hyperplanes", "$"), "$.hyperplanes")):
        p = f"$.hyperplanes[{i}]"
        normal = [_rational(c, f"{p}.normal[{j}]") for j, c in enumerate(_list(_get(h, "normal", p), f"{p}.normal"))]
        hs.append((normal, _rational(_get(h, "offset", p), f"{p}.offset")))
    return ArrangementFile("hyperplane", l, HyperplaneSpec(l, hs), raw)


def _parse_toric(raw):
    l = _int(_get(raw, "ambient_dim", "$"), "$.ambient_dim")
    hs = []
    for i, h in enumerate(_list(_get(raw, "hypersurfaces", "$"), "$.hypersurfaces")):
        p = f"$.hypersurfaces[{i}]"
        cov = [_int(c, f"{p}.covector[{j}]") for j, c in enumerate(_list(_get(h, "covector", p), f"{p}.covector"))]
        off = _rational(h.get("offset", "0"), f"{p}.offset")
        if not 0 <= off < 1:
            raise ValidationError(f"{p}.offset: must lie in [0, 1)")
        hs.append((cov, off))
    return ArrangementFile("toric", l, ToricSpec(l, hs), raw)


def _parse_central(raw):
    l = _int(_get(raw, "ambient_dim", "$"), "$.ambient_dim")
    normals = []
    for i, v in enumerate(_list(_get(raw, "normals", "$"), "$.normals")):
        normals.append([_rational(c, f"$.normals[{i}][{j}]") for j, c in enumerate(_list(v, f"$.normals[{i}]"))])
    return ArrangementFile(raw["type"], l, CentralSpec(l, normals), raw)


def _parse_circle(raw):
    pts = [_rational(x, f"$.points[{i}]") for i, x in enumerate(_list(_get(raw, "points", "$"), "$.points"))]
    if not pts:
        raise ValidationError("$.points: a circle arrangement needs at least one point")
    return ArrangementFile("circle", 1, CircleSpec(pts), raw)


def _parse_abstract(raw):
    l = _int(_get(raw, "ambient_dim", "$"), "$.ambient_dim")
    flats = []
    for i, f in enumerate(_list(_get(raw, "flats", "$"), "$.flats")):
        p = f"$.flats[{i}]"
        if not isinstance(f, dict) or "poin_c" not in f:
            raise ValidationError(f"{p}.poin_c: missing")
        fid = _get(f, "id", p, str)
        dim = _int(_get(f, "dim", p), f"{p}.dim")
        coeffs = [_int(c, f"{p}.poin_c[{j}]") for j, c in enumerate(_list(f["poin_c"], f"{p}.poin_c"))]
        flats.append(FlatNode(fid, dim, IntPolynomial(tuple(coeffs))))
    order = []
    for i, pair in enumerate(_list(raw.get("order", []), "$.order")):
        pair = _list(pair, f"$.order[{i}]")
        if len(pair) != 2 or not all(isinstance(x, str) for x in pair):
            raise ParseError(f"$.order[{i}]", "expected [lower_id, upper_id]")
        order.append(tuple(pair))
    model = model_from_flats(l, flats, order, "abstract", asserted_cellular=True)
    return ArrangementFile("abstract", l, model, raw)


_PARSERS = {
    "hyperplane": _parse_hyperplane,
    "toric": _parse_toric,
    "sphere": _parse_central,
    "projective": _parse_central,
    "circle": _parse_circle,
    "abstract": _parse_abstract,
}


def dump_spec(kind: str, spec, **extra) -> dict:
    """Inverse of :func:`parse` for the concrete families."""
    if kind == "hyperplane":
        body = {"ambient_dim": spec.ambient_dim, "hyperplanes": [
            {"normal": [format_rational(c) for c in n], "offset": format_rational(o)} for n, o in spec.hyperplanes]}
    elif kind == "toric":
        body = {"ambient_dim": spec.ambient_dim, "hypersurfaces": [
            {"covector": list(c), "offset": format_rational(o)} for c, o in spec.hypersurfaces]}
    elif kind in ("sphere", "projective"):
        body = {"ambient_dim": spec.ambient_dim, "normals": [[format_rational(c) for c in v] for v in spec.normals]}
    elif kind == "circle":
        body = {"points": [format_rational(p) for p in spec.points]}
    else:
        raise ValueError(f"cannot dump {kind!r}")
    return {"type": kind, **body, **extra}
