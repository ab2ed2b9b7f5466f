"""JSON schemas for forms, targets, matrices and reports.

Form files:
    {"dim": 6, "degree": 3, "scalar": "rational" | "float" | "quadext",
     "d": <int, quadext only>, "coeffs": {"1,2,3": "1", "4,5,6": "1"}}
Keys are comma-joined strictly increasing 1-based indices; values follow the
scalar serialization (rationals as "p/q" strings, floats as numbers,
quadext as {"a": "p/q", "b": "p/q", "d": n}).

Target files:
    {"case": 1 | 2 | 3, "n": <int, case 3 only>, "values": {"1,2,3": 0.25, ...}}
"""

from __future__ import annotations

import json
from fractions import Fraction

from .multilinear import AlternatingForm
from .perturb import PartialTarget
from .scalars import QuadExt, scalar_from_json, scalar_to_json


class FormFormatError(ValueError):
    pass


def _parse_key(s, degree):
    parts = str(s).split(",")
    try:
        idx = tuple(int(p) for p in parts)
    except ValueError:
        raise FormFormatError(f"bad index tuple {s!r}")
    if len(idx) != degree:
        raise FormFormatError(f"bad index tuple {s!r}: expected {degree} indices")
    if list(idx) != sorted(set(idx)):
        raise FormFormatError("indices not strictly increasing")
    return idx


def form_to_dict(x):
    kind = x.scalar_kind()
    out = {"dim": x.dim, "degree": x.degree, "scalar": kind,
           "coeffs": {",".join(map(str, k)): scalar_to_json(v) for k, v in x.terms()}}
    if kind == "quadext":
        ds = {v.d for v in x.coeffs.values() if isinstance(v, QuadExt)}
        if len(ds) != 1:
            raise FormFormatError("quadext form must use a single discriminant")
        out["d"] = ds.pop()
    return out


def form_from_dict(data):
    if not isinstance(data, dict):
        raise FormFormatError("form document must be a JSON object")
    try:
        dim = int(data["dim"])
        degree = int(data["degree"])
    except (KeyError, TypeError, ValueError):
        raise FormFormatError("form document needs integer 'dim' and 'degree'")
    kind = data.get("scalar", "rational")
    if kind not in ("rational", "float", "quadext"):
        raise FormFormatError(f"unknown scalar kind {kind!r}")
    d = data.get("d")
    coeffs = {}
    for key, val in (data.get("coeffs") or {}).items():
        idx = _parse_key(key, degree)
        if any(i < 1 or i > dim for i in idx):
            raise FormFormatError(f"bad index tuple {key!r}: out of range for dim {dim}")
        try:
            coeffs[idx] = scalar_from_json(val, kind, d=d)
        except ValueError as exc:
            raise FormFormatError(str(exc))
    return AlternatingForm(dim, degree, coeffs)


def parse_form(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormFormatError(f"malformed JSON: {exc}")
    return form_from_dict(data)


def target_to_dict(t):
    out = {"case": t.case,
           "values": {",".join(map(str, k)): v for k, v in sorted(t.values.items())}}
    if t.n:
        out["n"] = t.n
    return out


def target_from_dict(data):
    if not isinstance(data, dict):
        raise FormFormatError("target document must be a JSON object")
    try:
        case = int(data["case"])
    except (KeyError, TypeError, ValueError):
        raise FormFormatError("target document needs an integer 'case'")
    n = data.get("n")
    values = {}
    degree = 2 if case == 3 else 3
    for key, val in (data.get("values") or {}).items():
        idx = _parse_key(key, degree)
        values[idx] = float(val)
    try:
        return PartialTarget(case, values, n=int(n) if n else None)
    except ValueError as exc:
        raise FormFormatError(str(exc))


def parse_target(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormFormatError(f"malformed JSON: {exc}")
    return target_from_dict(data)


def matrix_to_json(M):
    return [[scalar_to_json(v) for v in row] for row in M]


def scalarish_to_json(v):
    """Scalar of any supported kind, for report payloads."""
    return scalar_to_json(v if not isinstance(v, int) else Fraction(v))
