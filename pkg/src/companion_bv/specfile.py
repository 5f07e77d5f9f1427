"""JSON function specs.

Schema::

    {"interval": [a, b],
     "segments": [{"right": r1, "coeffs": [c0, c1, ...]}, ...],
     "kind": "cdf"}            # optional

Segment ``i`` spans ``[previous right or a, right]``; coefficients are in
ascending degree of the absolute variable ``t``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .core import Interval, PolySegment, PwmFunction
from .errors import ConstructionError, SpecFileError


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecFileError(path, f"expected a number, got {type(value).__name__}")
    if not math.isfinite(value):
        raise SpecFileError(path, "must be finite")
    return float(value)


def function_from_dict(doc: Any) -> PwmFunction:
    if not isinstance(doc, dict):
        raise SpecFileError("$", "top level must be an object")
    if "interval" not in doc:
        raise SpecFileError("interval", "missing")
    iv = doc["interval"]
    if not isinstance(iv, list) or len(iv) != 2:
        raise SpecFileError("interval", "expected [a, b]")
    a, b = _number(iv[0], "interval[0]"), _number(iv[1], "interval[1]")
    try:
        interval = Interval(a, b)
    except ConstructionError as exc:
        raise SpecFileError("interval", str(exc)) from None
    segs = doc.get("segments")
    if not isinstance(segs, list) or not segs:
        raise SpecFileError("segments", "expected a non-empty list")
    out = []
    left = a
    for i, seg in enumerate(segs):
        path = f"segments[{i}]"
        if not isinstance(seg, dict):
            raise SpecFileError(path, "expected an object")
        if "right" not in seg:
            raise SpecFileError(f"{path}.right", "missing")
        right = _number(seg["right"], f"{path}.right")
        coeffs = seg.get("coeffs")
        if not isinstance(coeffs, list) or not coeffs:
            raise SpecFileError(f"{path}.coeffs", "expected a non-empty list of numbers")
        cs = tuple(_number(c, f"{path}.coeffs[{k}]") for k, c in enumerate(coeffs))
        try:
            out.append(PolySegment(left, right, cs))
        except ConstructionError as exc:
            raise SpecFileError(path, str(exc)) from None
        left = right
    if left != b:
        raise SpecFileError(f"segments[{len(segs) - 1}].right", f"last segment must end at b={b}")
    return PwmFunction(interval, tuple(out))


def function_to_dict(f: PwmFunction, kind: str | None = None) -> dict:
    doc: dict[str, Any] = {
        "interval": [f.interval.a, f.interval.b],
        "segments": [{"right": s.right, "coeffs": list(s.coeffs)} for s in f.segments],
    }
    if kind is not None:
        doc["kind"] = kind
    return doc


def load_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecFileError(str(path), f"cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(str(path), f"invalid JSON at line {exc.lineno}: {exc.msg}") from None


def load_function(path: str | Path) -> PwmFunction:
    return function_from_dict(load_document(path))
