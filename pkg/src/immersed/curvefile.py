"""``icurve-v1`` JSON curve files.

    {
      "format": "icurve-v1",
      "vertices": [[x0, y0], [x1, y1], ...],
      "metadata": {"genus": 2, "generator": "minimal_curve"}
    }

Coordinates are written with 17 significant digits, so every float64
survives a write/read round trip unchanged.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path
from typing import Any

from immersed.curve import ClosedCurve

FORMAT_TAG = "icurve-v1"


class CurveFileError(ValueError):
    """Malformed curve file; the message names the line or field."""


def _num(v: float) -> str:
    return format(v, ".17g")


def dumps(curve: ClosedCurve, metadata: dict[str, Any] | None = None) -> str:
    rows = ",\n".join(f"    [{_num(x)}, {_num(y)}]" for x, y in curve.vertices)
    parts = [f'  "format": "{FORMAT_TAG}"', f'  "vertices": [\n{rows}\n  ]']
    if metadata:
        parts.append(f'  "metadata": {json.dumps(metadata, sort_keys=True)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def write_curve(curve: ClosedCurve, path: str | os.PathLike, metadata: dict[str, Any] | None = None) -> None:
    Path(path).write_text(dumps(curve, metadata), encoding="utf-8")


def loads(text: str) -> tuple[ClosedCurve, dict[str, Any]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise CurveFileError("top level: expected a JSON object")
    if doc.get("format") != FORMAT_TAG:
        raise CurveFileError(f"format: expected {FORMAT_TAG!r}, got {doc.get('format')!r}")
    raw = doc.get("vertices")
    if not isinstance(raw, list):
        raise CurveFileError("vertices: expected a list of [x, y] pairs")
    pts = []
    for k, item in enumerate(raw):
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
            raise CurveFileError(f"vertices[{k}]: expected [x, y] numbers, got {item!r}")
        x, y = float(item[0]), float(item[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise CurveFileError(f"vertices[{k}]: coordinates must be finite")
        pts.append((x, y))
    meta = doc.get("metadata") or {}
    if not isinstance(meta, dict):
        raise CurveFileError("metadata: expected an object")
    # TooFewVertices surfaces here as a GenericityError
    return ClosedCurve(tuple(pts)), meta


def read_curve(path: str | os.PathLike) -> ClosedCurve:
    return read_curve_with_metadata(path)[0]


def read_curve_with_metadata(path: str | os.PathLike) -> tuple[ClosedCurve, dict[str, Any]]:
    return loads(Path(path).read_text(encoding="utf-8"))
