"""
Body documents: the JSON and CSV forms of a polygon handed to and produced
by the command line.
"""

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from errors import DegenerateInput, DocumentError
from geometry_core import CONVEXITY_TOL, ConvexPolygon, make_polygon


def fmt17(value: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(value), ".17g")


def _pair(value: Any, what: str) -> List[float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise DocumentError(f"{what} must be an [x, y] pair, got {value!r}")
    try:
        pair = [float(value[0]), float(value[1])]
    except (TypeError, ValueError):
        raise DocumentError(f"{what} must hold two numbers, got {value!r}")
    if not all(np.isfinite(pair)):
        raise DocumentError(f"{what} must be finite, got {value!r}")
    return pair


@dataclass
class BodyDocument:
    """A named polygon with an optional polarity centre."""
    vertices: List[List[float]]
    centre: Optional[List[float]] = None
    name: str = "body"

    @classmethod
    def from_polygon(cls, polygon: ConvexPolygon, centre: Optional[List[float]] = None,
                     name: str = "body") -> 'BodyDocument':
        return cls(vertices=polygon.to_list(), centre=centre, name=name)

    @classmethod
    def from_dict(cls, data: Any) -> 'BodyDocument':
        if not isinstance(data, dict):
            raise DocumentError("body document must be a JSON object")
        if 'vertices' not in data:
            raise DocumentError("body document has no 'vertices'")
        raw = data['vertices']
        if not isinstance(raw, list) or len(raw) < 3:
            raise DocumentError("'vertices' must list at least three points")
        vertices = [_pair(v, f"vertex {i}") for i, v in enumerate(raw)]
        centre = data.get('centre')
        return cls(
            vertices=vertices,
            centre=None if centre is None else _pair(centre, "centre"),
            name=str(data.get('name', 'body')),
        )

    @classmethod
    def from_json(cls, text: str) -> 'BodyDocument':
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError(f"malformed JSON: {e}")
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'name': self.name, 'vertices': self.vertices}
        if self.centre is not None:
            data['centre'] = self.centre
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_polygon(self, tol: float = CONVEXITY_TOL) -> ConvexPolygon:
        """Canonical polygon of the vertex list; degenerate lists become DocumentError."""
        try:
            return make_polygon(self.vertices, tol)
        except DegenerateInput as e:
            raise DocumentError(f"{self.name}: {e}")


def vertices_to_csv(polygon: ConvexPolygon) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["x", "y"])
    for x, y in polygon.vertices:
        writer.writerow([fmt17(x), fmt17(y)])
    return buffer.getvalue()


def vertices_from_csv(text: str) -> ConvexPolygon:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["x", "y"]:
        raise DocumentError("vertex CSV must start with an 'x,y' header")
    points = [_pair(row, f"row {i}") for i, row in enumerate(rows[1:], start=2) if row]
    try:
        return make_polygon(points)
    except DegenerateInput as e:
        raise DocumentError(str(e))


def load_document(path: Path) -> BodyDocument:
    """Read a JSON document, or a vertex CSV when the suffix is .csv."""
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".csv":
        return BodyDocument.from_polygon(vertices_from_csv(text), name=path.stem)
    return BodyDocument.from_json(text)
