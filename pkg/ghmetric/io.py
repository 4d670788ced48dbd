"""Space files and run reports.

A space file is one JSON document::

    {"name": "pair", "points": ["a", "b"], "dist": [[0, 1], [1, 0]]}

Entries may be integers, decimals or ``"p/q"`` strings; decimals are read exactly.
"""

import hashlib
import json
from decimal import Decimal
from pathlib import Path
from typing import Any

from ghmetric.errors import ParseError, ValidationError
from ghmetric.models import FiniteMetricSpace, GHModel, Matrix, Scalar


class SpaceFile(GHModel):
    name: str = ""
    points: tuple[str, ...]
    dist: Matrix

    def to_space(self) -> FiniteMetricSpace:
        return FiniteMetricSpace(labels=self.points, dist=self.dist)


class RunReport(GHModel):
    command: str
    inputs: dict[str, str] = {}
    value: Scalar | None = None
    value_decimal: str | None = None
    witness: tuple[tuple[int, int], ...] | None = None
    nodes: int | None = None
    millis: int = 0
    details: dict[str, Any] = {}

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


def _read_text(source: str | Path) -> tuple[str, str]:
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return source, "<text>"
    path = Path(source)
    try:
        return path.read_text(encoding="utf-8"), str(path)
    except OSError as e:
        raise ParseError(f"cannot read space file: {e.strerror}", location=str(path)) from e


def read_space_file(source: str | Path) -> SpaceFile:
    """Parse a space document (a path, or the JSON text itself) without checking axioms."""
    text, origin = _read_text(source)
    try:
        data = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location=f"{origin}:{e.lineno}:{e.colno}") from e
    if not isinstance(data, dict):
        raise ParseError("space file must hold a JSON object", location=origin)

    try:
        return SpaceFile.model_validate(data)
    except ValidationError as e:
        if e.original_error is None:
            raise
        first = e.original_error.errors()[0]
        field = ".".join(map(str, first["loc"]))
        raise ParseError(str(e), location=f"{origin}:{field}") from e


def parse_space(source: str | Path) -> FiniteMetricSpace:
    """Load and validate a metric space; axiom errors keep their class and gain the origin."""
    document = read_space_file(source)
    try:
        return document.to_space()
    except ValidationError as e:
        origin = "<text>" if isinstance(source, str) and source.lstrip().startswith("{") else source
        e.args = (f"{origin}: {e}",)
        raise


def _literal(value: Any) -> int | str:
    return value.numerator if value.denominator == 1 else str(value)


def emit_space(space: FiniteMetricSpace, name: str = "") -> str:
    document = {
        "name": name,
        "points": list(space.labels),
        "dist": [[_literal(v) for v in row] for row in space.dist],
    }
    return json.dumps(document) + "\n"


def space_digest(space: FiniteMetricSpace) -> str:
    return hashlib.sha256(emit_space(space).encode("utf-8")).hexdigest()
