"""JSON interchange for configurations (rationals travel as ``"num/den"`` strings)."""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import IO, Union

from .configuration import Configuration, LineRecord
from .geometry import Line, Point, rat_str


def to_document(c: Configuration) -> dict:
    return {
        "k": c.k,
        "points": [[rat_str(p.x), rat_str(p.y)] for p in c.points],
        "lines": [{"coeffs": [str(v) for v in r.line.coeffs], "points": list(r.points)}
                  for r in c.lines],
        "meta": c.meta,
    }


def from_document(doc: dict) -> Configuration:
    points = tuple(Point(Fraction(x), Fraction(y)) for x, y in doc["points"])
    lines = []
    for entry in doc["lines"]:
        a, b, c = (int(v) for v in entry["coeffs"])
        lines.append(LineRecord(Line.from_coeffs(a, b, c), tuple(int(i) for i in entry["points"])))
    return Configuration(int(doc["k"]), points, tuple(lines), dict(doc.get("meta", {})))


def dumps(c: Configuration) -> str:
    return json.dumps(to_document(c), indent=1) + "\n"


def loads(text: str) -> Configuration:
    return from_document(json.loads(text))


PathLike = Union[str, Path]


def read(source: Union[PathLike, IO[str]] = "-") -> Configuration:
    if source == "-":
        return loads(sys.stdin.read())
    if hasattr(source, "read"):
        return loads(source.read())
    return loads(Path(source).read_text())


def write(c: Configuration, target: Union[PathLike, IO[str]] = "-") -> None:
    text = dumps(c)
    if target == "-":
        sys.stdout.write(text)
    elif hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text)
