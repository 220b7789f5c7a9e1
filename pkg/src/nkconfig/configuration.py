"""
The (n_k) configuration model, its verifier and pencil analysis.

A :class:`Configuration` is a list of points and a list of lines together with
the incidences the construction *intends*. :func:`verify` checks those
declarations against the geometry, including every incidence nobody asked for.
"""
from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DependentPencils, SameDirection, SingularMap
from .geometry import AffineMap, Line, Point, rat_str

# Mersenne prime; residues < 2**31 keep every product below 2**62.
_PRIME = 2**31 - 1
_BLOCK = 512


@dataclass(frozen=True, slots=True)
class LineRecord:
    line: Line
    points: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points)))


@dataclass(frozen=True)
class Configuration:
    k: int
    points: tuple[Point, ...]
    lines: tuple[LineRecord, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "lines", tuple(self.lines))

    @property
    def n(self) -> int:
        return len(self.points)

    def line(self, i: int) -> Line:
        return self.lines[i].line

    def point_lines(self) -> list[list[int]]:
        """Declared line ids through each point."""
        out: list[list[int]] = [[] for _ in self.points]
        for li, rec in enumerate(self.lines):
            for pi in rec.points:
                if 0 <= pi < len(out):
                    out[pi].append(li)
        return out

    def with_meta(self, **updates) -> "Configuration":
        meta = dict(self.meta)
        meta.update(updates)
        return Configuration(self.k, self.points, self.lines, meta)

    def geometry_hash(self) -> str:
        """Digest of points, lines and incidences (meta excluded)."""
        doc = {
            "k": self.k,
            "points": [[rat_str(p.x), rat_str(p.y)] for p in self.points],
            "lines": [[list(r.line.coeffs), list(r.points)] for r in self.lines],
        }
        blob = json.dumps(doc, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"Configuration(({self.n}_{self.k}), lines={len(self.lines)})"


@dataclass(frozen=True)
class Violation:
    kind: str
    point_id: Optional[int] = None
    line_id: Optional[int] = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.point_id is not None:
            out["point_id"] = self.point_id
        if self.line_id is not None:
            out["line_id"] = self.line_id
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple[Violation, ...]
    n_points: int
    n_lines: int
    k: int
    connected: Optional[bool] = None

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "n_points": self.n_points,
            "n_lines": self.n_lines,
            "k": self.k,
            "connected": self.connected,
            "violations": [v.to_json() for v in self.violations],
        }

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Pencil:
    direction: tuple[int, int]
    line_ids: frozenset[int]

    def __len__(self) -> int:
        return len(self.line_ids)

    def sorted_ids(self) -> list[int]:
        return sorted(self.line_ids)


def _residue_matrix(values: Sequence[int]) -> np.ndarray:
    return np.array([v % _PRIME for v in values], dtype=np.int64)


def actual_incidences(c: Configuration, prefilter: bool = True) -> list[list[int]]:
    """For every line, the sorted ids of all configuration points lying on it.

    With ``prefilter`` the line equations are first evaluated modulo a prime
    with numpy; only residue-zero pairs are confirmed with exact integers, so
    the result is identical to the exhaustive scan.
    """
    homog = [p.homogeneous() for p in c.points]
    coeffs = [rec.line.coeffs for rec in c.lines]
    result: list[list[int]] = []
    if not prefilter or not homog or not coeffs:
        for a, b, cc in coeffs:
            result.append([i for i, (X, Y, Z) in enumerate(homog) if a * X + b * Y + cc * Z == 0])
        return result

    X = _residue_matrix([h[0] for h in homog])
    Y = _residue_matrix([h[1] for h in homog])
    Z = _residue_matrix([h[2] for h in homog])
    A = _residue_matrix([t[0] for t in coeffs])
    B = _residue_matrix([t[1] for t in coeffs])
    C = _residue_matrix([t[2] for t in coeffs])
    for start in range(0, len(coeffs), _BLOCK):
        sl = slice(start, start + _BLOCK)
        val = (A[sl, None] * X[None, :]) % _PRIME
        val += (B[sl, None] * Y[None, :]) % _PRIME
        val += (C[sl, None] * Z[None, :]) % _PRIME
        val %= _PRIME
        rows, cols = np.nonzero(val == 0)
        hits: dict[int, list[int]] = defaultdict(list)
        for r, col in zip(rows.tolist(), cols.tolist()):
            a, b, cc = coeffs[start + r]
            hx, hy, hz = homog[col]
            if a * hx + b * hy + cc * hz == 0:
                hits[start + r].append(col)
        for li in range(start, min(start + _BLOCK, len(coeffs))):
            result.append(hits.get(li, []))
    return result


def _connected(n_points: int, incidences: list[list[int]]) -> bool:
    parent = list(range(n_points + len(incidences)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for li, pts in enumerate(incidences):
        node = n_points + li
        for p in pts:
            ra, rb = find(node), find(p)
            if ra != rb:
                parent[ra] = rb
    roots = {find(x) for x in range(len(parent))}
    return len(roots) <= 1


def verify(c: Configuration, prefilter: bool = True) -> VerificationReport:
    """Check that ``c`` is a geometric (n_k) configuration, exactly.

    Every declared incidence must hold, and every point must lie on exactly
    ``k`` of the lines (all lines are scanned, so accidental incidences are
    reported as ``unintended_incidence``).
    """
    v: list[Violation] = []
    k = c.k
    n_pts, n_lines = len(c.points), len(c.lines)
    if n_pts != n_lines:
        v.append(Violation("count_mismatch", detail=f"{n_pts} points vs {n_lines} lines"))

    seen_pts: dict[Point, int] = {}
    for i, p in enumerate(c.points):
        if p in seen_pts:
            v.append(Violation("duplicate_point", point_id=i, detail=f"same as point {seen_pts[p]}"))
        else:
            seen_pts[p] = i
    seen_lines: dict[Line, int] = {}
    for i, rec in enumerate(c.lines):
        if rec.line in seen_lines:
            v.append(Violation("duplicate_line", line_id=i, detail=f"same as line {seen_lines[rec.line]}"))
        else:
            seen_lines[rec.line] = i

    actual = actual_incidences(c, prefilter=prefilter)
    point_degree = [0] * n_pts
    for li, rec in enumerate(c.lines):
        declared = set(rec.points)
        for pi in sorted(declared):
            if not 0 <= pi < n_pts:
                v.append(Violation("bad_point_id", point_id=pi, line_id=li))
        got = set(actual[li])
        for pi in sorted(declared - got):
            if 0 <= pi < n_pts:
                v.append(Violation("broken_incidence", point_id=pi, line_id=li,
                                   detail="declared point is not on the line"))
        for pi in sorted(got - declared):
            v.append(Violation("unintended_incidence", point_id=pi, line_id=li,
                               detail="point lies on the line but is not declared"))
        if len(declared) != k:
            v.append(Violation("declared_size", line_id=li, detail=f"{len(declared)} declared points, k={k}"))
        if len(got) != k:
            v.append(Violation("line_degree", line_id=li, detail=f"{len(got)} points on line, k={k}"))
        for pi in got:
            point_degree[pi] += 1
    for pi, deg in enumerate(point_degree):
        if deg != k:
            v.append(Violation("point_degree", point_id=pi, detail=f"on {deg} lines, k={k}"))

    return VerificationReport(
        ok=not v,
        violations=tuple(v),
        n_points=n_pts,
        n_lines=n_lines,
        k=k,
        connected=_connected(n_pts, actual) if n_pts else None,
    )


def pencils(c: Configuration, singletons: bool = False) -> list[Pencil]:
    """Maximal classes of parallel configuration lines, ordered by direction."""
    classes: dict[tuple[int, int], set[int]] = defaultdict(set)
    for i, rec in enumerate(c.lines):
        classes[rec.line.normal].add(i)
    return [Pencil(d, frozenset(ids)) for d, ids in sorted(classes.items())
            if singletons or len(ids) >= 2]


def largest_pencil(c: Configuration) -> Pencil:
    found = pencils(c, singletons=True)
    if not found:
        raise ValueError("configuration has no lines")
    # ties resolve to the first direction in canonical order
    return max(found, key=lambda p: (len(p), [-x for x in p.direction]))


def pencil_points(c: Configuration, p: Pencil) -> set[int]:
    out: set[int] = set()
    for li in p.line_ids:
        out.update(c.lines[li].points)
    return out


def independent_pencils(c: Configuration, p1: Pencil, p2: Pencil) -> bool:
    """True when the two pencils (of different directions) share no point."""
    if p1.direction == p2.direction and p1.line_ids and p2.line_ids:
        raise SameDirection(f"both pencils have direction {p1.direction}")
    # disjoint pencils cover k(p + q) distinct points
    if c.k * (len(p1) + len(p2)) > c.n:
        return False
    return pencil_points(c, p1).isdisjoint(pencil_points(c, p2))


def apply_map(c: Configuration, m: AffineMap) -> Configuration:
    if m.det == 0:
        raise SingularMap("cannot apply a singular map")
    if m.is_identity():
        return c
    points = tuple(m(p) for p in c.points)
    lines = tuple(LineRecord(m.map_line(r.line), r.points) for r in c.lines)
    out = Configuration(c.k, points, lines, dict(c.meta))
    # declared incidences keep their truth value (broken inputs stay broken)
    for before, after in zip(c.lines, out.lines):
        for pi in after.points:
            if 0 <= pi < len(points):
                held = before.line.evaluate(c.points[pi]) == 0
                if held != (after.line.evaluate(points[pi]) == 0):
                    raise AssertionError("affine image changed a declared incidence")
    return out


def _direction_vector(pencil: Pencil) -> tuple[Fraction, Fraction]:
    a, b = pencil.direction
    # along-line vector, oriented with a nonnegative x component
    dx, dy = Fraction(-b), Fraction(a)
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def normalizing_map(horiz: Pencil, vert: Optional[Pencil] = None) -> AffineMap:
    """Linear map turning ``horiz`` horizontal and ``vert`` (if any) vertical."""
    h_ok = horiz.direction == (0, 1)
    v_ok = vert is None or vert.direction == (1, 0)
    if h_ok and v_ok:
        return AffineMap.identity()
    d1 = _direction_vector(horiz)
    if vert is not None:
        if vert.direction == horiz.direction:
            raise DependentPencils("pencils share a direction")
        d2 = _direction_vector(vert)
    elif d1[0] != 0:
        d2 = (Fraction(0), Fraction(1))
    else:
        d2 = (Fraction(-1), Fraction(0))
    # columns d1, d2 -> e1, e2
    basis = AffineMap(d1[0], d2[0], d1[1], d2[1])
    return basis.inverse()


def normalize_pencils(c: Configuration, horiz: Pencil,
                      vert: Optional[Pencil] = None) -> tuple[Configuration, AffineMap]:
    """Affine copy of ``c`` with ``horiz`` horizontal and ``vert`` vertical.

    Returns the transformed configuration together with the map used.
    """
    if vert is not None and not independent_pencils(c, horiz, vert):
        raise DependentPencils("pencils share configuration points")
    m = normalizing_map(horiz, vert)
    return apply_map(c, m), m


def relabel(c: Configuration, point_perm: Sequence[int], line_perm: Sequence[int]) -> Configuration:
    """Reorder points and lines: new point i is old point ``point_perm[i]``."""
    inv = {old: new for new, old in enumerate(point_perm)}
    points = tuple(c.points[old] for old in point_perm)
    lines = tuple(LineRecord(c.lines[old].line, tuple(inv[p] for p in c.lines[old].points))
                  for old in line_perm)
    return Configuration(c.k, points, lines, dict(c.meta))


def from_lines(k: int, points: Iterable[Point], lines: Iterable[Line], meta: Optional[dict] = None) -> Configuration:
    """Build a configuration declaring every incidence that actually holds."""
    points = tuple(points)
    recs = []
    homog = [p.homogeneous() for p in points]
    for l in lines:
        ids = tuple(i for i, (X, Y, Z) in enumerate(homog) if l.a * X + l.b * Y + l.c * Z == 0)
        recs.append(LineRecord(l, ids))
    return Configuration(k, points, tuple(recs), dict(meta or {}))


def disjoint_union(c1: Configuration, c2: Configuration) -> Configuration:
    """Side-by-side union; the caller must keep the parts in general position."""
    if c1.k != c2.k:
        raise ValueError("union of configurations with different k")
    shift = len(c1.points)
    lines = c1.lines + tuple(LineRecord(r.line, tuple(p + shift for p in r.points)) for r in c2.lines)
    return Configuration(c1.k, c1.points + c2.points, lines,
                         {"operation": "union", "parents": [c1.geometry_hash(), c2.geometry_hash()]})
