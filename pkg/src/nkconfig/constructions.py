"""
Affine replication and affine switch on (n_k) configurations.

Both constructions pick their free parameters (frame, axis, ratios, h)
deterministically from a seeded stream, build the output, and hand it to
:func:`~nkconfig.configuration.verify`. A construction never returns an
unverified configuration; when every attempt degenerates it raises
:class:`~nkconfig.errors.DegenerateAfterRetries`.
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .configuration import (
    Configuration,
    LineRecord,
    Pencil,
    apply_map,
    independent_pencils,
    largest_pencil,
    normalizing_map,
    verify,
)
from .errors import DegenerateAfterRetries, DependentPencils, InputNotConfiguration, RTooLarge
from .geometry import (
    AffineMap,
    Line,
    Point,
    intersect,
    line_through,
    orthogonal_affinity,
    pencil_center,
    pencil_center_y,
    switch_family,
)

log = logging.getLogger(__name__)

DEFAULT_RETRIES = 8


@dataclass(frozen=True)
class ReplicationResult:
    output: Configuration
    new_pencil: Pencil
    axis: Line
    fixed_points: tuple[Point, ...]
    ratios: tuple[Fraction, ...]
    attempts: int = 1


@dataclass(frozen=True)
class SwitchResult:
    output: Configuration
    removed_line_ids: tuple[int, ...]
    centers: tuple[Point, ...]
    h: int
    attempts: int = 1
    frame: Optional[AffineMap] = None


def _stream(c: Configuration, seed: int, tag: str) -> random.Random:
    return random.Random(f"{tag}:{c.geometry_hash()}:{seed}")


def _random_rational(rng: random.Random, lo: int = 1, hi: int = 31) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(lo, hi))


def _history(parent: Configuration) -> list[dict]:
    hist = parent.meta.get("history")
    if hist is not None:
        return list(hist)
    base = {k: v for k, v in parent.meta.items() if k != "history"}
    return [base] if base else []


def _provenance(parent: Configuration, operation: str, params: dict, attempts: int) -> dict:
    step = {"operation": operation, "params": params,
            "parent": parent.geometry_hash(), "attempts": attempts}
    return {**step, "history": _history(parent) + [step]}


def _require_configuration(c: Configuration, k: int, what: str) -> None:
    if c.k != k:
        raise InputNotConfiguration(f"{what} needs an ({c.n}_{k}) input, got k={c.k}")
    report = verify(c)
    if not report.ok:
        raise InputNotConfiguration(f"{what} input does not verify: "
                                    f"{[v.kind for v in report.violations[:5]]}")


# ----------------------------------------------------------------------------
# affine replication

def _general_position(c: Configuration) -> bool:
    """No vertical line and no two points at the same height."""
    if any(rec.line.is_vertical() for rec in c.lines):
        return False
    return len({p.y for p in c.points}) == len(c.points)


def _shear(u: Fraction, s: Fraction) -> AffineMap:
    # x' = x + u*y, y' = s*x' + y; determinant 1
    return AffineMap(Fraction(1), u, s, 1 + s * u)


def _replication_frame(c: Configuration, rng: random.Random, fresh: bool) -> tuple[Configuration, AffineMap]:
    if not fresh and _general_position(c):
        return c, AffineMap.identity()
    for _ in range(256):
        u = _random_rational(rng) * rng.choice((1, -1))
        s = _random_rational(rng) * rng.choice((1, -1))
        m = _shear(u, s)
        moved = apply_map(c, m)
        if _general_position(moved):
            return moved, m
    raise DegenerateAfterRetries("no shear puts the input in general position")


def _axis_abscissa(c: Configuration, rng: random.Random, jitter: bool) -> Fraction:
    xs = [p.x for p in c.points]
    lines = [rec.line for rec in c.lines]
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            q = intersect(lines[i], lines[j])
            if q is not None:
                xs.append(q.x)
    # off the integer grid: integer axes and integer ratios collide easily
    x_axis = Fraction(math.floor(max(xs))) + Fraction(4, 3)
    if jitter:
        x_axis += _random_rational(rng, 1, 9)
    point_heights = {p.y for p in c.points}
    # F_l must not share a height with any point, or it would land on l_P
    while any(l.y_at(x_axis) in point_heights for l in lines):
        x_axis += 1
    return x_axis


def affine_replication(c: Configuration, k: int, *, seed: int = 0,
                       max_retries: int = DEFAULT_RETRIES) -> ReplicationResult:
    """Turn an (m_{k-1}) configuration into a (((k+1)m)_k) one with an m-line pencil.

    The input is sheared (if needed) so no line is vertical and no two points
    share a y-coordinate; the axis is a vertical line to the right of every
    pairwise line intersection. ``k-1`` orthogonal affinities with that axis
    produce the copies; the axis points ``F_l`` and the horizontal orbit lines
    ``l_P`` complete the configuration.
    """
    if k < 3:
        raise ValueError("affine replication produces k >= 3")
    _require_configuration(c, k - 1, "affine replication")
    m = c.n
    rng = _stream(c, seed, "AR")
    for attempt in range(max_retries + 1):
        fresh = attempt > 0
        base, frame = _replication_frame(c, rng, fresh)
        x_axis = _axis_abscissa(base, rng, jitter=fresh)
        axis = Line.from_coeffs(1, 0, -x_axis)
        if fresh:
            ratios: list[Fraction] = []
            while len(ratios) < k - 1:
                r = _random_rational(rng, 1, 7) * rng.choice((1, -1))
                if r not in (0, 1) and r not in ratios:
                    ratios.append(r)
        else:
            ratios = [Fraction(-i) for i in range(1, k)]

        copies = [base] + [apply_map(base, orthogonal_affinity(axis, r)) for r in ratios]
        fixed = [intersect(rec.line, axis) for rec in base.lines]

        points: list[Point] = []
        for cp in copies:
            points.extend(cp.points)
        points.extend(fixed)
        lines: list[LineRecord] = []
        for i, cp in enumerate(copies):
            for li, rec in enumerate(cp.lines):
                lines.append(LineRecord(rec.line, tuple(i * m + p for p in rec.points) + (k * m + li,)))
        orbit_ids = []
        for pi, p in enumerate(base.points):
            orbit_ids.append(len(lines))
            lines.append(LineRecord(Line.from_coeffs(0, 1, -p.y), tuple(i * m + pi for i in range(k))))

        assert len(points) == (k + 1) * m and len(lines) == (k + 1) * m
        params = {"k": k, "axis": list(axis.coeffs), "ratios": [str(r) for r in ratios],
                  "frame": frame.to_json(), "seed": seed}
        out = Configuration(k, tuple(points), tuple(lines),
                            _provenance(c, "affine_replication", params, attempt + 1))
        report = verify(out)
        if report.ok:
            return ReplicationResult(out, Pencil((0, 1), frozenset(orbit_ids)), axis,
                                     tuple(fixed), tuple(ratios), attempt + 1)
        log.debug("AR attempt %d degenerate: %s", attempt, report.violations[:3])
    raise DegenerateAfterRetries(f"affine replication failed after {max_retries + 1} attempts")


# ----------------------------------------------------------------------------
# affine switch

_QUARTER_TURN = AffineMap(Fraction(0), Fraction(-1), Fraction(1), Fraction(0))


def _switch_normalizer(pencil_h: Optional[Pencil], pencil_v: Optional[Pencil]) -> AffineMap:
    if pencil_h is not None:
        return normalizing_map(pencil_h, pencil_v)
    # only a vertical pencil: make it horizontal, then turn it a quarter
    return _QUARTER_TURN.compose(normalizing_map(pencil_v))


def _switch_frame(c: Configuration, removed: list[int], rng: random.Random, fresh: bool,
                  one_pencil: Optional[str]) -> AffineMap:
    """Translation (plus a pencil-preserving shear) placing the origin generically."""
    xmin = min(p.x for p in c.points)
    ymin = min(p.y for p in c.points)
    for _ in range(256):
        if fresh:
            dx = 1 - xmin + _random_rational(rng, 1, 17)
            dy = 1 - ymin + _random_rational(rng, 1, 17)
            u = _random_rational(rng, 1, 9) * rng.choice((1, -1)) if one_pencil else Fraction(0)
        else:
            dx, dy, u = Fraction(7, 5) - xmin, Fraction(5, 7) - ymin, Fraction(0)
        if one_pencil == "h":
            shear = AffineMap(Fraction(1), u, Fraction(0), Fraction(1))
        elif one_pencil == "v":
            shear = AffineMap(Fraction(1), Fraction(0), u, Fraction(1))
        else:
            shear = AffineMap.identity()
        frame = shear.compose(AffineMap.translation(dx, dy))
        origin_clear = all(frame(p) != Point(Fraction(0), Fraction(0)) for p in c.points)
        removed_clear = all(frame.map_line(c.lines[li].line).c != 0 for li in removed)
        if origin_clear and removed_clear:
            return frame
        fresh = True
    raise DegenerateAfterRetries("no frame keeps the origin generic")


def affine_switch(c: Configuration, pencil_h: Optional[Pencil], pencil_v: Optional[Pencil] = None,
                  s: int = 1, t: int = 0, h: Optional[int] = None, *, seed: int = 0,
                  max_retries: int = DEFAULT_RETRIES) -> SwitchResult:
    """Build a ((((k-1)m + r)_k) configuration from an (m_k) one, r = s + t.

    ``s`` lines are removed from ``pencil_h`` and ``t`` from ``pencil_v``
    (which must be independent of ``pencil_h``). After the pencils are made
    horizontal / vertical, ``k-2`` images under the diagonal switch family are
    added; the points of each removed line are joined to their images, and
    those joins meet in a new center on a coordinate axis.
    """
    k = c.k
    if k < 3:
        raise ValueError("affine switch needs k >= 3")
    _require_configuration(c, k, "affine switch")
    if pencil_h is None and pencil_v is None:
        raise ValueError("at least one pencil is required")
    p_size = len(pencil_h) if pencil_h is not None else 0
    q_size = len(pencil_v) if pencil_v is not None else 0
    if s < 0 or t < 0 or s + t < 1:
        raise ValueError(f"need s, t >= 0 and s + t >= 1 (got s={s}, t={t})")
    if s > p_size or t > q_size:
        raise RTooLarge(f"cannot remove s={s} of {p_size} and t={t} of {q_size} lines")
    if pencil_h is not None and pencil_v is not None:
        if pencil_h.direction == pencil_v.direction:
            raise DependentPencils("pencils share a direction")
        if not independent_pencils(c, pencil_h, pencil_v):
            raise DependentPencils("pencils share configuration points")
    if t == 0:
        pencil_v = None
    if s == 0:
        pencil_h = None

    removed_h = pencil_h.sorted_ids()[:s] if pencil_h is not None else []
    removed_v = pencil_v.sorted_ids()[:t] if pencil_v is not None else []
    removed = removed_h + removed_v
    removed_set = set(removed)
    r = len(removed)
    m = c.n
    one_pencil = None if (pencil_h and pencil_v) else ("h" if pencil_h is not None else "v")

    normalized = apply_map(c, _switch_normalizer(pencil_h, pencil_v))
    h0 = h if h is not None else 2 * k
    rng = _stream(c, seed, "AS")

    for attempt in range(max_retries + 1):
        h_used = h0 * 2 ** attempt
        frame = _switch_frame(normalized, removed, rng, attempt > 0, one_pencil)
        base = apply_map(normalized, frame)
        maps = switch_family(h_used, k)
        copies = [base] + [apply_map(base, a) for a in maps]

        points: list[Point] = []
        for cp in copies:
            points.extend(cp.points)
        lines: list[LineRecord] = []
        for j, cp in enumerate(copies):
            for li, rec in enumerate(cp.lines):
                if li not in removed_set:
                    lines.append(LineRecord(rec.line, tuple(j * m + p for p in rec.points)))

        centers: list[Point] = []
        for rho, li in enumerate(removed):
            line = base.lines[li].line
            center_id = (k - 1) * m + rho
            if line.is_horizontal():
                center = pencil_center_y(maps[0], line.y_at(Fraction(0)))
            else:
                center = pencil_center(maps[0], line.x_at(Fraction(0)))
            centers.append(center)
            for q in base.lines[li].points:
                join = line_through(base.points[q], copies[1].points[q])
                ids = tuple(j * m + q for j in range(k - 1)) + (center_id,)
                lines.append(LineRecord(join, ids))
        points.extend(centers)

        n_expected = (k - 1) * m + r
        assert len(points) == n_expected
        assert len(lines) == (k - 1) * (m - r) + r * k == n_expected
        full_frame = frame.compose(_switch_normalizer(pencil_h, pencil_v))
        params = {"k": k, "s": len(removed_h), "t": len(removed_v), "h": h_used,
                  "removed": removed, "frame": full_frame.to_json(), "seed": seed}
        out = Configuration(k, tuple(points), tuple(lines),
                            _provenance(c, "affine_switch", params, attempt + 1))
        report = verify(out)
        if report.ok:
            return SwitchResult(out, tuple(removed), tuple(centers), h_used, attempt + 1, full_frame)
        log.debug("AS attempt %d (h=%d) degenerate: %s", attempt, h_used, report.violations[:3])
    raise DegenerateAfterRetries(f"affine switch failed after {max_retries + 1} attempts")


def affine_switch_band(c: Configuration, pencil: Optional[Pencil] = None, *, seed: int = 0,
                       max_retries: int = DEFAULT_RETRIES) -> list[SwitchResult]:
    """Switches removing 1, 2, ..., q lines of one pencil: orders (k-1)m+1 .. (k-1)m+q."""
    if pencil is None:
        pencil = largest_pencil(c)
    return [affine_switch(c, pencil, None, s=r, t=0, seed=seed, max_retries=max_retries)
            for r in range(1, len(pencil) + 1)]
