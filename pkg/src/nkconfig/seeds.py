"""Base configurations: multilaterals (n_2) and the Pappus (9_3)."""
from __future__ import annotations

from fractions import Fraction

from .configuration import Configuration, LineRecord
from .errors import NTooSmall
from .geometry import Point, line_through


def multilateral(n: int) -> Configuration:
    """An (n_2) configuration: n points on y = x**2 joined cyclically.

    A line meets the parabola at most twice, so no three of the points are
    collinear and no chord picks up a stray point.
    """
    if n < 3:
        raise NTooSmall(f"a multilateral needs n >= 3, got {n}")
    pts = tuple(Point(Fraction(i), Fraction(i * i)) for i in range(n))
    lines = tuple(LineRecord(line_through(pts[i], pts[(i + 1) % n]), (i, (i + 1) % n))
                  for i in range(n))
    return Configuration(2, pts, lines, {"operation": "seed", "kind": "multilateral", "size": n})


# Two triples on y = 0 and y = 2, the second a translate of the first, put
# the three Pappus points on y = 1: the result has a horizontal 3-pencil.
_PAPPUS_A = (Fraction(0), Fraction(2), Fraction(6))
_PAPPUS_SHIFT = Fraction(1)


def pappus() -> Configuration:
    a = [Point(x, Fraction(0)) for x in _PAPPUS_A]
    b = [Point(x + _PAPPUS_SHIFT, Fraction(2)) for x in _PAPPUS_A]
    pairs = [(0, 1), (0, 2), (1, 2)]
    c = [Point((_PAPPUS_A[i] + _PAPPUS_A[j] + _PAPPUS_SHIFT) / 2, Fraction(1)) for i, j in pairs]
    pts = tuple(a + b + c)
    # ids: A_i -> i, B_j -> 3 + j, C_ij -> 6 + pair index
    recs = [
        LineRecord(line_through(a[0], a[1]), (0, 1, 2)),
        LineRecord(line_through(b[0], b[1]), (3, 4, 5)),
        LineRecord(line_through(c[0], c[1]), (6, 7, 8)),
    ]
    for idx, (i, j) in enumerate(pairs):
        recs.append(LineRecord(line_through(a[i], b[j]), (i, 3 + j, 6 + idx)))
        recs.append(LineRecord(line_through(a[j], b[i]), (j, 3 + i, 6 + idx)))
    return Configuration(3, pts, tuple(recs), {"operation": "seed", "kind": "pappus", "size": 9})
