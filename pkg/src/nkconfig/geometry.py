"""
Exact plane geometry over the rationals.

Points carry :class:`fractions.Fraction` coordinates, lines are stored as
integer triples ``(a, b, c)`` for the locus ``a*x + b*y + c = 0`` in a
canonical form (gcd 1, leading nonzero coefficient positive), so equal lines
compare and hash structurally. Nothing here ever rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Union

from .errors import (
    CoincidentPoints,
    DegeneratePair,
    HTooSmall,
    IdenticalLines,
    PointOnAxis,
    SingularMap,
    UnitRatio,
    ZeroRatio,
)

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def rat(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(value)


def rat_str(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike) -> "Point":
        return cls(rat(x), rat(y))

    def homogeneous(self) -> tuple[int, int, int]:
        """Integer triple (X, Y, Z) with Z > 0 and x = X/Z, y = Y/Z."""
        z = lcm(self.x.denominator, self.y.denominator)
        return (self.x.numerator * (z // self.x.denominator),
                self.y.numerator * (z // self.y.denominator), z)

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


def _canonical_triple(a: int, b: int, c: int) -> tuple[int, int, int]:
    g = gcd(gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    lead = a if a != 0 else b
    if lead < 0:
        a, b, c = -a, -b, -c
    return a, b, c


@dataclass(frozen=True, slots=True)
class Line:
    """The line ``a*x + b*y + c = 0`` with canonical integer coefficients."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ValueError("(a, b) must not both be zero")
        if (self.a, self.b, self.c) != _canonical_triple(self.a, self.b, self.c):
            raise ValueError(f"non-canonical line coefficients {(self.a, self.b, self.c)}; "
                             "use Line.from_coeffs")

    @classmethod
    def from_coeffs(cls, a: RationalLike, b: RationalLike, c: RationalLike) -> "Line":
        """Build a canonical line from arbitrary rational coefficients."""
        fa, fb, fc = rat(a), rat(b), rat(c)
        d = lcm(fa.denominator, fb.denominator, fc.denominator)
        return cls(*_canonical_triple(int(fa * d), int(fb * d), int(fc * d)))

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def normal(self) -> tuple[int, int]:
        """Canonical direction class shared by exactly the lines parallel to this one."""
        a, b = self.a, self.b
        g = gcd(a, b)
        return (a // g, b // g)

    def evaluate(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c

    def is_horizontal(self) -> bool:
        return self.a == 0

    def is_vertical(self) -> bool:
        return self.b == 0

    def y_at(self, x: Fraction) -> Fraction:
        return -(self.a * x + self.c) / Fraction(self.b)

    def x_at(self, y: Fraction) -> Fraction:
        return -(self.b * y + self.c) / Fraction(self.a)

    def __repr__(self) -> str:
        return f"Line({self.a}, {self.b}, {self.c})"


def line_through(p: Point, q: Point) -> Line:
    if p == q:
        raise CoincidentPoints(f"cannot join {p} to itself")
    return Line.from_coeffs(p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y)


def intersect(l1: Line, l2: Line) -> Optional[Point]:
    """Common point of two distinct lines, or ``None`` when they are parallel."""
    if l1 == l2:
        raise IdenticalLines(f"{l1} intersected with itself")
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        return None
    x = Fraction(l1.b * l2.c - l2.b * l1.c, det)
    y = Fraction(l2.a * l1.c - l1.a * l2.c, det)
    return Point(x, y)


def incident(p: Point, l: Line) -> bool:
    X, Y, Z = p.homogeneous()
    return l.a * X + l.b * Y + l.c * Z == 0


def collinear(p: Point, q: Point, r: Point) -> bool:
    return (q.x - p.x) * (r.y - p.y) == (q.y - p.y) * (r.x - p.x)


def parallel(l1: Line, l2: Line) -> bool:
    return l1.normal == l2.normal


@dataclass(frozen=True, slots=True)
class AffineMap:
    """``(x, y) -> (m11*x + m12*y + t1, m21*x + m22*y + t2)``, always invertible."""

    m11: Fraction
    m12: Fraction
    m21: Fraction
    m22: Fraction
    t1: Fraction = Fraction(0)
    t2: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("m11", "m12", "m21", "m22", "t1", "t2"):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, rat(value))
        if self.det == 0:
            raise SingularMap("affine map has zero determinant")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @classmethod
    def diagonal(cls, a: RationalLike, b: RationalLike) -> "AffineMap":
        return cls(rat(a), Fraction(0), Fraction(0), rat(b))

    @classmethod
    def translation(cls, dx: RationalLike, dy: RationalLike) -> "AffineMap":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1), rat(dx), rat(dy))

    @property
    def det(self) -> Fraction:
        return self.m11 * self.m22 - self.m12 * self.m21

    def is_diagonal(self) -> bool:
        return self.m12 == 0 and self.m21 == 0 and self.t1 == 0 and self.t2 == 0

    def is_identity(self) -> bool:
        return self == AffineMap.identity()

    def __call__(self, p: Point) -> Point:
        return Point(self.m11 * p.x + self.m12 * p.y + self.t1,
                     self.m21 * p.x + self.m22 * p.y + self.t2)

    def map_line(self, l: Line) -> Line:
        # a point X' = MX + t lies on the image iff n.M^{-1}(X' - t) + c = 0
        d = self.det
        i11, i12, i21, i22 = self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d
        a = l.a * i11 + l.b * i21
        b = l.a * i12 + l.b * i22
        c = l.c - (a * self.t1 + b * self.t2)
        return Line.from_coeffs(a, b, c)

    def inverse(self) -> "AffineMap":
        d = self.det
        i11, i12, i21, i22 = self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d
        return AffineMap(i11, i12, i21, i22,
                         -(i11 * self.t1 + i12 * self.t2),
                         -(i21 * self.t1 + i22 * self.t2))

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self ∘ other``: apply ``other`` first."""
        return AffineMap(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
            self.m11 * other.t1 + self.m12 * other.t2 + self.t1,
            self.m21 * other.t1 + self.m22 * other.t2 + self.t2,
        )

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        return self.compose(other)

    def to_json(self) -> list[str]:
        return [rat_str(v) for v in (self.m11, self.m12, self.m21, self.m22, self.t1, self.t2)]


def orthogonal_affinity(axis: Line, ratio: RationalLike) -> AffineMap:
    """Strain with the given axis: signed distance to the axis is scaled by ``ratio``."""
    ratio = rat(ratio)
    if ratio == 0:
        raise ZeroRatio("an orthogonal affinity needs a nonzero ratio")
    a, b, c = axis.coeffs
    s = (1 - ratio) / (a * a + b * b)
    # X' = X - s * (a x + b y + c) * (a, b)
    return AffineMap(1 - s * a * a, -s * a * b, -s * a * b, 1 - s * b * b,
                     -s * a * c, -s * b * c)


def axial_affinity(axis: Line, direction: tuple[RationalLike, RationalLike]) -> AffineMap:
    """The map ``X -> X + f(X) * v`` where ``f`` is the axis equation; fixes the axis."""
    a, b, c = axis.coeffs
    v1, v2 = rat(direction[0]), rat(direction[1])
    return AffineMap(1 + a * v1, b * v1, a * v2, 1 + b * v2, c * v1, c * v2)


def affinity_from_axis_and_pair(axis: Line, p: Point, p_image: Point) -> AffineMap:
    """The unique axial affinity with the given axis sending ``p`` to ``p_image``."""
    fp = axis.evaluate(p)
    if fp == 0:
        raise PointOnAxis(f"{p} lies on the axis {axis}")
    if axis.evaluate(p_image) == 0:
        raise DegeneratePair(f"image {p_image} on the axis collapses the plane")
    return axial_affinity(axis, ((p_image.x - p.x) / fp, (p_image.y - p.y) / fp))


def switch_family(h: int, k: int) -> list[AffineMap]:
    """The k-2 diagonal maps diag((h-j)/h, (h+j)/h), j = 1..k-2.

    For every point P the images under all of these lie on one line through P.
    """
    if k < 3:
        raise ValueError("switch family needs k >= 3")
    if h <= k - 2:
        raise HTooSmall(f"h={h} must exceed k-2={k - 2}")
    return [AffineMap.diagonal(Fraction(h - j, h), Fraction(h + j, h)) for j in range(1, k - 1)]


def _diagonal_entries(alpha: AffineMap) -> tuple[Fraction, Fraction]:
    if not alpha.is_diagonal():
        raise ValueError("pencil centers are defined for diagonal linear maps only")
    return alpha.m11, alpha.m22


def pencil_center(alpha: AffineMap, x0: RationalLike) -> Point:
    """Concurrency point of the joins (x0, y) -> alpha(x0, y); lies on the x-axis."""
    a, b = _diagonal_entries(alpha)
    if b == 1:
        raise UnitRatio("vertical ratio 1 makes the joins parallel to the y-axis")
    x0 = rat(x0)
    return Point(x0 * (a - b) / (1 - b), Fraction(0))


def pencil_center_y(alpha: AffineMap, y0: RationalLike) -> Point:
    """Concurrency point of the joins (x, y0) -> alpha(x, y0); lies on the y-axis."""
    a, b = _diagonal_entries(alpha)
    if a == 1:
        raise UnitRatio("horizontal ratio 1 makes the joins parallel to the x-axis")
    y0 = rat(y0)
    return Point(Fraction(0), y0 * (b - a) / (1 - a))


def bounding_box(points: Iterable[Point]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    pts = list(points)
    if not pts:
        raise ValueError("empty point set")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return min(xs), min(ys), max(xs), max(ys)
