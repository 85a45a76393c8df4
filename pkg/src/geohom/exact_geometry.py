"""Exact integer predicates for planar point configurations.

Everything here is pure integer arithmetic: no floats, no epsilons.  An
orientation test is the sign of a 3x3 determinant of coordinate
differences, so with coordinates bounded by 2**20 every intermediate
value fits comfortably in a machine word even outside CPython.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

COORDINATE_LIMIT = 1 << 20


class GeneralPositionViolation(ValueError):
    """A point set has a repeated point or a collinear triple.

    ``kind`` is ``"duplicate"`` or ``"collinear"``; ``indices`` names the
    offending points.
    """

    def __init__(self, kind: str, indices: tuple[int, ...]):
        self.kind = kind
        self.indices = indices
        pretty = ", ".join(str(i) for i in indices)
        super().__init__(f"{kind} points at indices ({pretty})")


@dataclass(frozen=True, order=True)
class Point:
    """Integer grid point with |x|, |y| <= 2**20."""

    x: int
    y: int

    def __post_init__(self):
        for value in (self.x, self.y):
            if not isinstance(value, int):
                raise TypeError(f"coordinates must be ints, got {value!r}")
            if abs(value) > COORDINATE_LIMIT:
                raise ValueError(
                    f"coordinate {value} exceeds limit {COORDINATE_LIMIT}"
                )


@dataclass(frozen=True)
class Segment:
    """Closed segment between two distinct points."""

    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"degenerate segment at {self.a}")


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p).

    +1 when p, q, r make a counterclockwise turn, -1 for clockwise,
    0 when collinear.
    """
    det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def find_general_position_violation(
    pts: list[Point],
) -> tuple[str, tuple[int, ...]] | None:
    """First duplicate pair or collinear triple, or None if none exists."""
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            return ("duplicate", (seen[p], i))
        seen[p] = i
    for i, j, k in combinations(range(len(pts)), 3):
        if orient(pts[i], pts[j], pts[k]) == 0:
            return ("collinear", (i, j, k))
    return None


def in_general_position(pts: list[Point]) -> bool:
    """True iff all points are distinct and no three are collinear."""
    return find_general_position_violation(pts) is None


def proper_cross(s: Segment, t: Segment) -> bool:
    """True iff the open interiors of s and t intersect.

    Segments sharing an endpoint never properly cross.  Symmetric in its
    arguments; total even on degenerate input (collinear tests give 0 and
    the strict sign comparisons then fail).
    """
    if len({s.a, s.b, t.a, t.b}) < 4:
        return False
    o1 = orient(s.a, s.b, t.a)
    o2 = orient(s.a, s.b, t.b)
    o3 = orient(t.a, t.b, s.a)
    o4 = orient(t.a, t.b, s.b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_cross_rational(s: Segment, t: Segment) -> bool:
    """Reference predicate: intersect supporting lines in exact rationals.

    Computes the intersection point of the two supporting lines and tests
    that it is strictly interior to both segments.  Deliberately
    independent of orient() so the two predicates can cross-check each
    other.
    """
    if len({s.a, s.b, t.a, t.b}) < 4:
        return False
    dx1, dy1 = s.b.x - s.a.x, s.b.y - s.a.y
    dx2, dy2 = t.b.x - t.a.x, t.b.y - t.a.y
    denom = dx1 * dy2 - dy1 * dx2
    if denom == 0:
        return False
    rx, ry = t.a.x - s.a.x, t.a.y - s.a.y
    u = Fraction(rx * dy2 - ry * dx2, denom)
    v = Fraction(rx * dy1 - ry * dx1, denom)
    return 0 < u < 1 and 0 < v < 1
