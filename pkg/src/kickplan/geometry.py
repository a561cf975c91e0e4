"""Planar primitives shared by the graph, the cost model and the simulator.

All predicates are closed: touching counts as intersecting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

EPS = 1e-9


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other: Point) -> Point:  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> Point:
        return Point(self.x * k, self.y * k)

    def dot(self, other: Point) -> float:
        return self.x * other.x + self.y * other.y

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y)

    def dist(self, other: Point) -> float:
        dx = self.x - other.x
        dy = self.y - other.y
        return math.sqrt(dx * dx + dy * dy)


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    @property
    def length(self) -> float:
        return self.a.dist(self.b)

    def at(self, t: float) -> Point:
        return Point(self.a.x + (self.b.x - self.a.x) * t, self.a.y + (self.b.y - self.a.y) * t)


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"disk radius must be positive, got {self.radius}")


def kick_segment(a: Point, b: Point) -> Segment:
    """Segment for a kick; a kick of zero length is rejected."""
    if a.dist(b) <= EPS:
        raise ValueError(f"degenerate kick segment at {a}")
    return Segment(Point(*a), Point(*b))


def project_param(p: Point, s: Segment) -> float:
    """Parameter in [0, 1] of the point of ``s`` closest to ``p``."""
    dx = s.b.x - s.a.x
    dy = s.b.y - s.a.y
    l2 = dx * dx + dy * dy
    if l2 <= EPS * EPS:
        return 0.0
    t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / l2
    return min(1.0, max(0.0, t))


def dist_point_segment(p: Point, s: Segment) -> float:
    return p.dist(s.at(project_param(p, s)))


def segment_intersects_disk(s: Segment, d: Disk) -> bool:
    return dist_point_segment(d.center, s) <= d.radius + EPS


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if v > EPS:
        return 1
    if v < -EPS:
        return -1
    return 0


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    # assumes collinearity already established
    return (
        min(a.x, b.x) - EPS <= p.x <= max(a.x, b.x) + EPS
        and min(a.y, b.y) - EPS <= p.y <= max(a.y, b.y) + EPS
    )


def segments_cross(s1: Segment, s2: Segment) -> bool:
    """True when the two closed segments share at least one point."""
    o1 = _orient(s1.a, s1.b, s2.a)
    o2 = _orient(s1.a, s1.b, s2.b)
    o3 = _orient(s2.a, s2.b, s1.a)
    o4 = _orient(s2.a, s2.b, s1.b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment(s1.a, s1.b, s2.a):
        return True
    if o2 == 0 and _on_segment(s1.a, s1.b, s2.b):
        return True
    if o3 == 0 and _on_segment(s2.a, s2.b, s1.a):
        return True
    if o4 == 0 and _on_segment(s2.a, s2.b, s1.b):
        return True
    return False


def clip_segment_to_rect(
    a: Point, b: Point, xmin: float, ymin: float, xmax: float, ymax: float
) -> tuple[Point, Point] | None:
    """Liang-Barsky clipping; returns None if the segment misses the rectangle."""
    dx = b.x - a.x
    dy = b.y - a.y
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, a.x - xmin), (dx, xmax - a.x), (-dy, a.y - ymin), (dy, ymax - a.y)):
        if p == 0:
            if q < 0:
                return None
            continue
        r = q / p
        if p < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return None
    return Point(a.x + t0 * dx, a.y + t0 * dy), Point(a.x + t1 * dx, a.y + t1 * dy)
