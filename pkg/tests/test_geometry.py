import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from kickplan.geometry import (
    Disk,
    Point,
    Segment,
    clip_segment_to_rect,
    dist_point_segment,
    kick_segment,
    segment_intersects_disk,
    segments_cross,
)

from oracles import cross_exact, sampled_min_distance

coord = st.floats(-10, 10, allow_nan=False)
points = st.builds(Point, coord, coord)


def seg(ax, ay, bx, by):
    return Segment(Point(ax, ay), Point(bx, by))


def test_distance_examples():
    assert dist_point_segment(Point(0, 0), seg(0, 0, 1, 0)) == 0
    assert dist_point_segment(Point(0, 1), seg(-1, 0, 1, 0)) == 1.0
    d = dist_point_segment(Point(3, 4), seg(0, 0, 1, 0))
    oracle = sampled_min_distance((3, 4), (0, 0), (1, 0))
    assert d == pytest.approx(math.sqrt(20), abs=1e-12)
    assert d == pytest.approx(oracle, abs=1e-9)


def test_disk_examples():
    assert segment_intersects_disk(seg(0, 0, 2, 0), Disk(Point(1, 0.1), 0.2))
    assert not segment_intersects_disk(seg(0, 0, 2, 0), Disk(Point(1, 1), 0.2))


def test_disk_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        Disk(Point(0, 0), 0.0)


def test_kick_segment_rejects_zero_length():
    with pytest.raises(ValueError):
        kick_segment(Point(1, 1), Point(1, 1))


def test_cross_examples():
    assert segments_cross(seg(0, -1, 0, 1), seg(-1, 0, 1, 0))
    assert not segments_cross(seg(0, 0, 1, 0), seg(0, 1, 1, 1))
    # touching and collinear overlap both count
    assert segments_cross(seg(0, 0, 1, 0), seg(1, 0, 2, 5))
    assert segments_cross(seg(0, 0, 2, 0), seg(1, 0, 3, 0))
    assert not segments_cross(seg(0, 0, 1, 0), seg(2, 0, 3, 0))


def test_disk_predicate_matches_sampling_oracle():
    rng = random.Random(7)
    for _ in range(1000):
        a = (rng.uniform(0, 4), rng.uniform(0, 4))
        b = (rng.uniform(0, 4), rng.uniform(0, 4))
        c = (rng.uniform(0, 4), rng.uniform(0, 4))
        r = rng.uniform(0.05, 1.0)
        got = segment_intersects_disk(Segment(Point(*a), Point(*b)), Disk(Point(*c), r))
        sampled = sampled_min_distance(c, a, b)
        if got != (sampled <= r):
            assert abs(sampled - r) < 1e-6


def test_cross_predicate_matches_exact_oracle():
    rng = random.Random(11)
    for _ in range(1000):
        pts = [(rng.uniform(0, 4), rng.uniform(0, 4)) for _ in range(4)]
        s1 = Segment(Point(*pts[0]), Point(*pts[1]))
        s2 = Segment(Point(*pts[2]), Point(*pts[3]))
        if segments_cross(s1, s2) != cross_exact(*pts):
            assert min(dist_point_segment(p, s2) for p in (s1.a, s1.b)) < 1e-6


def test_cross_predicate_on_grid_touching_cases():
    # small integer coordinates produce many exact touches and collinear overlaps
    rng = random.Random(3)
    for _ in range(1000):
        pts = [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(4)]
        if pts[0] == pts[1] or pts[2] == pts[3]:
            continue
        s1 = Segment(Point(*pts[0]), Point(*pts[1]))
        s2 = Segment(Point(*pts[2]), Point(*pts[3]))
        assert segments_cross(s1, s2) == cross_exact(*pts)


@given(points, points, points)
def test_distance_bounded_by_endpoints(p, a, b):
    s = Segment(a, b)
    d = dist_point_segment(p, s)
    assert 0 <= d <= min(p.dist(a), p.dist(b)) + 1e-9


@given(points, points, points, st.floats(0.01, 5), st.floats(0, 5))
def test_disk_monotone_in_radius(c, a, b, r, extra):
    s = Segment(a, b)
    if segment_intersects_disk(s, Disk(c, r)):
        assert segment_intersects_disk(s, Disk(c, r + extra))


@given(points, points, points, points)
def test_cross_symmetric(a, b, c, d):
    assert segments_cross(Segment(a, b), Segment(c, d)) == segments_cross(Segment(c, d), Segment(a, b))


def _rigid(theta, tx, ty):
    c, s = math.cos(theta), math.sin(theta)
    return lambda p: Point(c * p.x - s * p.y + tx, s * p.x + c * p.y + ty)


@settings(max_examples=200)
@given(
    st.lists(st.tuples(st.floats(0, 6), st.floats(0, 9)), min_size=5, max_size=5),
    st.floats(0.05, 1.0),
    st.floats(0, 2 * math.pi),
    st.floats(-20, 20),
    st.floats(-20, 20),
)
def test_rigid_motion_invariance(pts, r, theta, tx, ty):
    a, b, c, d, p = (Point(*q) for q in pts)
    f = _rigid(theta, tx, ty)
    s1, s2 = Segment(a, b), Segment(c, d)
    t1, t2 = Segment(f(a), f(b)), Segment(f(c), f(d))
    assert dist_point_segment(f(p), t1) == pytest.approx(dist_point_segment(p, s1), abs=1e-9)
    d0 = dist_point_segment(p, s1)
    if abs(d0 - r) > 1e-7:
        assert segment_intersects_disk(t1, Disk(f(p), r)) == segment_intersects_disk(s1, Disk(p, r))
    near_touch = min(dist_point_segment(q, s2) for q in (a, b)) < 1e-7 or min(
        dist_point_segment(q, s1) for q in (c, d)
    ) < 1e-7
    if not near_touch:
        assert segments_cross(t1, t2) == segments_cross(s1, s2)


def test_clip_segment_to_rect():
    a, b = clip_segment_to_rect(Point(-1, 0.5), Point(2, 0.5), 0, 0, 1, 1)
    assert a == Point(0, 0.5) and b == Point(1, 0.5)
    assert clip_segment_to_rect(Point(-1, 2), Point(2, 2), 0, 0, 1, 1) is None
