import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conveyor.errors import Containment, GeometryError, OverlappingDisks
from conveyor.geom import (
    DISJOINT, ENDPOINT, INTERIOR, KINDS, Arc, Disk, Tolerance, bitangents, blocking_disks,
    check_disjoint, directed_bitangent, disjoint_from_hull, distance_to_hull, is_blocked,
    normalize_angle, power_distance, segment_arc_intersect, segment_segment_intersect,
)

coord = st.floats(-50, 50, allow_nan=False)
radius = st.floats(0.1, 5)


@st.composite
def disjoint_pair(draw):
    a = Disk.at(0, draw(coord), draw(coord), draw(radius))
    b = Disk.at(1, draw(coord), draw(coord), draw(radius))
    assume(math.dist(a.center, b.center) > a.radius + b.radius + 1e-3)
    return a, b


def tangency_residual(seg, d1, d2):
    """Max of |dist(center, line) - r| and |foot offset| for both disks."""
    (x1, y1), (x2, y2) = seg.p1, seg.p2
    ux, uy = (x2 - x1) / seg.length(), (y2 - y1) / seg.length()
    out = 0.0
    for d, p in ((d1, seg.p1), (d2, seg.p2)):
        out = max(out, abs(math.dist(d.center, p) - d.radius))
        # radius must be orthogonal to the segment
        out = max(out, abs((p[0] - d.x) * ux + (p[1] - d.y) * uy))
    return out


def test_normalize_angle():
    assert normalize_angle(-math.pi / 2) == pytest.approx(1.5 * math.pi)
    assert 0 <= normalize_angle(7 * math.pi) < 2 * math.pi


def test_disk_validation():
    with pytest.raises(ValueError):
        Disk.at(0, 0, 0, 0)
    with pytest.raises(ValueError):
        Disk.at(0, float("nan"), 0, 1)


def test_check_disjoint_errors():
    with pytest.raises(OverlappingDisks):
        check_disjoint(Disk.at(0, 0, 0, 1), Disk.at(1, 1.5, 0, 1))
    with pytest.raises(Containment):
        check_disjoint(Disk.at(0, 0, 0, 3), Disk.at(1, 0.5, 0, 1))


def test_bitangents_known_pair():
    a, b = Disk.at(0, 0, 0, 1), Disk.at(1, 4, 0, 1)
    segs = dict(zip(KINDS, bitangents(a, b)))
    assert segs["upper"].p1 == pytest.approx((0, 1))
    assert segs["lower"].p1 == pytest.approx((0, -1))
    assert segs["upper"].p2 == pytest.approx((4, 1))
    # inner tangents cross the center line at the midpoint
    for k in ("inner_a", "inner_b"):
        s = segs[k]
        t = -s.p1[1] / (s.p2[1] - s.p1[1])
        assert s.p1[0] + t * (s.p2[0] - s.p1[0]) == pytest.approx(2.0)


@given(disjoint_pair())
def test_bitangent_residuals(pair):
    a, b = pair
    for seg in bitangents(a, b):
        assert tangency_residual(seg, a, b) <= 1e-9 * max(1.0, seg.length())


@given(disjoint_pair(), st.floats(0, 2 * math.pi), st.floats(-20, 20), st.floats(-20, 20))
def test_bitangents_rigid_motion_equivariant(pair, theta, tx, ty):
    a, b = pair
    c, s = math.cos(theta), math.sin(theta)

    def move(p):
        return (c * p[0] - s * p[1] + tx, s * p[0] + c * p[1] + ty)

    a2 = Disk.at(0, *move(a.center), a.radius)
    b2 = Disk.at(1, *move(b.center), b.radius)
    for s1 in (1, -1):
        for s2 in (1, -1):
            one = directed_bitangent(a, s1, b, s2)
            two = directed_bitangent(a2, s1, b2, s2)
            assert np.allclose(move(one.p1), two.p1, atol=1e-7)
            assert np.allclose(move(one.p2), two.p2, atol=1e-7)


@given(disjoint_pair())
def test_reversed_segment_is_bitangent_of_swapped_pair(pair):
    a, b = pair
    for s1 in (1, -1):
        for s2 in (1, -1):
            seg = directed_bitangent(a, s1, b, s2)
            back = directed_bitangent(b, -s2, a, -s1)
            assert np.allclose(seg.reversed().p1, back.p1, atol=1e-8)
            assert seg.reversed().kind == back.kind


def test_plus_sign_keeps_disk_on_left():
    a, b = Disk.at(0, 0, 0, 1), Disk.at(1, 5, 2, 1.5)
    for s1 in (1, -1):
        for s2 in (1, -1):
            seg = directed_bitangent(a, s1, b, s2)
            ux, uy = seg.direction
            for d, s, p in ((a, s1, seg.p1), (b, s2, seg.p2)):
                cross = ux * (d.y - p[1]) - uy * (d.x - p[0])
                assert math.copysign(1, cross) == s


def test_blocking_matches_scalar_check():
    disks = [Disk.at(0, 0, 0, 1), Disk.at(1, 10, 0, 1), Disk.at(2, 5, 0.5, 1), Disk.at(3, 5, 8, 1)]
    segs = bitangents(disks[0], disks[1])
    hits = blocking_disks(segs, disks)
    for seg, h in zip(segs, hits):
        assert (h is not None) == is_blocked(seg, disks)
    assert hits[0] == 2 or hits[1] == 2  # the middle disk sits on the upper side


def test_power_distance():
    d = Disk.at(0, 1, 1, 2)
    assert power_distance((1, 1), d) == -4
    assert power_distance((4, 5), d) == pytest.approx(21)


def test_distance_to_hull_and_disjoint():
    a, b = Disk.at(0, 0, 0, 1), Disk.at(1, 10, 0, 1)
    assert distance_to_hull((5, 3), a, b) == pytest.approx(2.0)
    assert distance_to_hull((5, 0.5), a, b) == 0
    assert disjoint_from_hull(Disk.at(2, 5, 3, 1.5), a, b)
    assert not disjoint_from_hull(Disk.at(2, 5, 3, 2.5), a, b)


@given(st.floats(-5, 15), st.floats(-5, 5), st.floats(0.1, 3))
def test_disjoint_from_hull_against_sampling(x, y, r):
    a, b = Disk.at(0, 0, 0, 1), Disk.at(1, 10, 2, 2)
    d = Disk.at(2, x, y, r)
    dist = distance_to_hull((x, y), a, b)
    assume(abs(dist - r) > 1e-6)
    # sample points of the hull: convex combinations of points of the two disks
    ts = np.linspace(0, 1, 41)
    angs = np.linspace(0, 2 * np.pi, 73)
    pa = np.stack([a.x + a.radius * np.cos(angs), a.y + a.radius * np.sin(angs)], 1)
    pb = np.stack([b.x + b.radius * np.cos(angs), b.y + b.radius * np.sin(angs)], 1)
    pts = (ts[:, None, None] * pa[None] + (1 - ts[:, None, None]) * pb[None]).reshape(-1, 2)
    sampled = np.min(np.hypot(pts[:, 0] - x, pts[:, 1] - y))
    assert sampled >= dist - 1e-9
    assert disjoint_from_hull(d, a, b) == (dist > r)


def test_segment_segment_cases():
    assert segment_segment_intersect((0, 0), (2, 2), (0, 2), (2, 0)) == INTERIOR
    assert segment_segment_intersect((0, 0), (1, 0), (1, 0), (2, 1)) == ENDPOINT
    assert segment_segment_intersect((0, 0), (1, 0), (0, 1), (1, 1)) == DISJOINT
    assert segment_segment_intersect((0, 0), (2, 0), (1, 0), (3, 0)) == INTERIOR  # overlap


def test_segment_arc_cases():
    d = Disk.at(0, 0, 0, 1)
    upper = Arc(0, 0.0, math.pi, "ccw")
    assert segment_arc_intersect((0, -2), (0, 2), upper, d) == INTERIOR
    assert segment_arc_intersect((-2, -0.5), (2, -0.5), upper, d) == DISJOINT
    assert segment_arc_intersect((1, 0), (3, 0), upper, d) == ENDPOINT


def test_tolerance_bounds():
    with pytest.raises(ValueError):
        Tolerance(0.0)
    with pytest.raises(ValueError):
        Tolerance(0.1)


def test_bitangents_reject_overlap():
    with pytest.raises(GeometryError):
        bitangents(Disk.at(0, 0, 0, 1), Disk.at(1, 1, 0, 1))
