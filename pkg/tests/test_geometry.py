import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sadraw import geometry as geo


def test_halfplane_examples():
    assert geo.halfplane_contains((0, 0), (1, 0), (2, 0))
    assert geo.halfplane_contains((0, 0), (1, 0), (1, -3))
    assert not geo.halfplane_contains((0, 0), (1, 0), (0.5, 7))


def test_halfplane_degenerate():
    with pytest.raises(geo.DegenerateSegmentError):
        geo.halfplane_contains((1, 1), (1, 1), (0, 0))


def test_halfplane_exact_boundary():
    F = Fraction
    assert geo.halfplane_contains((F(0), F(0)), (F(1, 3), F(0)), (F(1, 3), F(5)), tol=0)
    assert not geo.halfplane_contains((F(0), F(0)), (F(1, 3), F(0)), (F(1, 3) - F(1, 10 ** 30), F(5)), tol=0)


def test_ccw_angle_examples():
    assert geo.ccw_angle((1, 0), (0, 1)) == pytest.approx(90.0)
    assert geo.ccw_angle((1, 0), (1, 0)) == pytest.approx(0.0)
    assert geo.ccw_angle((0, 1), (1, 0)) == pytest.approx(270.0)
    with pytest.raises(geo.ZeroVectorError):
        geo.ccw_angle((0, 0), (1, 0))


def test_angle_between_examples():
    assert geo.angle_between((1, 0), (0, 1)) == pytest.approx(90.0)
    assert geo.angle_between((1, 0), (-1, 0)) == pytest.approx(180.0)
    assert geo.angle_between((1, 0), (1, 1)) == pytest.approx(45.0)


def test_segments_intersect_examples():
    assert geo.segments_intersect(((0, 0), (2, 0)), ((1, -1), (1, 1))) == "cross"
    assert geo.segments_intersect(((0, 0), (1, 0)), ((1, 0), (2, 1))) == "share_endpoint"
    assert geo.segments_intersect(((0, 0), (1, 0)), ((0, 1), (1, 1))) == "disjoint"
    assert geo.segments_intersect(((0, 0), (2, 0)), ((1, 0), (3, 0))) == "overlap"
    with pytest.raises(geo.DegenerateSegmentError):
        geo.segments_intersect(((0, 0), (0, 0)), ((1, 0), (2, 0)))


def test_cone_examples():
    c = geo.Cone((0, 0), (0, 1), 15.0)
    assert geo.cone_contains(c, (0, 5))
    assert not geo.cone_contains(c, (5, 0))
    s, co = math.sin(math.radians(15)), math.cos(math.radians(15))
    assert geo.cone_contains(c, (s, co))
    with pytest.raises(geo.GeometryError):
        geo.cone_contains(c, (0, 0))


def test_ccw_angle_antisymmetry():
    rng = random.Random(1)
    for _ in range(2000):
        a = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        b = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        s = geo.ccw_angle(a, b) + geo.ccw_angle(b, a)
        assert s == pytest.approx(360.0, abs=1e-9) or s == pytest.approx(0.0, abs=1e-9)


@settings(max_examples=500, derandomize=True, deadline=None)
@given(st.floats(-720, 720), st.floats(-100, 100), st.floats(-100, 100))
def test_rotate_roundtrip_float(alpha, x, y):
    v = geo.rotate(geo.rotate((x, y), alpha), -alpha)
    assert v[0] == pytest.approx(x, abs=1e-12 * max(1, abs(x) + abs(y)))
    assert v[1] == pytest.approx(y, abs=1e-12 * max(1, abs(x) + abs(y)))


@settings(max_examples=300, derandomize=True, deadline=None)
@given(st.floats(0, 360))
def test_rational_direction(theta):
    c, s = geo.rational_direction(theta)
    assert c * c + s * s == 1
    got = math.degrees(math.atan2(float(s), float(c))) % 360
    diff = abs((got - theta + 180) % 360 - 180)
    assert diff <= 0.01
    # exact rotation pair returns v exactly
    v = (Fraction(3, 7), Fraction(-2, 5))
    w = geo.rotate_by(geo.rotate_by(v, (c, s)), (c, -s))
    assert w == v


def test_float_exact_agree_with_margin():
    rng = random.Random(7)
    checked = 0
    for _ in range(5000):
        p, q, x = [(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(3)]
        if p == q:
            continue
        pe, qe, xe = [(Fraction(a), Fraction(b)) for a, b in (p, q, x)]
        m = geo.dot(geo.sub(x, q), geo.sub(q, p)) / geo.norm(geo.sub(q, p))
        if abs(m) <= 1e-6:
            continue
        checked += 1
        assert geo.halfplane_contains(p, q, x, 1e-9) == geo.halfplane_contains(pe, qe, xe, 0)
    assert checked > 4000


def test_norm_of_exact_tiny_vector():
    v = (Fraction(3, 2 ** 400), Fraction(4, 2 ** 400))
    assert geo.norm(v) == pytest.approx(5 / 2 ** 400, rel=1e-15)
    x, y = geo.to_float_vec(v)   # direction only
    assert y / x == pytest.approx(4 / 3)
    assert geo.to_float_point(v) == pytest.approx((3 / 2 ** 400, 4 / 2 ** 400), rel=1e-15)


def test_polygon_centroid_far_from_origin():
    # tiny triangle far away: relative evaluation keeps the centroid inside
    o = (1e6, -3e5)
    tri = [(o[0], o[1]), (o[0] + 1e-7, o[1]), (o[0], o[1] + 1e-7)]
    c = geo.polygon_centroid(tri)
    assert c[0] == pytest.approx(o[0] + 1e-7 / 3, abs=1e-9)
    assert geo.point_in_convex_polygon(tri, c, 0)
