"""Planar geometric primitives over float or exact rational scalars.

Points and vectors are plain ``(x, y)`` tuples.  Coordinates may be Python
floats, ``fractions.Fraction`` or ``int``; arithmetic is done with the
operands' own type, so exact inputs give exact answers.  Every predicate
takes a tolerance ``tol``; with exact inputs pass ``tol=0``.

Angles are in degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

DEFAULT_TOL = 1e-9

Point = Tuple  # (x, y)


class GeometryError(ValueError):
    """Raised on degenerate geometric input."""


class DegenerateSegmentError(GeometryError):
    pass


class ZeroVectorError(GeometryError):
    pass


# ---------------------------------------------------------------------------
# vector arithmetic
# ---------------------------------------------------------------------------

def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def scale(v, s):
    return (v[0] * s, v[1] * s)


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def norm2(v):
    return v[0] * v[0] + v[1] * v[1]


def _exact_ints(v):
    """``(X, Y, D)`` with ``v = (X/D, Y/D)`` for int or Fraction input."""
    x, y = Fraction(v[0]), Fraction(v[1])
    den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
    return int(x * den), int(y * den), den


def to_float_vec(v) -> tuple[float, float]:
    """Float vector with the direction of ``v``, safe for huge ints and fractions.

    Only the direction is kept: the result may be rescaled by any positive
    factor.  Use ``to_float_point`` when the magnitude matters.
    """
    x, y = v
    if isinstance(x, float) and isinstance(y, float):
        return x, y
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        x, y, _ = _exact_ints((x, y))
        shift = max(x.bit_length(), y.bit_length()) - 900
        if shift > 0:
            x >>= shift
            y >>= shift
        return float(x), float(y)
    return float(x), float(y)


def to_float_point(p) -> tuple[float, float]:
    return float(p[0]), float(p[1])


def norm(v) -> float:
    x, y = v
    if not (isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction))):
        return math.hypot(float(x), float(y))
    X, Y, den = _exact_ints(v)
    s = max(0, max(X.bit_length(), Y.bit_length()) - 900)
    ds = max(0, den.bit_length() - 900)
    return math.ldexp(math.hypot(X >> s, Y >> s) / (den >> ds), s - ds)


def dist(a, b) -> float:
    return norm(sub(a, b))


def unit(v) -> tuple[float, float]:
    x, y = to_float_vec(v)
    n = math.hypot(x, y)
    if n == 0:
        raise ZeroVectorError("zero vector has no direction")
    return x / n, y / n


def direction(theta: float) -> tuple[float, float]:
    """Unit vector at angle ``theta`` (degrees, counterclockwise from e1)."""
    t = math.radians(theta)
    return math.cos(t), math.sin(t)


def rotate(v, alpha: float):
    """Rotate ``v`` counterclockwise by ``alpha`` degrees (float result)."""
    c, s = direction(alpha)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def rotate_by(v, cs):
    """Rotate ``v`` by the rotation whose first column is ``cs = (c, s)``.

    Exact when both arguments are exact; ``cs`` need not be unit length,
    in which case the result is also scaled by ``|cs|``.
    """
    c, s = cs
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def rational_direction(theta: float, delta: float = 0.01) -> tuple[Fraction, Fraction]:
    """Exact rational unit vector within ``delta`` degrees of angle ``theta``.

    Uses the Pythagorean parametrisation ``((1 - t^2)/(1 + t^2), 2t/(1 + t^2))``
    with ``t`` a rational approximation of ``tan(theta/2)``.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    theta = theta % 360.0
    # keep |t| <= 1 by folding through a quarter turn
    quarter = int((theta + 45.0) // 90.0) % 4
    phi = theta - 90.0 * quarter
    if phi > 180.0:
        phi -= 360.0
    target = math.tan(math.radians(phi) / 2.0)
    max_den = 4
    while True:
        t = Fraction(target).limit_denominator(max_den)
        c = (1 - t * t) / (1 + t * t)
        s = 2 * t / (1 + t * t)
        got = math.degrees(math.atan2(float(s), float(c)))
        if abs(got - phi) <= delta:
            break
        max_den *= 4
    for _ in range(quarter):
        c, s = -s, c
    return c, s


def angle_of(v) -> float:
    """Direction angle of ``v`` in ``[0, 360)``."""
    x, y = to_float_vec(v)
    if x == 0 and y == 0:
        raise ZeroVectorError("zero vector has no direction")
    a = math.degrees(math.atan2(y, x))
    if a < 0:
        a += 360.0
    if a >= 360.0:
        a -= 360.0
    return a


def ccw_angle(v1, v2) -> float:
    """Counterclockwise angle in ``[0, 360)`` rotating ``v1`` onto ``v2``."""
    x1, y1 = to_float_vec(v1)
    x2, y2 = to_float_vec(v2)
    n1, n2 = math.hypot(x1, y1), math.hypot(x2, y2)
    if n1 == 0 or n2 == 0:
        raise ZeroVectorError("zero vector has no direction")
    x1, y1, x2, y2 = x1 / n1, y1 / n1, x2 / n2, y2 / n2
    a = math.degrees(math.atan2(x1 * y2 - y1 * x2, x1 * x2 + y1 * y2))
    if a < 0:
        a += 360.0
    if a >= 360.0:
        a -= 360.0
    return a


def angle_between(v1, v2) -> float:
    """The smaller angle formed by two vectors, in ``[0, 180]``."""
    a = ccw_angle(v1, v2)
    return min(a, 360.0 - a)


# ---------------------------------------------------------------------------
# halfplanes and cones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Halfplane:
    """Closed halfplane ``{x : dot(x - anchor, normal) >= 0}``."""

    anchor: Point
    normal: Point

    def __post_init__(self):
        if self.normal[0] == 0 and self.normal[1] == 0:
            raise ZeroVectorError("halfplane normal must be nonzero")

    def margin(self, x):
        return dot(sub(x, self.anchor), self.normal)

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        m = self.margin(x)
        if m >= 0:
            return True
        if not tol:
            return False
        return m >= -tol * norm(self.normal) * max(norm(sub(x, self.anchor)), 1e-300)


def halfplane(p, q) -> Halfplane:
    """``h(p, q)``: closed halfplane through ``q`` orthogonal to ``pq``, away from ``p``."""
    if p[0] == q[0] and p[1] == q[1]:
        raise DegenerateSegmentError("halfplane of a degenerate segment")
    return Halfplane(q, sub(q, p))


def halfplane_contains(p, q, x, tol=DEFAULT_TOL) -> bool:
    """Whether ``x`` lies in ``h(p, q)``.

    The float tolerance is angular: the point is accepted when the cosine of
    the angle between ``q - p`` and ``x - q`` is at least ``-tol``, which keeps
    the test independent of the drawing's scale.
    """
    d = sub(q, p)
    if d[0] == 0 and d[1] == 0:
        raise DegenerateSegmentError("p and q coincide")
    w = sub(x, q)
    m = dot(w, d)
    if m >= 0:
        return True
    if not tol:
        return False
    return m >= -tol * norm(d) * norm(w)


@dataclass(frozen=True)
class Cone:
    """Closed cone of directions within ``half_angle`` degrees of ``axis``."""

    apex: Point
    axis: Point
    half_angle: float

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        return cone_contains(self, x, tol)

    def boundary_directions(self):
        """Unit directions of the left (ccw) and right (cw) boundary rays."""
        a = angle_of(self.axis)
        return direction(a + self.half_angle), direction(a - self.half_angle)


def cone_contains(c: Cone, x, tol=DEFAULT_TOL) -> bool:
    v = sub(x, c.apex)
    if v[0] == 0 and v[1] == 0:
        raise GeometryError("point coincides with the cone apex")
    return angle_between(v, c.axis) <= c.half_angle + (tol or 0.0)


# ---------------------------------------------------------------------------
# orientation, segments, polygons
# ---------------------------------------------------------------------------

def orient(a, b, c):
    """Twice the signed area of triangle ``abc`` (positive when ccw)."""
    return cross(sub(b, a), sub(c, a))


def _sign(value, scale_: float, tol) -> int:
    if value > 0:
        s = 1
    elif value < 0:
        s = -1
    else:
        return 0
    if tol and abs(float(value) if not isinstance(value, int) else value) <= tol * scale_:
        return 0
    return s


def _orient_sign(a, b, c, tol) -> int:
    o = orient(a, b, c)
    if not tol:
        return (o > 0) - (o < 0)
    return _sign(o, norm(sub(b, a)) * norm(sub(c, a)), tol)


def _on_segment(a, b, x) -> bool:
    """Whether ``x`` (assumed collinear with ``ab``) lies in the closed segment."""
    return (min(a[0], b[0]) <= x[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= x[1] <= max(a[1], b[1]))


def segments_intersect(s1, s2, tol=DEFAULT_TOL) -> str:
    """Classify two segments: ``disjoint``, ``share_endpoint``, ``cross`` or ``overlap``.

    ``share_endpoint`` means the segments meet only in a common endpoint.
    ``cross`` covers any other single intersection point, including an
    endpoint of one segment touching the interior of the other.
    """
    a, b = s1
    c, d = s2
    if (a[0] == b[0] and a[1] == b[1]) or (c[0] == d[0] and c[1] == d[1]):
        raise DegenerateSegmentError("segment endpoints coincide")
    shared = [p for p in (a, b) if (p[0] == c[0] and p[1] == c[1]) or (p[0] == d[0] and p[1] == d[1])]
    o1 = _orient_sign(a, b, c, tol)
    o2 = _orient_sign(a, b, d, tol)
    o3 = _orient_sign(c, d, a, tol)
    o4 = _orient_sign(c, d, b, tol)
    if o1 == 0 and o2 == 0:
        # collinear
        hits = [p for p in (c, d) if _on_segment(a, b, p)] + [p for p in (a, b) if _on_segment(c, d, p)]
        if not hits:
            return "disjoint"
        distinct = {(p[0], p[1]) for p in hits}
        if len(distinct) == 1 and shared:
            return "share_endpoint"
        return "overlap"
    if shared:
        return "share_endpoint"
    if o1 * o2 <= 0 and o3 * o4 <= 0:
        return "cross"
    return "disjoint"


def polygon_area2(poly: Sequence[Point]):
    """Twice the signed area of a polygon."""
    if not poly:
        return 0
    o = poly[0]
    rel = [sub(p, o) for p in poly]
    s = 0
    for i in range(1, len(rel) - 1):
        s += cross(rel[i], rel[i + 1])
    return s


def polygon_centroid(poly: Sequence[Point]):
    # relative to the first vertex, so small polygons far from the origin stay accurate
    a2 = polygon_area2(poly)
    if a2 == 0:
        raise GeometryError("degenerate polygon has no centroid")
    o = poly[0]
    rel = [sub(p, o) for p in poly]
    cx = cy = 0
    for i in range(len(rel)):
        p, q = rel[i], rel[(i + 1) % len(rel)]
        w = cross(p, q)
        cx += (p[0] + q[0]) * w
        cy += (p[1] + q[1]) * w
    return (o[0] + cx / (3 * a2), o[1] + cy / (3 * a2))


def clip_polygon(poly: Sequence[Point], h: Halfplane) -> list:
    """Clip a convex polygon by a closed halfplane (Sutherland-Hodgman)."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        mp, mq = h.margin(p), h.margin(q)
        if mp >= 0:
            out.append(p)
        if (mp >= 0) != (mq >= 0):
            t = mp / (mp - mq)
            out.append((p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t))
    return out


def point_in_convex_polygon(poly: Sequence[Point], x, tol=DEFAULT_TOL) -> bool:
    """Closed membership test; ``poly`` may be in either orientation."""
    sign = 1 if polygon_area2(poly) > 0 else -1
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        if p == q:
            continue
        o = orient(p, q, x) * sign
        if o < 0:
            if not tol or o < -tol * norm(sub(q, p)) * max(norm(sub(x, p)), 1e-300):
                return False
    return True


def point_in_polygon(poly: Sequence[Point], x) -> bool:
    """Even-odd ray casting for a simple polygon (boundary handling unspecified)."""
    inside = False
    n = len(poly)
    px, py = x
    for i in range(n):
        (ax, ay), (bx, by) = poly[i], poly[(i + 1) % n]
        if (ay > py) != (by > py):
            xi = ax + (py - ay) * (bx - ax) / (by - ay)
            if px < xi:
                inside = not inside
    return inside
