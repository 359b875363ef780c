"""Increasing-chord drawings of downward-triangulated binary cactuses.

The drawing is built recursively over the BC-tree.  A block with tips
``v_1 .. v_k`` becomes a fan of unit radius around its root; every tip that
roots a child block receives the recursively drawn subcactus, aligned with
the tip direction and scaled into the tip's safe region ``diamond_i``.

Coordinates are exact dyadic rationals: rotations use the float cosine and
sine of the wanted angle as exact binary fractions and every scale factor is
a power of two, so the certifier can run tolerance-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import geometry as geo
from .certify import EuclidDrawing
from .graphs import BinaryCactus, GraphError, is_downward_triangulated

DEFAULT_EPSILON = 30.0
SAFETY = 0.9
MAX_SCALE = Fraction(1, 2)


class NotDownwardTriangulatedError(GraphError):
    pass


def _check_eps(eps):
    if not (0.0 < eps < 90.0):
        raise ValueError(f"epsilon must lie strictly between 0 and 90 degrees, got {eps}")


def exact_rotation(theta: float):
    """Rotation column ``(cos, sin)`` as exact binary fractions.

    Built from the half-angle tangent so that ``cos`` keeps its second-order
    term even for tiny angles, then rounded to a dyadic with enough bits.
    """
    t = math.radians(theta)
    if t == 0:
        return Fraction(1), Fraction(0)
    u = Fraction(math.tan(t / 2))
    den = 1 + u * u
    bits = 64 + 2 * max(0, -math.frexp(abs(t))[1])
    q = 1 << bits
    return (Fraction(round((1 - u * u) / den * q), q),
            Fraction(round(2 * u / den * q), q))


@dataclass
class FanLayout:
    """One drawn fan: root ``v0`` and tips on a circle around it."""

    k: int
    eps: float
    alpha: float
    root: tuple
    alignment: tuple
    radius: Fraction
    tip_dirs: list       # exact direction vectors (|d| ~ 1)
    tips: list           # exact positions
    base_case: bool

    def offsets(self) -> list:
        """Signed angle (degrees, ccw) of each tip direction from the alignment."""
        return [self.k * self.alpha / 2 - i * self.alpha for i in range(self.k)]


def draw_fan(k: int, eps: float, root=(0, 0), alignment=(0, 1), radius=1, base_case: bool = True) -> FanLayout:
    """Place ``k`` tips around ``root``.

    The first tip makes the angle ``k*alpha/2`` (counterclockwise) with the
    alignment and consecutive tips are ``alpha`` apart going clockwise, with
    ``alpha = eps/k`` for a lone fan and ``eps/(2k)`` when subcactuses hang
    from it.
    """
    _check_eps(eps)
    if k < 1:
        raise ValueError("a fan needs at least one tip")
    alpha = eps / k if base_case else eps / (2 * k)
    a = (Fraction(alignment[0]), Fraction(alignment[1]))
    root = (Fraction(root[0]), Fraction(root[1]))
    radius = Fraction(radius)
    dirs, tips = [], []
    for i in range(k):
        dvec = geo.rotate_by(a, exact_rotation(k * alpha / 2 - i * alpha))
        dirs.append(dvec)
        tips.append(geo.add(root, geo.scale(dvec, radius)))
    return FanLayout(k, eps, alpha, root, a, radius, dirs, tips, base_case)


@dataclass
class DiamondRegion:
    """Safe region of tip ``i``: cone ``Lambda_i`` clipped by the neighbour halfplanes."""

    index: int
    apex: tuple
    axis: tuple
    eps_sub: float
    polygon: list
    halfplanes: list = field(default_factory=list)  # (anchor, outward normal): dot(x - a, n) <= 0

    def contains(self, x, tol=geo.DEFAULT_TOL) -> bool:
        return geo.point_in_convex_polygon(self.polygon, x, tol)


def _side_normals(layout: FanLayout, i: int, eps_sub: float):
    """Unit-ish boundary ray directions ``s_i^l``, ``s_i^r`` of ``Lambda_i``."""
    d = layout.tip_dirs[i]
    return (geo.rotate_by(d, exact_rotation(eps_sub / 2)),
            geo.rotate_by(d, exact_rotation(-eps_sub / 2)))


def _region_constraints(layout: FanLayout, i: int, eps_sub: float):
    """Halfplanes ``dot(x - anchor, n) <= 0`` bounding ``diamond_i`` (besides the cone)."""
    out = []
    if i > 0:
        _, sr = _side_normals(layout, i - 1, eps_sub)
        out.append((layout.tips[i - 1], sr))      # h_{i-1}^r
    if i < layout.k - 1:
        sl, _ = _side_normals(layout, i + 1, eps_sub)
        out.append((layout.tips[i + 1], sl))      # h_{i+1}^l
    # truncation at the fan radius keeps the region bounded for lone tips
    d = layout.tip_dirs[i]
    out.append((geo.add(layout.tips[i], geo.scale(d, layout.radius)), d))
    return out


def diamond_region(layout: FanLayout, i: int, eps_sub: Optional[float] = None) -> DiamondRegion:
    """``diamond_i = Lambda_i`` clipped by ``h_{i-1}^r`` and ``h_{i+1}^l`` (0-based ``i``)."""
    if not (0 <= i < layout.k):
        raise IndexError(f"tip index {i} out of range for k={layout.k}")
    if eps_sub is None:
        eps_sub = layout.eps / (4 * layout.k)
    apex = layout.tips[i]
    sl, sr = _side_normals(layout, i, eps_sub)
    # Lambda_i truncated far beyond every other constraint
    far = 4 * layout.radius / Fraction(math.cos(math.radians(eps_sub / 2)))
    poly = [apex, geo.add(apex, geo.scale(sr, far)), geo.add(apex, geo.scale(sl, far))]
    cons = _region_constraints(layout, i, eps_sub)
    for anchor, n in cons:
        poly = geo.clip_polygon(poly, geo.Halfplane(anchor, (-n[0], -n[1])))
    return DiamondRegion(i, apex, layout.tip_dirs[i], eps_sub, poly, cons)


def side_halfplanes(layout: FanLayout, i: int, eps_sub: float):
    """``h_i^l`` and ``h_i^r`` as ``Halfplane`` objects (both contain ``v0``)."""
    sl, sr = _side_normals(layout, i, eps_sub)
    v = layout.tips[i]
    return geo.Halfplane(v, (-sl[0], -sl[1])), geo.Halfplane(v, (-sr[0], -sr[1]))


def _fit_scale(apex, pts, constraints) -> Fraction:
    """Largest power of two ``s <= 0.9 * bound`` keeping ``apex + s*p`` in every halfplane."""
    bound = math.inf
    # the bound only feeds a rounded-down power of two with a 0.9 margin, so
    # float dot products are ample here; beta stays exact for the sign check
    P = np.array([(float(x), float(y)) for x, y in pts]).reshape(-1, 2)
    for anchor, n in constraints:
        beta = geo.dot(geo.sub(anchor, apex), n)
        if beta <= 0:
            raise AssertionError("tip lies outside its own safe region")
        m = P @ np.array([float(n[0]), float(n[1])])
        m = m[m > 0]
        if m.size:
            bound = min(bound, float(beta) / float(m.max()))
    s = min(SAFETY * bound, float(MAX_SCALE))
    e = math.floor(math.log2(s))
    return Fraction(2) ** e


@dataclass
class BlockRecord:
    """Construction data of one block; scales are relative to the final drawing."""

    index: int
    eps: float
    alpha: float
    alignment: tuple
    scale: Fraction = Fraction(1)          # cumulative scale of this block's fan
    region_scale: Optional[Fraction] = None  # cumulative scale of the parent fan's frame
    region_args: Optional[tuple] = None     # (layout, tip, eps_sub) of the parent fan

    @property
    def region(self) -> Optional[DiamondRegion]:
        """Safe region in the parent fan's frame, built on first use."""
        if self.region_args is None:
            return None
        r = self.__dict__.get("_region")
        if r is None:
            r = self.__dict__["_region"] = diamond_region(*self.region_args)
        return r


@dataclass
class CactusDrawing:
    drawing: EuclidDrawing
    cactus: BinaryCactus
    eps: float
    blocks: dict             # block index -> BlockRecord

    def witness(self, s: int, t: int) -> list:
        return witness_path(self.cactus, s, t)

    def witnesses(self) -> dict:
        return all_witnesses(self.cactus)


def _draw_block(c: BinaryCactus, b: int, eps: float, alignment, records: dict):
    """Draw the subcactus rooted at block ``b`` with its root at the origin.

    Returns ``{vertex: point}`` in the block's own (unscaled) frame and fills
    ``records`` with scales relative to that frame.
    """
    blk = c.blocks[b]
    tips = list(blk.fan_order)
    kids = [c.tip_child(v) for v in tips]
    base = all(k is None for k in kids)
    layout = draw_fan(len(tips), eps, (0, 0), alignment, 1, base)
    records[b] = BlockRecord(b, eps, layout.alpha, layout.alignment)
    pos = {blk.root: (Fraction(0), Fraction(0))}
    eps_sub = eps / (4 * len(tips))
    for i, (v, kid) in enumerate(zip(tips, kids)):
        pos[v] = layout.tips[i]
        if kid is None:
            continue
        sub_records: dict = {}
        sub = _draw_block(c, kid.index, eps_sub, layout.tip_dirs[i], sub_records)
        rel = [p for w, p in sub.items() if w != v]
        sigma = _fit_scale(layout.tips[i], rel, _region_constraints(layout, i, eps_sub))
        for w, p in sub.items():
            if w != v:
                pos[w] = geo.add(layout.tips[i], geo.scale(p, sigma))
        for rec in sub_records.values():
            rec.scale *= sigma
            if rec.region_scale is not None:
                rec.region_scale *= sigma
        sub_records[kid.index].region_args = (layout, i, eps_sub)
        sub_records[kid.index].region_scale = Fraction(1)
        records.update(sub_records)
    return pos


def draw_cactus_ic(c: BinaryCactus, eps: float = DEFAULT_EPSILON) -> CactusDrawing:
    """Increasing-chord drawing of a downward-triangulated binary cactus.

    Every upward edge ``r(mu) v`` makes an angle of at most ``eps/2`` with the
    vertical.  Witness paths come from ``witness_path``.
    """
    _check_eps(eps)
    if not is_downward_triangulated(c):
        raise NotDownwardTriangulatedError("cactus is not downward-triangulated")
    n = c.graph.n
    if n == 1:
        return CactusDrawing(EuclidDrawing(((0, 0),), "rational"), c, eps, {})
    records: dict = {}
    pos = _draw_block(c, c.root_block, eps, (0, 1), records)
    coords = tuple(pos[v] for v in range(n))
    return CactusDrawing(EuclidDrawing(coords, "rational"), c, eps, records)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def _down_paths(c: BinaryCactus) -> list:
    out = [None] * c.graph.n
    for v in range(c.graph.n):
        out[v] = c.down_path(v)
    return out


def _witness(c: BinaryCactus, downs, pos_in_block, s: int, t: int) -> list:
    ds, dt = downs[s], downs[t]
    set_t = {v: i for i, v in enumerate(dt)}
    for i, v in enumerate(ds):
        if v in set_t:
            j = set_t[v]
            break
    else:  # pragma: no cover - both paths end at the global root
        raise AssertionError("down paths do not meet")
    if j == 0:      # t lies on the way down from s
        return ds[:i + 1]
    if i == 0:      # s lies on the way down from t
        return dt[:j + 1][::-1]
    xs, xt = ds[i - 1], dt[j - 1]
    b, ps = pos_in_block[xs]
    b2, pt = pos_in_block[xt]
    assert b == b2
    tips = c.blocks[b].fan_order
    fan = list(tips[ps:pt + 1]) if ps < pt else list(tips[pt:ps + 1])[::-1]
    return ds[:i - 1] + fan + dt[:j - 1][::-1]


def _tip_positions(c: BinaryCactus) -> dict:
    out = {}
    for blk in c.blocks:
        for i, v in enumerate(blk.fan_order or ()):
            out[v] = (blk.index, i)
    return out


def witness_path(c: BinaryCactus, s: int, t: int) -> list:
    """Down from ``s`` to the meeting block, along its fan, then up to ``t``."""
    if s == t:
        raise ValueError("s and t must differ")
    return _witness(c, _down_paths(c), _tip_positions(c), s, t)


def all_witnesses(c: BinaryCactus) -> dict:
    """Witness paths for all unordered pairs ``s < t``."""
    downs = _down_paths(c)
    tp = _tip_positions(c)
    n = c.graph.n
    return {(s, t): _witness(c, downs, tp, s, t) for s in range(n) for t in range(s + 1, n)}


# ---------------------------------------------------------------------------
# construction invariants
# ---------------------------------------------------------------------------

def angle_budget_max(cd: CactusDrawing) -> float:
    """Largest angle (degrees) between an upward edge ``r(mu) v`` and the vertical."""
    d = cd.drawing
    worst = 0.0
    for blk in cd.cactus.blocks:
        for v in blk.vertices:
            if v != blk.root:
                worst = max(worst, geo.angle_between(d.float_diff(blk.root, v), (0.0, 1.0)))
    return worst


def alignment_budget_max(cd: CactusDrawing) -> float:
    """Largest angle between an upward edge and its own block's alignment, relative to ``eps/2``."""
    d = cd.drawing
    worst = 0.0
    for b, rec in cd.blocks.items():
        blk = cd.cactus.blocks[b]
        for v in blk.vertices:
            if v != blk.root:
                a = geo.angle_between(d.float_diff(blk.root, v), geo.to_float_vec(rec.alignment))
                worst = max(worst, a - rec.eps / 2)
    return worst


def check_containment(cd: CactusDrawing, tol: float = 1e-9) -> bool:
    """Each recursively drawn subcactus lies in its safe region.

    The test runs in the parent fan's own frame (exact differences divided by
    the frame's scale), so it stays meaningful at any depth.
    """
    d = cd.drawing
    c = cd.cactus
    for b, rec in cd.blocks.items():
        if rec.region is None:
            continue
        v = c.blocks[b].root
        apex = rec.region.apex
        poly = [geo.to_float_point(geo.sub(p, apex)) for p in rec.region.polygon]
        verts = set()
        for bb in c.block_descendants(b):
            verts.update(c.blocks[bb].vertices)
        verts.discard(v)
        for w in verts:
            rel = geo.scale(geo.sub(d.coords[w], d.coords[v]), 1 / rec.region_scale)
            if not geo.point_in_convex_polygon(poly, geo.to_float_point(rel), tol):
                return False
    return True


def scales_decrease(cd: CactusDrawing) -> bool:
    """Every child block is drawn at a strictly smaller scale than its parent."""
    par = cd.cactus.bc.parent
    return all(par[b] is None or rec.scale < cd.blocks[par[b]].scale for b, rec in cd.blocks.items())
