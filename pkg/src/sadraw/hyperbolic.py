"""Self-approaching drawings in the Poincare disk.

Points are complex numbers (tuples ``(x, y)`` are accepted everywhere).
Every predicate first moves one point to the origin with a disk isometry,
so geodesics through it become diameters and the tests reduce to signs of
imaginary parts.  This keeps precision as points approach the boundary.

Trees are drawn on the tiling by regular right-angled hexagons: every tree
vertex sits at a tile centre and every edge crosses the midpoint of a tile
side.  A tile uses every other side, its three *arms*.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .certify import HalfplaneTable, batch_check_paths
from .geometry import GeometryError
from .graphs import BinaryCactus, Graph, GraphError

DISK_MARGIN = 1e-12
HYP_TOL = 1e-9
COSH_CIRCUMRADIUS = math.sqrt(3.0)


class BoundaryPointError(GeometryError):
    pass


class DepthLimitError(GeometryError):
    pass


class DegreeError(GraphError):
    pass


class NotK14SubdivisionError(GraphError):
    pass


class BlockShapeError(GraphError):
    pass


def _c(p) -> complex:
    if isinstance(p, complex):
        z = p
    elif isinstance(p, (int, float)):
        z = complex(p)
    else:
        z = complex(float(p[0]), float(p[1]))
    return z


def _pt(z: complex) -> tuple:
    return (z.real, z.imag)


def one_minus_sq(z: complex) -> float:
    """``1 - |z|^2`` without a separate cancellation step."""
    r = abs(z)
    return (1.0 - r) * (1.0 + r)


def check_point(p, margin: float = DISK_MARGIN) -> complex:
    z = _c(p)
    if not one_minus_sq(z) > margin:
        raise BoundaryPointError(f"point {p} is not strictly inside the unit disk")
    return z


def mobius_to_origin(b, z):
    """``phi_b(z) = (z - b) / (1 - conj(b) z)``, the isometry sending ``b`` to 0."""
    b = _c(b) if not isinstance(b, np.ndarray) else b
    return (z - b) / (1 - np.conj(b) * z)


def hyp_distance(p, q) -> float:
    """Poincare distance ``arcosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2)))``.

    Evaluated as ``2 artanh |phi_p(q)|`` with ``1 - |phi_p(q)|^2`` taken from
    the closed form, which stays accurate for near and far pairs alike.
    """
    p, q = check_point(p, 0.0), check_point(q, 0.0)
    den = abs(1 - p.conjugate() * q)
    w = abs(p - q) / den
    rest = one_minus_sq(p) * one_minus_sq(q) / (den * den)
    return 2.0 * math.log1p(w) - math.log(rest)


def point_at_distance(base, direction: float, dist: float, frame: Optional["DiskIsometry"] = None) -> complex:
    """Point at hyperbolic distance ``dist`` from 0 in direction ``direction`` (degrees)."""
    z = math.tanh(dist / 2) * cmath.exp(1j * math.radians(direction))
    return z if frame is None else frame.apply(z)


# ---------------------------------------------------------------------------
# geodesics and isometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Geodesic:
    """A diameter (``center is None``, unit ``direction``) or a circle orthogonal to the boundary."""

    direction: Optional[complex] = None
    center: Optional[complex] = None
    radius: Optional[float] = None

    @property
    def is_diameter(self) -> bool:
        return self.center is None


def geodesic_through(p, q, tol: float = 1e-14) -> Geodesic:
    """The complete geodesic through ``p`` and ``q``."""
    p, q = check_point(p, 0.0), check_point(q, 0.0)
    if abs(p - q) == 0:
        raise GeometryError("coincident points determine no geodesic")
    cr = (p.conjugate() * q).imag
    if abs(cr) <= tol * max(abs(p), abs(q), 1e-300) * abs(p - q) or min(abs(p), abs(q)) == 0:
        u = p if abs(p) >= abs(q) else q
        return Geodesic(direction=u / abs(u))
    # 2 Re(conj(c) p) = 1 + |p|^2 and the same for q: a 2x2 linear system
    a11, a12, b1 = 2 * p.real, 2 * p.imag, 1 + abs(p) ** 2
    a21, a22, b2 = 2 * q.real, 2 * q.imag, 1 + abs(q) ** 2
    det = a11 * a22 - a12 * a21
    cx = (b1 * a22 - a12 * b2) / det
    cy = (a11 * b2 - b1 * a21) / det
    c = complex(cx, cy)
    return Geodesic(center=c, radius=math.sqrt(abs(c) ** 2 - 1))


def reflect(G: Geodesic, x) -> complex:
    """Reflection in a geodesic (an orientation-reversing isometry)."""
    z = _c(x)
    if G.is_diameter:
        u = G.direction
        return u * u * z.conjugate()
    w = z - G.center
    return G.center + G.radius ** 2 / w.conjugate()


@dataclass(frozen=True)
class DiskIsometry:
    """``z -> rot * (z' - a) / (1 - conj(a) z')`` with ``z' = conj(z)`` when ``reflect``."""

    a: complex = 0j
    rot: complex = 1 + 0j
    reflect: bool = False

    @property
    def matrix(self) -> np.ndarray:
        a = self.a
        return np.array([[self.rot, -self.rot * a], [-a.conjugate(), 1]], dtype=complex)

    @classmethod
    def from_matrix(cls, m, reflect: bool) -> "DiskIsometry":
        p, q, r, s = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
        rot = p / s
        return cls(complex(-q / p), complex(rot / abs(rot)), bool(reflect))

    @classmethod
    def to_origin(cls, b, toward=None) -> "DiskIsometry":
        """Isometry sending ``b`` to 0; with ``toward`` the image of that point lies on the negative y-axis."""
        b = _c(b)
        iso = cls(b)
        if toward is not None:
            w = iso.apply(_c(toward))
            if abs(w) == 0:
                raise GeometryError("coincident points")
            iso = cls(b, -1j * w.conjugate() / abs(w))
        return iso

    @classmethod
    def reflection(cls, G: Geodesic) -> "DiskIsometry":
        if G.is_diameter:
            u = G.direction
            return cls(0j, u * u, True)
        c = G.center
        return cls(1 / c, -c / c.conjugate(), True)

    def apply(self, z):
        if isinstance(z, np.ndarray):
            w = np.conj(z) if self.reflect else z
            return self.rot * (w - self.a) / (1 - np.conj(self.a) * w)
        z = _c(z)
        w = z.conjugate() if self.reflect else z
        return self.rot * (w - self.a) / (1 - self.a.conjugate() * w)

    def compose(self, other: "DiskIsometry") -> "DiskIsometry":
        """``self o other`` (apply ``other`` first)."""
        B = other.matrix
        if self.reflect:
            B = np.conj(B)
        return DiskIsometry.from_matrix(self.matrix @ B, self.reflect != other.reflect)

    def inverse(self) -> "DiskIsometry":
        m = np.linalg.inv(self.matrix)
        if self.reflect:
            m = np.conj(m)
        return DiskIsometry.from_matrix(m, self.reflect)


def hyp_halfplane_contains(a, b, x, tol: float = HYP_TOL) -> bool:
    """Whether ``x`` lies in the closed halfplane through ``b`` orthogonal to ``ab``, away from ``a``."""
    a, b, x = _c(a), _c(b), _c(x)
    if a == b:
        raise GeometryError("coincident points")
    wa = (a - b) / (1 - b.conjugate() * a)
    wx = (x - b) / (1 - b.conjugate() * x)
    return (wa.conjugate() * wx).real <= tol * abs(wa)


def hyp_angle(v, a, b) -> float:
    """Counterclockwise angle (degrees, in ``[0, 360)``) at ``v`` from arc ``va`` to arc ``vb``."""
    v = _c(v)
    wa = (_c(a) - v) / (1 - v.conjugate() * _c(a))
    wb = (_c(b) - v) / (1 - v.conjugate() * _c(b))
    return math.degrees(cmath.phase(wb / wa)) % 360.0


def distance_to_geodesic(p, q, x) -> float:
    """Hyperbolic distance from ``x`` to the geodesic through ``p`` and ``q``."""
    p, q, x = _c(p), _c(q), _c(x)
    iso = DiskIsometry.to_origin(p)
    u = iso.apply(q)
    w = iso.apply(x)
    h = abs((w * (u.conjugate() / abs(u))).imag)
    return math.asinh(2 * h / one_minus_sq(w))


def lower_point_closer(p, y: float) -> bool:
    """``d(p, p-) < d(p, p+)`` for ``p-`` = (0,-y), ``p+`` = (0,y)."""
    return hyp_distance(p, (0.0, -y)) < hyp_distance(p, (0.0, y))


# ---------------------------------------------------------------------------
# the right-angled hexagon
# ---------------------------------------------------------------------------

ARM_ANGLES = (90.0, 210.0, 330.0)


def regular_hexagon_90():
    """Circumradius ``R`` (``cosh R = sqrt 3``) and the corners ``p_0 .. p_5``.

    ``p_j`` lies at angle ``60 j + 60`` degrees, so the sides ``p_0 p_1``,
    ``p_2 p_3`` and ``p_4 p_5`` have their midpoints at 90, 210 and 330.
    """
    R = math.acosh(COSH_CIRCUMRADIUS)
    r = math.tanh(R / 2)
    return R, [r * cmath.exp(1j * math.radians(60 * j + 60)) for j in range(6)]


def hexagon_inradius() -> float:
    """Centre-to-side distance ``arcosh(sqrt 2)``; the length of every half edge."""
    return math.acosh(math.sqrt(2.0))


def _base_arms():
    rm = math.sqrt(2.0) - 1.0          # tanh(inradius / 2)
    mids = [rm * cmath.exp(1j * math.radians(t)) for t in ARM_ANGLES]
    sides = [Geodesic(center=math.sqrt(2.0) * cmath.exp(1j * math.radians(t)), radius=1.0) for t in ARM_ANGLES]
    return mids, sides


_MIDS, _SIDES = _base_arms()
_REFL = [DiskIsometry.reflection(s) for s in _SIDES]


# ---------------------------------------------------------------------------
# drawings
# ---------------------------------------------------------------------------

@dataclass
class HypDrawing:
    """Vertex positions in the Poincare disk.

    ``graph`` is the drawn graph.  ``tree_edges`` marks the arcs of the
    spanning tree a construction certifies; ``subdivision`` maps an original
    tree edge to its subdivision vertex.
    """

    coords: tuple
    graph: Optional[Graph] = None
    tree_edges: Optional[tuple] = None
    subdivision: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coords = tuple(_pt(_c(p)) for p in self.coords)
        for p in self.coords:
            check_point(p, 0.0)
        if len(set(self.coords)) != len(self.coords):
            raise GeometryError("two vertices share a position")

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def z(self) -> np.ndarray:
        return np.array([complex(x, y) for x, y in self.coords])

    def __getitem__(self, v) -> complex:
        x, y = self.coords[v]
        return complex(x, y)

    def tree(self) -> Graph:
        if self.tree_edges is None:
            return self.graph
        return Graph(self.n, tuple(self.tree_edges))

    def min_margin(self) -> float:
        return min(one_minus_sq(self[v]) for v in range(self.n))


def _guard(z: complex) -> complex:
    if one_minus_sq(z) < DISK_MARGIN:
        raise DepthLimitError("construction reached the disk-margin limit; the tree is too deep")
    return z


def _embed_tiles(n: int, adj: list, start: int, slots: list):
    """Place a tree of maximum degree 3 on hexagon tiles.

    ``slots[v]`` is the counterclockwise cyclic order of the neighbours of
    ``v`` padded to length 3 with ``None``; neighbours take arms in that
    order.  Returns per-vertex tile frames and the arm index of every edge
    end.
    """
    frames: list = [None] * n
    arm: dict = {}
    frames[start] = DiskIsometry()
    for s, w in enumerate(slots[start]):
        if w is not None:
            arm[(start, w)] = s
    queue = deque([start])
    while queue:
        u = queue.popleft()
        fu = frames[u]
        for w in adj[u]:
            if frames[w] is not None:
                continue
            j = arm[(u, w)]
            fw = fu.compose(_REFL[j])
            frames[w] = fw
            _guard(fw.apply(0j))
            # the shared side keeps index j; orientation flips under reflection
            step = -1 if fw.reflect else 1
            k = slots[w].index(u)
            for s, x in enumerate(slots[w]):
                if x is not None and x != u:
                    arm[(w, x)] = (j + step * (s - k)) % 3
            queue.append(w)
    return frames, arm


def _check_tree(t: Graph):
    if not t.is_tree():
        raise GraphError("input is not a tree")


def _tree_center(t: Graph) -> int:
    """A vertex of minimum eccentricity (smallest id on ties)."""
    if t.n == 1:
        return 0
    deg = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if deg[v] <= 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return min(layer)


def draw_binary_tree_hyp(t: Graph, root: Optional[int] = None) -> HypDrawing:
    """Hexagon-tiling drawing of a tree whose vertices have degree 1 or 3.

    Every edge is subdivided once; original vertices sit at tile centres and
    subdivision vertices (ids ``n, n+1, ...`` in sorted edge order) at side
    midpoints, so every arc has length ``arcosh(sqrt 2)`` and incident arcs
    meet at 120 degrees.
    """
    _check_tree(t)
    bad = [v for v in range(t.n) if t.degree(v) not in (1, 3)]
    if t.n < 2 or bad:
        raise DegreeError(f"vertices must have degree 1 or 3 (violations: {bad[:5]})")
    if root is None:
        deg3 = [v for v in range(t.n) if t.degree(v) == 3]
        root = deg3[0] if deg3 else 0
    slots = [list(t.adj[v]) + [None] * (3 - t.degree(v)) for v in range(t.n)]
    frames, arm = _embed_tiles(t.n, t.adj, root, slots)
    pos = [f.apply(0j) for f in frames]
    sub = {}
    edges = []
    for k, (u, w) in enumerate(t.edges):
        m = t.n + k
        sub[(u, w)] = m
        pos.append(_guard(frames[u].apply(_MIDS[arm[(u, w)]])))
        edges += [(u, m), (m, w)]
    g = Graph(len(pos), tuple(edges))
    return HypDrawing(tuple(pos), g, None, sub)


def is_k14_subdivision(t: Graph) -> bool:
    if not t.is_tree():
        return False
    degs = [t.degree(v) for v in range(t.n)]
    return degs.count(4) == 1 and all(x <= 2 for x in degs if x != 4)


K14_STEP = 1.0
K14_RATIO = 0.5


def draw_k14_subdivision(t: Graph, step: float = K14_STEP, ratio: float = K14_RATIO) -> HypDrawing:
    """Subdivided ``K_{1,4}``: centre at 0, legs along the rays at 0, 90, 180, 270 degrees.

    The ``j``-th vertex of a leg lies at hyperbolic distance
    ``step * (1 + ratio + ... + ratio^(j-1))`` from the centre.
    """
    if not is_k14_subdivision(t):
        raise NotK14SubdivisionError("tree is not a subdivision of K_{1,4}")
    c = next(v for v in range(t.n) if t.degree(v) == 4)
    pos: list = [None] * t.n
    pos[c] = 0j
    for i, w in enumerate(t.adj[c]):
        prev, cur, dist, h = c, w, 0.0, step
        while True:
            dist += h
            h *= ratio
            pos[cur] = point_at_distance(0j, 90.0 * i, dist)
            nxt = [x for x in t.adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
    return HypDrawing(tuple(pos), t)


def hyp_tree_admits_ic(t: Graph) -> bool:
    """Maximum degree at most 3, or a subdivision of ``K_{1,4}``."""
    if not t.is_tree():
        raise GraphError("input is not a tree")
    if t.n <= 1 or max(t.degree(v) for v in range(t.n)) <= 3:
        return True
    return is_k14_subdivision(t)


# ---------------------------------------------------------------------------
# binary cactuses
# ---------------------------------------------------------------------------

@dataclass
class CactusTree:
    tree: Graph
    closing: tuple          # removed cycle edges (v_0, v_k)
    turns: dict             # v_j -> (v_{j-1}, v_{j+1}) with ccw angle 120 degrees


def cactus_spanning_tree(c: BinaryCactus) -> CactusTree:
    """Remove ``v_0 v_k`` from every cycle block ``v_0 .. v_k`` (``v_0`` its root)."""
    closing = []
    turns = {}
    for blk in c.blocks:
        if blk.kind == "edge":
            continue
        nv = len(blk.vertices)
        m = len(c.bc.block_edges(blk.index))
        if m != nv:
            raise BlockShapeError(f"block {blk.index} is neither an edge nor a cycle")
        order = list(blk.order)
        closing.append((order[0], order[-1]))
        for j in range(1, len(order) - 1):
            turns[order[j]] = (order[j - 1], order[j + 1])
    cl = {frozenset(e) for e in closing}
    tree = Graph(c.graph.n, tuple(e for e in c.graph.edges if frozenset(e) not in cl))
    return CactusTree(tree, tuple(closing), turns)


def draw_binary_cactus_hyp(c: BinaryCactus, start: Optional[int] = None) -> HypDrawing:
    """Planar drawing of a binary cactus with edge and cycle blocks.

    The spanning tree from ``cactus_spanning_tree`` is laid on hexagon tiles
    with the counterclockwise angle ``v_{j-1} v_j v_{j+1}`` equal to 120
    degrees along every cycle path; the closing arcs are added back.  The
    tiling starts at a centre vertex of the tree to keep it shallow.
    """
    ct = cactus_spanning_tree(c)
    t = ct.tree
    if max((t.degree(v) for v in range(t.n)), default=0) > 3:
        raise BlockShapeError("spanning tree has a vertex of degree > 3")
    slots = []
    for v in range(t.n):
        if v in ct.turns:
            a, b = ct.turns[v]
            rest = [w for w in t.adj[v] if w not in (a, b)]
            slots.append([a, b] + rest + [None] * (1 - len(rest)))
        else:
            slots.append(list(t.adj[v]) + [None] * (3 - t.degree(v)))
    if start is None:
        start = _tree_center(t)
    frames, _ = _embed_tiles(t.n, t.adj, start, slots)
    pos = [f.apply(0j) for f in frames]
    return HypDrawing(tuple(pos), c.graph, t.edges)


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

class HypHalfplaneTable(HalfplaneTable):
    """``table[e, x]`` = ``hyp_halfplane_contains(u, v, x)`` for ``segs[e] = (u, v)``."""

    def __init__(self, d: HypDrawing, segs, tol: float = HYP_TOL):
        self.d = d
        self.segs = list(segs)
        self.index = {s: i for i, s in enumerate(self.segs)}
        self.tol = tol
        self.table = self._build()

    def _build(self):
        Z = self.d.z
        if not self.segs:
            return np.zeros((0, len(Z)), dtype=bool)
        U = np.array([s[0] for s in self.segs])
        V = np.array([s[1] for s in self.segs])
        b = Z[V][:, None]
        wa = (Z[U][:, None] - b) / (1 - np.conj(b) * Z[U][:, None])
        wx = (Z[None, :] - b) / (1 - np.conj(b) * Z[None, :])
        return (np.conj(wa) * wx).real <= self.tol * np.abs(wa)

    @property
    def n(self) -> int:
        return self.d.n


def tree_paths(t: Graph) -> list:
    """The path between every pair ``s < t`` of a tree."""
    out = []
    for s in range(t.n):
        par = [-1] * t.n
        par[s] = s
        order = [s]
        for u in order:
            for w in t.adj[u]:
                if par[w] < 0:
                    par[w] = u
                    order.append(w)
        for x in range(s + 1, t.n):
            p = [x]
            while p[-1] != s:
                p.append(par[p[-1]])
            out.append(p[::-1])
    return out


def discrete_check(d: HypDrawing, t: Graph, tol: float = HYP_TOL) -> np.ndarray:
    """Halfplane verdict per tree path (both directions), in ``tree_paths`` order."""
    segs = []
    for u, v in t.edges:
        segs += [(u, v), (v, u)]
    table = HypHalfplaneTable(d, segs, tol)
    return batch_check_paths(table, tree_paths(t), True)


def _arc_points(za: complex, zb: complex, fr: np.ndarray) -> np.ndarray:
    """Points of the arc ``za zb`` at hyperbolic fractions ``fr``."""
    iso = DiskIsometry.to_origin(za)
    w = iso.apply(zb)
    D = 2 * math.atanh(abs(w))
    loc = np.tanh(fr * D / 2) * (w / abs(w))
    return iso.inverse().apply(loc)


def sampled_normal_check(d: HypDrawing, t: Graph, samples: int = 200, tol: float = 1e-12):
    """For every arc and ``samples`` interior points, the normal geodesic meets no other arc.

    Returns ``(ok, worst)`` where ``worst`` is the smallest normalized
    clearance seen (negative when some normal crosses an arc).
    """
    Z = d.z
    E = np.array(t.edges, dtype=np.int64).reshape(-1, 2)
    fr = (np.arange(samples) + 0.5) / samples
    worst = math.inf
    for k, (a, b) in enumerate(E):
        R = _arc_points(Z[a], Z[b], fr)
        W = (Z[None, :] - R[:, None]) / (1 - np.conj(R)[:, None] * Z[None, :])
        u = W[:, b] / np.abs(W[:, b])
        nrm = 1j * u
        K = 2 * W / (1 + np.abs(W) ** 2)
        side = (np.conj(nrm)[:, None] * K).imag
        others = np.delete(np.arange(len(E)), k)
        if not len(others):
            continue
        sp = side[:, E[others, 0]]
        sq = side[:, E[others, 1]]
        # clearance of the segment from the line: >0 when both ends are on one side
        clear = np.where(sp * sq > 0, np.minimum(np.abs(sp), np.abs(sq)), -np.minimum(np.abs(sp), np.abs(sq)))
        worst = min(worst, float(clear.min()))
    return worst > tol, worst


@dataclass
class HypTreeReport:
    discrete: bool
    sampled: bool
    discrete_failures: list
    sampled_clearance: float

    def __bool__(self) -> bool:
        return self.discrete and self.sampled


def tree_report_hyp(d: HypDrawing, t: Graph, tol: float = HYP_TOL, samples: int = 200) -> HypTreeReport:
    verdict = discrete_check(d, t, tol)
    paths = tree_paths(t)
    fails = [(p[0], p[-1]) for p, ok in zip(paths, verdict) if not ok]
    ok2, clear = sampled_normal_check(d, t, samples)
    return HypTreeReport(not fails, ok2, fails, clear)


def certify_tree_hyp(d: HypDrawing, t: Graph, tol: float = HYP_TOL, samples: int = 200) -> bool:
    """Discrete halfplane check on all tree paths and the sampled-normal check; both must pass."""
    return bool(tree_report_hyp(d, t, tol, samples))


def _orient_table(Z: np.ndarray, E: np.ndarray) -> tuple:
    """Signed side of every vertex w.r.t. every arc, plus the position along it."""
    a = Z[E[:, 0]][:, None]
    W = (Z[None, :] - a) / (1 - np.conj(a) * Z[None, :])
    wb = W[np.arange(len(E)), E[:, 1]][:, None]
    u = wb / np.abs(wb)
    rel = np.conj(u) * W
    return rel.imag, rel.real, np.abs(wb)


def check_hyp_planarity(d: HypDrawing, g: Optional[Graph] = None, tol: float = 1e-12) -> bool:
    """No two geodesic arcs cross or touch away from a shared endpoint."""
    g = g or d.graph
    E = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
    if len(E) < 2:
        return True
    side, along, length = _orient_table(d.z, E)
    s = np.where(np.abs(side) <= tol, 0, np.sign(side)).astype(np.int8)
    i1 = np.arange(len(E))
    # a vertex in the relative interior of an arc
    on = (s == 0) & (along > tol) & (along < length - tol)
    on[i1, E[:, 0]] = False
    on[i1, E[:, 1]] = False
    if on.any():
        return False
    sa = s[:, E[:, 0]]          # side of arc j's first end w.r.t. arc i
    sb = s[:, E[:, 1]]
    straddle = (sa * sb) < 0
    both = straddle & straddle.T
    shared = ((E[:, 0][:, None] == E[:, 0][None, :]) | (E[:, 0][:, None] == E[:, 1][None, :])
              | (E[:, 1][:, None] == E[:, 0][None, :]) | (E[:, 1][:, None] == E[:, 1][None, :]))
    return not (both & ~shared).any()


# ---------------------------------------------------------------------------
# measurements
# ---------------------------------------------------------------------------

def arc_lengths(d: HypDrawing, g: Optional[Graph] = None) -> list:
    g = g or d.graph
    return [hyp_distance(d[u], d[v]) for u, v in g.edges]


def incident_angles(d: HypDrawing, g: Optional[Graph] = None) -> dict:
    """Counterclockwise angles between consecutive arcs around every vertex of degree >= 2."""
    g = g or d.graph
    out = {}
    for v in range(g.n):
        nb = g.adj[v]
        if len(nb) < 2:
            continue
        zv = d[v]
        args = sorted(math.degrees(cmath.phase((d[w] - zv) / (1 - zv.conjugate() * d[w]))) % 360.0 for w in nb)
        gaps = [(args[(i + 1) % len(args)] - args[i]) % 360.0 for i in range(len(args))]
        out[v] = gaps
    return out


def subdivision_collinearity(d: HypDrawing) -> list:
    """Distance of each far end from the geodesic through the near end and the midpoint."""
    out = []
    for (u, w), m in d.subdivision.items():
        out.append(distance_to_geodesic(d[u], d[m], d[w]))
    return out
