"""Schnyder labelings of planar 3-trees and alpha-Schnyder drawings.

Colors are the strings ``"red"``, ``"green"`` and ``"blue"``.  A face is
stored as its corner tuple ``(red, green, blue)``: inserting ``v`` into the
face ``(x, y, z)`` orients ``v -> x`` red, ``v -> y`` green and ``v -> z``
blue.  With the outer vertices ``r, g, b`` at the top, bottom right and
bottom left of an equilateral triangle, every face tuple is a clockwise
triangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from fractions import Fraction

import numpy as np

from . import geometry as geo
from .certify import EuclidDrawing, check_planar_drawing
from .graphs import Graph, GraphError

COLORS = ("red", "green", "blue")
# outgoing direction (degrees) of each color in an alpha-Schnyder drawing
CONE_CENTER = {"red": 90.0, "green": 330.0, "blue": 210.0}
OUTER_POSITIONS = ((0.0, 1.0), (math.sqrt(3) / 2, -0.5), (-math.sqrt(3) / 2, -0.5))


class NotA3TreeError(GraphError):
    pass


class NonPlanarDrawingError(ValueError):
    pass


@dataclass
class SchnyderLabeling:
    """Orientation and coloring of the interior edges, plus the interior faces.

    ``parent[c][v]`` is the target of the outgoing ``c`` edge of ``v``
    (``None`` for outer vertices).  ``faces`` are clockwise ``(red, green,
    blue)`` corner tuples of all interior faces.
    """

    n: int
    outer: tuple
    parent: dict
    faces: list
    _cw: Optional[dict] = field(default=None, repr=False)

    @property
    def interior(self) -> list:
        return [v for v in range(self.n) if v not in self.outer]

    def edges(self) -> list:
        """``(u, v, color)`` triples with orientation ``u -> v``, by color then ``u``."""
        return [(v, self.parent[c][v], c) for c in COLORS for v in self.interior]

    def color_of(self, u: int, v: int) -> Optional[tuple]:
        """``(color, forward)`` for the edge ``uv``; ``None`` for outer edges."""
        for c in COLORS:
            if self.parent[c][u] == v:
                return c, True
            if self.parent[c][v] == u:
                return c, False
        return None

    def tree_path(self, color: str, v: int) -> list:
        """The ``v``-to-root path in ``T_color``."""
        out = [v]
        p = self.parent[color]
        while p[out[-1]] is not None:
            out.append(p[out[-1]])
        return out

    def root_of(self, color: str) -> int:
        return self.outer[COLORS.index(color)]

    def cw_rotation(self) -> dict:
        """Clockwise neighbour order of every vertex, derived from the faces."""
        if self._cw is None:
            nxt: dict = {}
            for f in self.faces:
                for i in range(3):
                    a, b, c = f[i], f[(i + 1) % 3], f[(i + 2) % 3]
                    nxt.setdefault(a, {})[b] = c
            out = {}
            for v, m in nxt.items():
                start = min(m)
                order = [start]
                while m.get(order[-1], start) != start:
                    order.append(m[order[-1]])
                out[v] = order
            self._cw = out
        return self._cw

    @classmethod
    def from_edges(cls, n: int, outer, colored_edges, faces) -> "SchnyderLabeling":
        parent = {c: [None] * n for c in COLORS}
        for u, v, c in colored_edges:
            if parent[c][u] is not None:
                raise ValueError(f"vertex {u} has two outgoing {c} edges")
            parent[c][u] = v
        return cls(n, tuple(outer), parent, [tuple(f) for f in faces])


def recognize_3tree(g: Graph, outer=(0, 1, 2)) -> list:
    """Elimination order ``[(v, (x, y, z)), ...]`` of a planar 3-tree.

    Interior degree-3 vertices with pairwise adjacent neighbours are peeled
    off until only the outer triangle is left; the corner roles of each face
    are then recovered by replaying the insertions.
    """
    outer = tuple(outer)
    if len(set(outer)) != 3 or any(not (0 <= v < g.n) for v in outer):
        raise ValueError("outer must be three distinct vertices")
    for i in range(3):
        if not g.has_edge(outer[i], outer[(i + 1) % 3]):
            raise NotA3TreeError("outer vertices do not form a triangle")
    adj = [set(a) for a in g.adj]
    alive = set(range(g.n))
    removed = []
    stack = [v for v in range(g.n) if v not in outer and len(adj[v]) == 3]
    while stack:
        v = stack.pop()
        if v not in alive or len(adj[v]) != 3:
            continue
        a, b, c = sorted(adj[v])
        if not (b in adj[a] and c in adj[a] and c in adj[b]):
            continue
        removed.append((v, (a, b, c)))
        alive.discard(v)
        for w in (a, b, c):
            adj[w].discard(v)
            if w not in outer and len(adj[w]) == 3:
                stack.append(w)
    if alive != set(outer) or any(len(adj[v]) != 2 for v in outer):
        raise NotA3TreeError("graph does not reduce to the outer triangle")
    faces = {frozenset(outer): outer}
    order = []
    for v, nb in reversed(removed):
        f = faces.pop(frozenset(nb), None)
        if f is None:
            raise NotA3TreeError(f"neighbours of {v} do not bound a face")
        x, y, z = f
        faces[frozenset((v, y, z))] = (v, y, z)
        faces[frozenset((x, v, z))] = (x, v, z)
        faces[frozenset((x, y, v))] = (x, y, v)
        order.append((v, f))
    return order


def _replay(n: int, outer, order):
    parent = {c: [None] * n for c in COLORS}
    faces = {tuple(outer)}
    for v, (x, y, z) in order:
        f = (x, y, z)
        if f not in faces:
            raise NotA3TreeError(f"face {f} is not a face when inserting {v}")
        faces.discard(f)
        faces.update([(v, y, z), (x, v, z), (x, y, v)])
        parent["red"][v], parent["green"][v], parent["blue"][v] = x, y, z
    return parent, sorted(faces)


def schnyder_label_3tree(g: Graph, order, outer=(0, 1, 2)) -> SchnyderLabeling:
    """Labeling induced by the insertion roles (``v -> x`` red, ``y`` green, ``z`` blue)."""
    parent, faces = _replay(g.n, outer, order)
    lab = SchnyderLabeling(g.n, tuple(outer), parent, faces)
    if not verify_labeling(lab, g):
        raise AssertionError("insertion labeling violates the Schnyder pattern")
    return lab


def verify_labeling(L: SchnyderLabeling, g: Optional[Graph] = None) -> bool:
    """Check the clockwise pattern at every interior vertex and that each tree spans.

    Around an interior vertex, clockwise: one outgoing red, incoming blue,
    one outgoing green, incoming red, one outgoing blue, incoming green.
    """
    code = {("red", True): "R", ("green", True): "G", ("blue", True): "B",
            ("red", False): "r", ("green", False): "g", ("blue", False): "b"}
    rot = L.cw_rotation()
    for v in L.interior:
        if any(L.parent[c][v] is None for c in COLORS):
            return False
        if g is not None and set(rot.get(v, ())) != set(g.adj[v]):
            return False
        labels = []
        for w in rot.get(v, ()):
            cf = L.color_of(v, w)
            if cf is None:
                return False
            labels.append(code[cf])
        if labels.count("R") != 1 or labels.count("G") != 1 or labels.count("B") != 1:
            return False
        i = labels.index("R")
        s = "".join(labels[i:] + labels[:i])
        j, k = s.index("G"), s.index("B")
        if not (j < k and set(s[1:j]) <= {"b"} and set(s[j + 1:k]) <= {"r"} and set(s[k + 1:]) <= {"g"}):
            return False
    # every tree path reaches its own root
    for c in COLORS:
        root = L.root_of(c)
        for v in L.interior:
            seen = set()
            w = v
            while L.parent[c][w] is not None:
                if w in seen:
                    return False
                seen.add(w)
                w = L.parent[c][w]
            if w != root:
                return False
    return True


# ---------------------------------------------------------------------------
# alpha-Schnyder check and construction
# ---------------------------------------------------------------------------

def _in_cone(vec, center: float, half: float, tol: float) -> bool:
    a = (geo.angle_of(vec) - center + 180.0) % 360.0 - 180.0
    return abs(a) <= half + tol


def alpha_schnyder_margins(d: EuclidDrawing, L: SchnyderLabeling, alpha: float) -> list:
    """Per outgoing edge ``(v, color, slack)``: degrees left until the cone boundary."""
    out = []
    for v in L.interior:
        for c in COLORS:
            vec = d.float_diff(v, L.parent[c][v])
            a = (geo.angle_of(vec) - CONE_CENTER[c] + 180.0) % 360.0 - 180.0
            out.append((v, c, alpha / 2 - abs(a)))
    return out


def check_alpha_schnyder(d: EuclidDrawing, L: SchnyderLabeling, alpha: float, tol: float = 1e-9,
                         graph: Optional[Graph] = None) -> bool:
    """Outgoing red/blue/green edges point into the cones around 90/210/330 degrees.

    ``tol`` is in degrees.  When ``graph`` is given its drawing must be planar.
    """
    if not (0.0 < alpha <= 60.0):
        raise ValueError("alpha must lie in (0, 60]")
    if graph is not None and not check_planar_drawing(d, graph):
        raise NonPlanarDrawingError("drawing is not planar")
    return all(slack >= -tol for _, _, slack in alpha_schnyder_margins(d, L, alpha))


def _cone_halfplanes(apex, center: float, half: float) -> list:
    """The cone ``apex + [center - half, center + half]`` as two halfplanes."""
    lo = geo.direction(center - half)
    hi = geo.direction(center + half)
    return [geo.Halfplane(apex, (-lo[1], lo[0])), geo.Halfplane(apex, (hi[1], -hi[0]))]


def feasible_region(px, py, pz, alpha: float) -> list:
    """Points of triangle ``xyz`` seeing ``x``, ``y``, ``z`` in the red, green, blue cones."""
    poly = [px, py, pz]
    if geo.polygon_area2(poly) > 0:
        poly = poly[::-1]
    # p sees x in the red cone iff p lies in x + (red cone reversed)
    hs = (_cone_halfplanes(px, CONE_CENTER["red"] + 180.0, alpha / 2)
          + _cone_halfplanes(py, CONE_CENTER["green"] + 180.0, alpha / 2)
          + _cone_halfplanes(pz, CONE_CENTER["blue"] + 180.0, alpha / 2))
    for h in hs:
        poly = geo.clip_polygon(poly, h)
        if len(poly) < 3:
            return []
    return poly


SHRINK = 0.95
GRID_BITS = 30   # placement grid, relative to the size of the face


def _log2_size(q: Fraction) -> int:
    q = abs(q)
    return q.numerator.bit_length() - q.denominator.bit_length()


def _snap(c, bits: int = GRID_BITS) -> tuple:
    q = 1 << bits
    return Fraction(round(c[0] * q), q), Fraction(round(c[1] * q), q)


def _local(pts, origin, unit):
    return [geo.to_float_point(geo.scale(geo.sub(p, origin), 1 / unit)) for p in pts]


def _place(px, py, pz, alpha: float, exact: bool):
    """Placement point for a vertex inserted into the face ``(x, y, z)``.

    In exact mode the feasible region is computed in floats in a local frame
    and then recomputed in a second frame centred on it with its own size as
    unit, so thin faces deep in the recursion stay well conditioned.  The
    centroid is snapped to a dyadic grid of that frame and mapped back
    exactly.
    """
    if not exact:
        poly = feasible_region(px, py, pz, alpha)
        if len(poly) < 3 or geo.polygon_area2(poly) == 0:
            return None
        return geo.polygon_centroid(poly)
    origin = px
    unit = Fraction(2) ** _log2_size(max(abs(c) for p in (py, pz) for c in geo.sub(p, px)))
    for step in range(2):
        poly = feasible_region(*_local((px, py, pz), origin, unit), alpha)
        if len(poly) < 3 or geo.polygon_area2(poly) == 0:
            return None
        c = geo.polygon_centroid(poly)
        if step == 0:
            ext = max(max(abs(p[0] - c[0]), abs(p[1] - c[1])) for p in poly)
            origin = geo.add(origin, geo.scale(_snap(c), unit))
            unit = unit * Fraction(2) ** math.frexp(ext)[1]
    shrunk = [geo.add(c, geo.scale(geo.sub(p, c), SHRINK)) for p in poly]
    snapped = _snap(c)
    if not geo.point_in_convex_polygon(shrunk, geo.to_float_point(snapped), 0):
        return None
    return geo.add(origin, geo.scale(snapped, unit))


def _place_exact(px, py, pz, alpha: float):
    """Slow fallback of ``_place``: clip with exact arithmetic (dyadic cone normals)."""
    poly = [px, py, pz]
    if geo.polygon_area2(poly) > 0:
        poly = poly[::-1]
    for apex, col in ((px, "red"), (py, "green"), (pz, "blue")):
        for h in _cone_halfplanes(apex, CONE_CENTER[col] + 180.0, alpha / 2):
            poly = geo.clip_polygon(poly, geo.Halfplane(h.anchor, tuple(map(Fraction, h.normal))))
            if len(poly) < 3:
                return None
    if geo.polygon_area2(poly) == 0:
        return None
    c = geo.polygon_centroid(poly)
    ext = max(max(abs(p[0] - c[0]), abs(p[1] - c[1])) for p in poly)
    unit = Fraction(2) ** _log2_size(ext)
    snapped = geo.scale(_snap(geo.scale(c, 1 / unit)), unit)
    shrunk = [geo.add(c, geo.scale(geo.sub(p, c), Fraction(SHRINK))) for p in poly]
    if not geo.point_in_convex_polygon(shrunk, snapped, 0):
        return None
    return snapped


def _outer_exact():
    return tuple((Fraction(x), Fraction(y)) for x, y in OUTER_POSITIONS)


def draw_alpha_schnyder(g: Graph, order, alpha: float = 30.0, outer=(0, 1, 2), backend: str = "rational"):
    """alpha-Schnyder drawing of a planar 3-tree from its elimination order.

    The outer triangle is equilateral with ``r`` on top.  Every inserted
    vertex goes to the centroid of its feasible region (which stays inside
    the region shrunk by ``SHRINK``); the rational backend snaps it to a
    dyadic grid far finer than the face, so nested faces stay resolvable at
    any depth.  Returns ``(EuclidDrawing, SchnyderLabeling)``.
    """
    if not (0.0 < alpha <= 60.0):
        raise ValueError("alpha must lie in (0, 60]")
    if backend not in ("rational", "float64"):
        raise ValueError(f"unknown backend {backend!r}")
    exact = backend == "rational"
    lab = schnyder_label_3tree(g, order, outer)
    pos: list = [None] * g.n
    for v, p in zip(outer, _outer_exact() if exact else OUTER_POSITIONS):
        pos[v] = p
    for v, (x, y, z) in order:
        p = _place(pos[x], pos[y], pos[z], alpha, exact)
        if p is None and exact:
            p = _place_exact(pos[x], pos[y], pos[z], alpha)
        if p is None:
            raise AssertionError(f"empty feasible region when inserting vertex {v}")
        pos[v] = p
    return EuclidDrawing(tuple(pos), backend), lab


# ---------------------------------------------------------------------------
# face counts (classical Schnyder drawing)
# ---------------------------------------------------------------------------

def _face_adjacency(L: SchnyderLabeling):
    by_edge: dict = {}
    for i, f in enumerate(L.faces):
        for a in range(3):
            e = frozenset((f[a], f[(a + 1) % 3]))
            by_edge.setdefault(e, []).append(i)
    return by_edge


def region_faces(L: SchnyderLabeling, v: int, _adj=None) -> tuple:
    """Interior face counts ``(|R_red(v)|, |R_green(v)|, |R_blue(v)|)``.

    ``R_red(v)`` is bounded by the green and blue tree paths of ``v`` and the
    outer edge ``gb``; the count is a flood fill over the dual graph that
    starts at the interior face on ``gb`` and never crosses the boundary.
    """
    f_int = len(L.faces)
    if v in L.outer:
        out = [0, 0, 0]
        out[L.outer.index(v)] = f_int
        return tuple(out)
    by_edge = _adj or _face_adjacency(L)
    counts = []
    for i, c in enumerate(COLORS):
        c1, c2 = COLORS[(i + 1) % 3], COLORS[(i + 2) % 3]
        a, b = L.root_of(c1), L.root_of(c2)
        wall = {frozenset((a, b))}
        for cc in (c1, c2):
            p = L.tree_path(cc, v)
            wall.update(frozenset(e) for e in zip(p, p[1:]))
        start = by_edge[frozenset((a, b))][0]
        seen = {start}
        stack = [start]
        while stack:
            fi = stack.pop()
            f = L.faces[fi]
            for k in range(3):
                e = frozenset((f[k], f[(k + 1) % 3]))
                if e in wall:
                    continue
                for fj in by_edge[e]:
                    if fj not in seen:
                        seen.add(fj)
                        stack.append(fj)
        counts.append(len(seen))
    return tuple(counts)


def face_counts(L: SchnyderLabeling) -> list:
    adj = _face_adjacency(L)
    return [region_faces(L, v, adj) for v in range(L.n)]


def schnyder_face_count_drawing(g: Graph, L: SchnyderLabeling):
    """Classical Schnyder drawing: barycentric map of the face counts.

    Returns ``(EuclidDrawing, counts)``; ``counts[v]`` sums to ``f - 1``.
    """
    counts = face_counts(L)
    total = len(L.faces)
    R, G, B = OUTER_POSITIONS
    pos = []
    for nr, ng, nb in counts:
        pos.append(((nr * R[0] + ng * G[0] + nb * B[0]) / total,
                    (nr * R[1] + ng * G[1] + nb * B[1]) / total))
    return EuclidDrawing(tuple(pos), "float64"), counts


# ---------------------------------------------------------------------------
# witness paths for 30-degree drawings
# ---------------------------------------------------------------------------

def _tree_levels(parent: list, roots) -> list:
    """Vertices grouped by depth in a parent-pointer forest (roots excluded)."""
    depth = [None] * len(parent)
    for r in roots:
        depth[r] = 0

    def dep(v):
        chain = []
        while depth[v] is None:
            chain.append(v)
            v = parent[v]
        d0 = depth[v]
        for w in reversed(chain):
            d0 += 1
            depth[w] = d0
        return depth[chain[0]] if chain else depth[v]

    for v in range(len(parent)):
        dep(v)
    levels: dict = {}
    for v, dv in enumerate(depth):
        if dv:
            levels.setdefault(dv, []).append(v)
    return [np.array(levels[k]) for k in sorted(levels)]


class SchnyderWitnesses:
    """Witness paths of a labeling for all vertex pairs, computed in bulk.

    ``anc[c][t, v]`` says that ``v`` lies on the ``c``-path of ``t``;
    ``hit[c][t, s]`` is the first vertex of the ``c``-path of ``s`` on one of
    the two other tree paths of ``t`` (``-1`` if none).
    """

    def __init__(self, L: SchnyderLabeling):
        self.L = L
        n = L.n
        par = {c: np.array([-1 if p is None else p for p in L.parent[c]]) for c in COLORS}
        self.levels = {c: _tree_levels(L.parent[c], [v for v in range(n) if L.parent[c][v] is None])
                       for c in COLORS}
        self.anc = {}
        for c in COLORS:
            A = np.eye(n, dtype=bool)
            for lv in self.levels[c]:
                A[lv] |= A[par[c][lv]]
            self.anc[c] = A
        self.hit = {}
        for i, c in enumerate(COLORS):
            others = self.anc[COLORS[(i + 1) % 3]] | self.anc[COLORS[(i + 2) % 3]]
            H = np.where(others, np.arange(n)[None, :], -1)
            for lv in self.levels[c]:
                up = H[:, par[c][lv]]
                H[:, lv] = np.where(others[:, lv], lv[None, :], up)
            self.hit[c] = H

    def path(self, s: int, t: int) -> list:
        L = self.L
        if s == t:
            raise ValueError("s and t must differ")
        for c in COLORS:
            if self.anc[c][s, t]:
                p = L.tree_path(c, s)
                return p[:p.index(t) + 1]
            if self.anc[c][t, s]:
                p = L.tree_path(c, t)
                return p[:p.index(s) + 1][::-1]
        if s in L.outer and t in L.outer:
            return [s, t]
        for c in COLORS:
            if s in L.outer:
                break
            u = int(self.hit[c][t, s])
            if u < 0 or u == t:
                continue
            c2 = next(cc for cc in COLORS if cc != c and self.anc[cc][t, u])
            up = L.tree_path(c, s)
            up = up[:up.index(u) + 1]
            back = L.tree_path(c2, t)
            back = back[:back.index(u) + 1][::-1]
            return up + back[1:]
        raise AssertionError(f"no witness for pair ({s}, {t})")

    def split(self, s: int, t: int):
        """``(color, first part, second color, reversed part)`` of a two-colored witness, else ``None``."""
        L = self.L
        p = self.path(s, t)
        cols = [L.color_of(a, b) for a, b in zip(p, p[1:])]
        if any(cf is None for cf in cols):
            return None
        k = 0
        while k < len(cols) and cols[k] == cols[0]:
            k += 1
        if k == len(cols):
            return None
        return cols[0][0], p[:k + 1], cols[k][0], p[k:]

    def all_pairs(self) -> dict:
        n = self.L.n
        return {(s, t): self.path(s, t) for s in range(n) for t in range(s + 1, n)}


def schnyder_witness_path(L: SchnyderLabeling, d: Optional[EuclidDrawing], s: int, t: int) -> list:
    """Witness for ``s, t`` in a 30-degree drawing: monochromatic, or ``rho_c . rho_c'^-1``.

    The drawing is not consulted; the path depends on the labeling only.
    """
    return SchnyderWitnesses(L).path(s, t)


def witness_cone_check(d: EuclidDrawing, W: SchnyderWitnesses, s: int, t: int, alpha: float = 30.0,
                       tol: float = 1e-9) -> bool:
    """Every segment of each part of a two-colored witness lies in its (reversed) color cone."""
    sp = W.split(s, t)
    if sp is None:
        return True
    c1, p1, c2, p2 = sp
    ok = all(_in_cone(d.float_diff(a, b), CONE_CENTER[c1], alpha / 2, tol) for a, b in zip(p1, p1[1:]))
    return ok and all(_in_cone(d.float_diff(a, b), CONE_CENTER[c2] + 180.0, alpha / 2, tol)
                      for a, b in zip(p2, p2[1:]))
