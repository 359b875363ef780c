"""Certification of self-approaching and related path properties in the plane.

Single-path checkers work on any drawing.  Bulk certification builds a
table of halfplane verdicts ``[directed edge, vertex]`` once per drawing and
evaluates many witness paths against it with numpy gathers.  Exact drawings
are moved to an integer lattice first so every predicate is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Dict, Iterable, Optional, Sequence

import numpy as np

from . import geometry as geo
from .geometry import DEFAULT_TOL, GeometryError
from .graphs import BinaryCactus, Graph, cutvertex_chain, subcactus, upward_edges

PROPERTIES = ("sa", "ic", "greedy", "monotone", "strongly_monotone")

WITNESSED = "witnessed"
EXHAUSTED = "exhausted_no_path"
BUDGET = "budget_exceeded"

DEFAULT_BUDGET = 10 ** 6


class PathError(ValueError):
    pass


class CoincidentVerticesError(GeometryError):
    pass


# ---------------------------------------------------------------------------
# drawings
# ---------------------------------------------------------------------------

def _as_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class EuclidDrawing:
    """Straight-line drawing: ``coords[v]`` is the point of vertex ``v``.

    ``backend`` is ``"float64"`` or ``"rational"``; rational drawings are
    certified with ``tol = 0``.
    """

    coords: tuple
    backend: str = "float64"
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.backend == "rational":
            pts = tuple((_as_fraction(x), _as_fraction(y)) for x, y in self.coords)
            object.__setattr__(self, "tol", 0.0)
        elif self.backend == "float64":
            pts = tuple((float(x), float(y)) for x, y in self.coords)
        else:
            raise ValueError(f"unknown backend {self.backend!r}")
        object.__setattr__(self, "coords", pts)
        self._check_distinct()

    def _check_distinct(self):
        n = len(self.coords)
        if self.backend == "rational":
            if len(set(self.coords)) != n:
                raise CoincidentVerticesError("two vertices are mapped to the same point")
            return
        if n < 2:
            return
        a = np.asarray(self.coords, dtype=float)
        scale = max(1.0, float(np.abs(a).max()))
        for i in range(0, n, 512):
            d = np.hypot(a[i:i + 512, None, 0] - a[None, :, 0],
                         a[i:i + 512, None, 1] - a[None, :, 1])
            idx = np.arange(i, min(n, i + 512))
            d[idx - i, idx] = np.inf
            if (d <= self.tol * scale).any():
                raise CoincidentVerticesError("two vertices are mapped to the same point")

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def exact(self) -> bool:
        return self.backend == "rational"

    def __getitem__(self, v):
        return self.coords[v]

    @cached_property
    def lattice(self):
        """Integer coordinates ``(X, Y, D)`` with ``coords = (X/D, Y/D)`` (exact drawings)."""
        if not self.exact:
            raise ValueError("lattice form only exists for rational drawings")
        den = math.lcm(*{q for p in self.coords for q in (p[0].denominator, p[1].denominator)})
        X = [x.numerator * (den // x.denominator) for x, _ in self.coords]
        Y = [y.numerator * (den // y.denominator) for _, y in self.coords]
        return X, Y, den

    @cached_property
    def _obj(self):
        X, Y, den = self.lattice
        return np.array(X, dtype=object), np.array(Y, dtype=object), den

    @cached_property
    def _scaled(self):
        """Lattice coordinates shifted into float range and the error bound of their differences."""
        X, Y, _ = self.lattice
        bits = max((abs(v).bit_length() for v in itertools.chain(X, Y)), default=0)
        sh = max(0, bits - 500)
        xf = np.array([float(v >> sh) for v in X])
        yf = np.array([float(v >> sh) for v in Y])
        # floor shift and rounding of both coordinates plus the subtraction
        err = 2.0 + 2.0 ** (bits - sh - 50)
        return xf, yf, err

    @cached_property
    def _flt(self):
        return np.asarray(self.coords, dtype=float).reshape(-1, 2)

    def diff(self, u, v) -> tuple:
        """Exact (or float) vector ``p(v) - p(u)``; lattice units for exact drawings."""
        if self.exact:
            X, Y, _ = self.lattice
            return (X[v] - X[u], Y[v] - Y[u])
        a, b = self.coords[u], self.coords[v]
        return (b[0] - a[0], b[1] - a[1])

    def float_diff(self, u, v) -> tuple:
        """Float vector ``p(v) - p(u)`` in drawing units, accurate for tiny offsets."""
        if not self.exact:
            return self.diff(u, v)
        dx, dy = self.diff(u, v)
        den = self.lattice[2]
        return _ratio_float(dx, den), _ratio_float(dy, den)


def _ratio_float(a: int, b: int) -> float:
    try:
        return a / b
    except OverflowError:
        return math.copysign(math.inf, a)


def int_log2(q: int) -> float:
    """``log2`` of a positive integer of any size."""
    b = q.bit_length()
    if b > 900:
        return (b - 60) + math.log2(q >> (b - 60))
    return math.log2(q)


_vlog2 = np.frompyfunc(int_log2, 1, 1)


def as_drawing(coords, backend=None, tol=DEFAULT_TOL) -> EuclidDrawing:
    if isinstance(coords, EuclidDrawing):
        return coords
    pts = list(coords)
    if backend is None:
        backend = "rational" if any(isinstance(c, (Fraction, int)) for p in pts for c in p) else "float64"
    return EuclidDrawing(tuple(pts), backend, tol)


# ---------------------------------------------------------------------------
# single path checkers
# ---------------------------------------------------------------------------

def _pts(d, path):
    return [d[v] for v in path]


def _check_path_vertices(path):
    if len(set(path)) != len(path):
        raise PathError("path repeats a vertex")


def _check_adjacent(g: Optional[Graph], path):
    if g is None:
        return
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise PathError(f"({u}, {v}) is not an edge")


def _sa_points(pts, tol) -> bool:
    k = len(pts)
    for i in range(k - 1):
        p, q = pts[i], pts[i + 1]
        for j in range(i + 2, k):
            if not geo.halfplane_contains(p, q, pts[j], tol):
                return False
    return True


def check_sa_path(d, path, tol=None, graph: Optional[Graph] = None) -> bool:
    """Halfplane test: every later vertex lies in ``h(v_i, v_{i+1})``."""
    d = as_drawing(d)
    _check_path_vertices(path)
    _check_adjacent(graph, path)
    return _sa_points(_pts(d, path), d.tol if tol is None else tol)


def check_ic_path(d, path, tol=None, graph: Optional[Graph] = None) -> bool:
    d = as_drawing(d)
    _check_path_vertices(path)
    _check_adjacent(graph, path)
    pts = _pts(d, path)
    t = d.tol if tol is None else tol
    return _sa_points(pts, t) and _sa_points(pts[::-1], t)


def check_lemma3(d, path, tol=None) -> bool:
    """All pairs of segment directions form angles of at most 90 degrees."""
    d = as_drawing(d)
    t = d.tol if tol is None else tol
    pts = _pts(d, path)
    segs = [geo.sub(b, a) for a, b in zip(pts, pts[1:])]
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            m = geo.dot(segs[i], segs[j])
            if m < 0 and not (t and m >= -t * geo.norm(segs[i]) * geo.norm(segs[j])):
                return False
    return True


def _positive(value, scale, tol) -> bool:
    if value > 0:
        return True
    return bool(tol) and value > -tol * scale


def check_greedy_path(d, path, tol=None) -> bool:
    """Distance to the last vertex strictly decreases at every step."""
    d = as_drawing(d)
    t = d.tol if tol is None else tol
    pts = _pts(d, path)
    target = pts[-1]
    for a, b in zip(pts, pts[1:]):
        # |a-t|^2 - |b-t|^2 = (a - b) . ((a - t) + (b - t))
        v = geo.dot(geo.sub(a, b), geo.add(geo.sub(a, target), geo.sub(b, target)))
        if not _positive(v, geo.norm(geo.sub(a, b)) * geo.norm(geo.sub(a, target)), t):
            return False
    return True


def check_strongly_monotone_path(d, path, tol=None) -> bool:
    d = as_drawing(d)
    t = d.tol if tol is None else tol
    pts = _pts(d, path)
    st = geo.sub(pts[-1], pts[0])
    for a, b in zip(pts, pts[1:]):
        seg = geo.sub(b, a)
        if not _positive(geo.dot(seg, st), geo.norm(seg) * geo.norm(st), t):
            return False
    return True


def _half(v) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = geo.cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def directions_fit_open_halfplane(dirs) -> bool:
    """Whether all nonzero vectors have positive dot product with one direction.

    Sorts the directions by angle and looks for a circular gap above 180
    degrees.  Exact for exact input.
    """
    dirs = sorted(dirs, key=cmp_to_key(_angle_cmp))
    uniq = []
    for v in dirs:
        if not uniq or _angle_cmp(uniq[-1], v) != 0:
            uniq.append(v)
    if len(uniq) <= 1:
        return len(uniq) == 1
    for i in range(len(uniq)):
        a, b = uniq[i], uniq[(i + 1) % len(uniq)]
        if geo.cross(a, b) < 0:
            return True
    return False


def check_monotone_path(d, path, tol=None) -> bool:
    d = as_drawing(d)
    pts = _pts(d, path)
    return directions_fit_open_halfplane([geo.sub(b, a) for a, b in zip(pts, pts[1:])])


@dataclass
class FrontSet:
    """``front(rho)``: one closed halfplane per path segment."""

    halfplanes: list
    path_is_sa: bool = True

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        return all(h.contains(x, tol) for h in self.halfplanes)


def front(d, path) -> FrontSet:
    d = as_drawing(d)
    pts = _pts(d, path)
    hs = [geo.halfplane(a, b) for a, b in zip(pts, pts[1:])]
    return FrontSet(hs, _sa_points(pts, d.tol))


def front_contains(f: FrontSet, x, tol=DEFAULT_TOL) -> bool:
    return f.contains(x, tol)


def check_concat(d, rho1, rho2, tol=None) -> bool:
    """Concatenation rule: ``rho1 + rho2`` is self-approaching iff ``rho2`` lies in ``front(rho1)``."""
    d = as_drawing(d)
    if rho1[-1] != rho2[0]:
        raise PathError("rho1 must end where rho2 starts")
    t = d.tol if tol is None else tol
    f = front(d, rho1)
    return all(f.contains(d[v], t) for v in rho2)


def detour(d, path) -> float:
    d = as_drawing(d)
    if len(path) < 2:
        raise PathError("detour needs at least two vertices")
    if path[0] == path[-1] or d[path[0]] == d[path[-1]]:
        raise PathError("detour of a path with coincident endpoints")
    length = sum(math.hypot(*d.float_diff(a, b)) for a, b in zip(path, path[1:]))
    return length / math.hypot(*d.float_diff(path[0], path[-1]))


def _sqdist_matrix(d: EuclidDrawing):
    """Exact (object) or float squared pairwise distances."""
    if d.exact:
        X, Y, _ = d._obj
        dx = X[:, None] - X[None, :]
        dy = Y[:, None] - Y[None, :]
        return dx * dx + dy * dy
    a = d._flt
    dx = a[:, None, 0] - a[None, :, 0]
    dy = a[:, None, 1] - a[None, :, 1]
    return dx * dx + dy * dy


def resolution_log2(d) -> float:
    """``log2`` of max/min pairwise vertex distance."""
    d = as_drawing(d)
    if d.n < 2:
        raise PathError("resolution needs at least two vertices")
    sq = _sqdist_matrix(d)
    iu = np.triu_indices(d.n, 1)
    vals = sq[iu]
    lo, hi = vals.min(), vals.max()
    if lo == 0:
        raise CoincidentVerticesError("coincident vertices")
    if d.exact:
        return 0.5 * (int_log2(int(hi)) - int_log2(int(lo)))
    return 0.5 * math.log2(float(hi) / float(lo))


def resolution(d) -> float:
    lg = resolution_log2(d)
    return 2.0 ** lg if lg < 1023 else math.inf


# ---------------------------------------------------------------------------
# vectorised tables
# ---------------------------------------------------------------------------

class HalfplaneTable:
    """``table[e, x]`` = whether vertex ``x`` lies in ``h(u, v)`` for ``segs[e] = (u, v)``."""

    def __init__(self, d: EuclidDrawing, segs: Sequence, tol=None):
        self.d = d
        self.segs = list(segs)
        self.index = {s: i for i, s in enumerate(self.segs)}
        self.tol = d.tol if tol is None else tol
        self.table = self._build()

    def _build(self):
        d = self.d
        if not self.segs:
            return np.zeros((0, d.n), dtype=bool)
        U = np.array([s[0] for s in self.segs])
        V = np.array([s[1] for s in self.segs])
        if d.exact:
            X, Y, _ = d.lattice
            xf, yf, err = d._scaled
            ex = (xf[V] - xf[U])[:, None]
            ey = (yf[V] - yf[U])[:, None]
            wx = xf[None, :] - xf[V][:, None]
            wy = yf[None, :] - yf[V][:, None]

            Xo, Yo, _ = d._obj

            def exact(e, x):
                u, v = U[e], V[e]
                return Xo[v] - Xo[u], Xo[x] - Xo[v], Yo[v] - Yo[u], Yo[x] - Yo[v]

            return _filtered_sign(ex, wx, ey, wy, err, exact) >= 0
        a = d._flt
        ex = (a[V, 0] - a[U, 0])[:, None]
        ey = (a[V, 1] - a[U, 1])[:, None]
        wx = a[None, :, 0] - a[V, 0][:, None]
        wy = a[None, :, 1] - a[V, 1][:, None]
        m = ex * wx + ey * wy
        if self.tol:
            bound = -self.tol * np.hypot(ex, ey) * np.hypot(wx, wy)
            return m >= bound
        return m >= 0

    @property
    def n(self) -> int:
        return self.d.n

    def __call__(self, u, v, x) -> bool:
        return bool(self.table[self.index[(u, v)], x])


def _exact_sign(a, b, c, d) -> np.ndarray:
    """Sign of ``a*b + c*d`` for object arrays of Python ints.

    The factors are exact, so their float images carry only relative error;
    the big-integer products are formed just where that cannot decide.
    """
    s = np.zeros(len(a), dtype=np.int8)
    try:
        fa, fb, fc, fd = (x.astype(float) for x in (a, b, c, d))
    except OverflowError:
        unsure = np.ones(len(a), dtype=bool)
    else:
        # one common power of two keeps the products in range and the sign intact
        top = max(float(np.abs(x).max()) for x in (fa, fb, fc, fd))
        k = max(0, int(np.frexp(top)[1]) - 500)
        fa, fb, fc, fd = (np.ldexp(x, -k) for x in (fa, fb, fc, fd))
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            p, q = fa * fb, fc * fd
            m = p + q
            # relative rounding plus the absolute error of subnormal products
            unsure = ~(np.abs(m) > 2.0 ** -49 * (np.abs(p) + np.abs(q)) + 2.0 ** -1060) | ~np.isfinite(m)
            unsure &= (a != 0) & (b != 0) | (c != 0) & (d != 0)
        s[~unsure] = np.sign(m[~unsure])
    k = np.nonzero(unsure)[0]
    if len(k):
        v = a[k] * b[k] + c[k] * d[k]
        s[k] = (v > 0).astype(np.int8) - (v < 0).astype(np.int8)
    return s


def _filtered_sign(a, b, c, d, err, exact) -> np.ndarray:
    """Sign of ``a*b + c*d`` from float factors that are each off by at most ``err``.

    Entries the float error bound cannot decide are recomputed from the exact
    factors ``exact(I, J)`` returns at index arrays ``I, J``.
    """
    m = a * b + c * d
    A, B, C, D = (np.abs(x) + err for x in (a, b, c, d))
    bound = err * (A + B + C + D) + 2.0 ** -49 * (A * B + C * D)
    s = np.sign(m).astype(np.int8)
    I, J = np.nonzero(np.abs(m) <= bound)
    if len(I):
        s[I, J] = _exact_sign(*exact(I, J))
    return s


def graph_segments(g: Graph) -> list:
    out = []
    for u, v in g.edges:
        out += [(u, v), (v, u)]
    return out


def _segment_lookup(table: HalfplaneTable):
    """Dense ``[u, v] -> segment row`` array (``-1`` when ``uv`` is not a segment)."""
    n = table.n
    look = np.full((n, n), -1, dtype=np.int64)
    if table.segs:
        U = np.array([s[0] for s in table.segs])
        V = np.array([s[1] for s in table.segs])
        look[U, V] = np.arange(len(table.segs))
    return look


def _pad(paths, Lmax):
    sizes = np.fromiter((len(p) for p in paths), dtype=np.int64, count=len(paths))
    flat = np.fromiter(itertools.chain.from_iterable(paths), dtype=np.int64, count=int(sizes.sum()))
    rows = np.repeat(np.arange(len(paths)), sizes)
    cols = np.arange(len(flat)) - np.repeat(np.cumsum(sizes) - sizes, sizes)
    P = np.full((len(paths), Lmax), -1, dtype=np.int64)
    P[rows, cols] = flat
    return P, sizes


def batch_check_paths(table: HalfplaneTable, paths: Sequence, both_directions: bool,
                      chunk_cells: int = 4_000_000) -> np.ndarray:
    """Halfplane-test verdicts for many paths at once.

    Every consecutive pair in a path must be a segment of ``table``; paths
    that use other pairs (or repeat vertices) are reported as failing.
    """
    out = np.zeros(len(paths), dtype=bool)
    if not paths:
        return out
    n = table.n
    look = _segment_lookup(table)
    lengths = np.array([len(p) for p in paths])
    order = np.argsort(lengths, kind="stable")
    start = 0
    while start < len(order):
        L = int(lengths[order[start]])
        per = max(1, chunk_cells // max(1, L * L))
        stop = start
        while stop < len(order) and stop - start < per and lengths[order[stop]] <= L + 4:
            stop += 1
        sel = order[start:stop]
        Lmax = int(lengths[sel].max())
        P, lens = _pad([paths[i] for i in sel], Lmax)
        valid = ((P >= -1) & (P < n)).all(axis=1) & (lens >= 1)
        Pc = np.where(P < 0, 0, P)
        # repeated vertices
        srt = np.sort(np.where(P < 0, -1 - np.arange(Lmax)[None, :], P), axis=1)
        valid &= ~(srt[:, 1:] == srt[:, :-1]).any(axis=1)
        if Lmax > 1:
            seg_ok = np.arange(Lmax - 1)[None, :] < (lens - 1)[:, None]
            Sf = look[Pc[:, :-1], Pc[:, 1:]]
            Sr = look[Pc[:, 1:], Pc[:, :-1]]
            need = (Sf < 0) | (Sr < 0) if both_directions else (Sf < 0)
            valid &= ~(seg_ok & need).any(axis=1)
            Sf = np.where(Sf < 0, 0, Sf)
            Sr = np.where(Sr < 0, 0, Sr)
            ii = np.arange(Lmax - 1)[None, :, None]
            jj = np.arange(Lmax)[None, None, :]
            ln = lens[:, None, None]
            sok = seg_ok[:, :, None]
            gf = table.table[Sf[:, :, None], Pc[:, None, :]]
            mf = sok & (jj >= ii + 2) & (jj < ln)
            ok = ~(mf & ~gf).any(axis=(1, 2))
            if both_directions:
                gr = table.table[Sr[:, :, None], Pc[:, None, :]]
                mr = sok & (jj <= ii - 1)
                ok &= ~(mr & ~gr).any(axis=(1, 2))
            valid &= ok
        out[sel] = valid
        start = stop
    return out


def _path_lengths(d: EuclidDrawing, paths):
    """Float path lengths and endpoint distances (drawing units)."""
    n = d.n
    sizes = np.fromiter((len(p) for p in paths), dtype=np.int64, count=len(paths))
    flat = np.fromiter(itertools.chain.from_iterable(paths), dtype=np.int64, count=int(sizes.sum()))
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    # consecutive pairs inside each path
    inner = np.ones(len(flat), dtype=bool)
    inner[starts + sizes - 1] = False
    a = flat[:-1][inner[:-1]]
    b = flat[1:][inner[:-1]]
    key = np.minimum(a, b) * n + np.maximum(a, b)
    uniq, inv = np.unique(key, return_inverse=True)
    seg = np.array([math.hypot(*d.float_diff(int(k // n), int(k % n))) for k in uniq])
    per = seg[inv]
    nseg = sizes - 1
    lens = np.zeros(len(paths))
    nz = nseg > 0
    offs = np.concatenate(([0], np.cumsum(nseg)[:-1]))
    if per.size:
        lens[nz] = np.add.reduceat(per, offs[nz])
    S = flat[starts]
    T = flat[starts + sizes - 1]
    if d.exact:
        X, Y, den = d._obj
        dx = ((X[T] - X[S]) / den).astype(float)
        dy = ((Y[T] - Y[S]) / den).astype(float)
    else:
        a = d._flt
        dx, dy = a[T, 0] - a[S, 0], a[T, 1] - a[S, 1]
    ends = np.hypot(dx, dy)
    return lens, ends


def detours(d: EuclidDrawing, paths) -> np.ndarray:
    lens, ends = _path_lengths(d, paths)
    return lens / ends


# ---------------------------------------------------------------------------
# path search
# ---------------------------------------------------------------------------

class _Pred:
    """Halfplane predicate on vertex ids, exact on the lattice or float with tol."""

    def __init__(self, d: EuclidDrawing, tol=None):
        self.d = d
        self.tol = d.tol if tol is None else tol
        if d.exact:
            X, Y, _ = d.lattice
            self.pts = list(zip(X, Y))
            self.tol = 0
        else:
            self.pts = list(d.coords)

    def h(self, p, q, x) -> bool:
        P, Q, Xp = self.pts[p], self.pts[q], self.pts[x]
        return geo.halfplane_contains(P, Q, Xp, self.tol)


@dataclass
class SearchResult:
    status: str
    path: Optional[list]
    nodes: int


def find_sa_path(d, g: Graph, s: int, t: int, mode: str = "sa", budget: int = DEFAULT_BUDGET,
                 pred: Optional[_Pred] = None) -> SearchResult:
    """Depth-first search for a self-approaching (or increasing-chord) s-t path.

    Branches whose front no longer contains ``t`` are pruned; in ``ic`` mode
    each extension must also keep the reversed path self-approaching.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if s == t:
        raise PathError("s and t must differ")
    mode = mode.lower()
    if mode not in ("sa", "ic"):
        raise ValueError("mode must be 'sa' or 'ic'")
    d = as_drawing(d)
    pred = pred or _Pred(d)
    h = pred.h
    ic = mode == "ic"
    path = [s]
    on = {s}
    iters = [iter(g.adj[s])]
    nodes = 0
    while iters:
        w = next(iters[-1], None)
        if w is None:
            iters.pop()
            on.discard(path.pop())
            continue
        if w in on:
            continue
        last = path[-1]
        nodes += 1
        if nodes > budget:
            return SearchResult(BUDGET, None, nodes)
        ok = all(h(path[i], path[i + 1], w) for i in range(len(path) - 1))
        if ok and w != t:
            ok = h(last, w, t)
        if ok and ic:
            ok = all(h(w, last, x) for x in path[:-1])
        if not ok:
            continue
        if w == t:
            return SearchResult(WITNESSED, path + [t], nodes)
        path.append(w)
        on.add(w)
        iters.append(iter(g.adj[w]))
    return SearchResult(EXHAUSTED, None, nodes)


def _dag_path(g: Graph, s: int, t: int, ok_edge) -> Optional[list]:
    """Any s-t path using only edges accepted by ``ok_edge`` (BFS)."""
    prev = {s: None}
    queue = [s]
    for u in queue:
        if u == t:
            break
        for w in g.adj[u]:
            if w not in prev and ok_edge(u, w):
                prev[w] = u
                queue.append(w)
    if t not in prev:
        return None
    out = [t]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def find_path(d, g: Graph, s: int, t: int, prop: str, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Search a path with the given property (``sa``, ``ic``, ``greedy``, ...)."""
    d = as_drawing(d)
    prop = normalize_property(prop)
    if prop in ("sa", "ic"):
        return find_sa_path(d, g, s, t, prop, budget)
    tol = d.tol
    P = d.coords
    if prop == "greedy":
        def ok(u, w):
            a, b, T = P[u], P[w], P[t]
            v = geo.dot(geo.sub(a, b), geo.add(geo.sub(a, T), geo.sub(b, T)))
            return _positive(v, geo.norm(geo.sub(a, b)) * geo.norm(geo.sub(a, T)), tol)
        p = _dag_path(g, s, t, ok)
        return SearchResult(WITNESSED if p else EXHAUSTED, p, 0)
    if prop == "strongly_monotone":
        st = geo.sub(P[t], P[s])

        def ok(u, w):
            seg = geo.sub(P[w], P[u])
            return _positive(geo.dot(seg, st), geo.norm(seg) * geo.norm(st), tol)
        p = _dag_path(g, s, t, ok)
        return SearchResult(WITNESSED if p else EXHAUSTED, p, 0)
    # monotone: DFS keeping the segment directions inside an open halfplane
    path, on, iters, nodes = [s], {s}, [iter(g.adj[s])], 0
    dirs: list = []
    while iters:
        w = next(iters[-1], None)
        if w is None:
            iters.pop()
            on.discard(path.pop())
            if dirs:
                dirs.pop()
            continue
        if w in on:
            continue
        nodes += 1
        if nodes > budget:
            return SearchResult(BUDGET, None, nodes)
        seg = geo.sub(P[w], P[path[-1]])
        if not directions_fit_open_halfplane(dirs + [seg]):
            continue
        if w == t:
            return SearchResult(WITNESSED, path + [t], nodes)
        path.append(w)
        on.add(w)
        dirs.append(seg)
        iters.append(iter(g.adj[w]))
    return SearchResult(EXHAUSTED, None, nodes)


def normalize_property(prop: str) -> str:
    p = prop.lower().replace("-", "_")
    if p not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    return p


PATH_CHECKERS = {
    "sa": check_sa_path,
    "ic": check_ic_path,
    "greedy": check_greedy_path,
    "monotone": check_monotone_path,
    "strongly_monotone": check_strongly_monotone_path,
}


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class PairResult:
    status: str
    path: Optional[list] = None
    source: str = ""  # "witness" or "search"


@dataclass
class Certificate:
    prop: str
    results: dict
    metrics: dict = field(default_factory=dict)

    @property
    def all_witnessed(self) -> bool:
        return all(r.status == WITNESSED for r in self.results.values())

    def counts(self) -> dict:
        out = {WITNESSED: 0, EXHAUSTED: 0, BUDGET: 0}
        for r in self.results.values():
            out[r.status] += 1
        return out

    def failures(self) -> list:
        return [(k, r.status) for k, r in sorted(self.results.items()) if r.status != WITNESSED]


def _candidate(witnesses, s, t, symmetric):
    if not witnesses:
        return None
    p = witnesses.get((s, t))
    if p is not None:
        return list(p)
    if symmetric:
        p = witnesses.get((t, s))
        if p is not None:
            return list(p)[::-1]
    return None


def certify_drawing(d, g: Graph, prop: str = "ic", witnesses: Optional[dict] = None,
                    budget: int = DEFAULT_BUDGET, pairs: Optional[Iterable] = None,
                    planarity: bool = False) -> Certificate:
    """Certify every ordered vertex pair for ``prop``.

    Supplied witnesses are re-verified first; pairs without a valid witness
    fall back to search.  ``metrics`` collects the maximum detour over the
    witnessed paths, the resolution and (optionally) planarity.
    """
    d = as_drawing(d)
    prop = normalize_property(prop)
    if d.n < g.n:
        raise PathError("drawing does not cover all graph vertices")
    symmetric = prop == "ic"
    if pairs is None:
        pairs = [(s, t) for s in range(g.n) for t in range(g.n) if s != t]
    pairs = list(pairs)
    results: dict = {}

    todo = []
    if symmetric:
        seen = set()
        for s, t in pairs:
            key = (min(s, t), max(s, t))
            if key not in seen:
                seen.add(key)
                todo.append(key)
    else:
        todo = pairs
    cands = [_candidate(witnesses, s, t, symmetric) for s, t in todo]
    have = [i for i, c in enumerate(cands) if c is not None and c[0] == todo[i][0] and c[-1] == todo[i][1]]
    verdict = np.zeros(len(todo), dtype=bool)
    if have:
        if prop in ("sa", "ic"):
            table = HalfplaneTable(d, graph_segments(g))
            verdict[have] = batch_check_paths(table, [cands[i] for i in have], symmetric)
        else:
            chk = PATH_CHECKERS[prop]
            for i in have:
                try:
                    _check_path_vertices(cands[i])
                    _check_adjacent(g, cands[i])
                    verdict[i] = chk(d, cands[i])
                except PathError:
                    verdict[i] = False
    pred = _Pred(d) if prop in ("sa", "ic") else None
    for i, (s, t) in enumerate(todo):
        if verdict[i]:
            res = PairResult(WITNESSED, cands[i], "witness")
        else:
            if prop in ("sa", "ic"):
                sr = find_sa_path(d, g, s, t, prop, budget, pred)
            else:
                sr = find_path(d, g, s, t, prop, budget)
            res = PairResult(sr.status, sr.path, "search")
        results[(s, t)] = res
        if symmetric:
            rev = None if res.path is None else res.path[::-1]
            results[(t, s)] = PairResult(res.status, rev, res.source)
    if symmetric:
        results = {k: results[k] for k in pairs}

    return Certificate(prop, results, certificate_metrics(d, g, results, planarity))


def certificate_metrics(d, g: Graph, results: dict, planarity: bool = False) -> dict:
    """Counts, maximum witness detour, resolution and optionally planarity."""
    d = as_drawing(d)
    paths = [r.path for r in results.values() if r.status == WITNESSED]
    metrics: dict = {"pairs": len(results), **results_counts(results)}
    metrics["max_detour"] = float(detours(d, paths).max()) if paths else None
    if d.n >= 2:
        lg = resolution_log2(d)
        metrics["resolution_log2"] = lg
        metrics["resolution"] = 2.0 ** lg if lg < 1023 else math.inf
    if planarity:
        metrics["planar"] = check_planar_drawing(d, g)
    return metrics


def results_counts(results) -> dict:
    out = {WITNESSED: 0, EXHAUSTED: 0, BUDGET: 0}
    for r in results.values():
        out[r.status] += 1
    return out


# ---------------------------------------------------------------------------
# planarity and structural linters
# ---------------------------------------------------------------------------

def _orient_signs(d: EuclidDrawing, A, B, tol):
    """Sign of orient(a_e, b_e, x) for every edge ``e`` and vertex ``x``, and whether
    ``x`` lies strictly inside edge ``e``."""
    if d.exact:
        X, Y, _ = d._obj
        xf, yf, err = d._scaled
        ex = (xf[B] - xf[A])[:, None]
        ey = (yf[B] - yf[A])[:, None]
        wx = xf[None, :] - xf[A][:, None]
        wy = yf[None, :] - yf[A][:, None]

        def exact(e, x):
            a, b = A[e], B[e]
            return X[b] - X[a], Y[x] - Y[a], Y[a] - Y[b], X[x] - X[a]

        s = _filtered_sign(ex, wy, -ey, wx, err, exact)
        inside = np.zeros(s.shape, dtype=bool)
        for e, x in zip(*np.nonzero(s == 0)):
            a, b = A[e], B[e]
            dx, dy = X[b] - X[a], Y[b] - Y[a]
            proj = dx * (X[x] - X[a]) + dy * (Y[x] - Y[a])
            inside[e, x] = 0 < proj < dx * dx + dy * dy
        return s, inside
    a = d._flt
    ex = (a[B, 0] - a[A, 0])[:, None]
    ey = (a[B, 1] - a[A, 1])[:, None]
    wx = a[None, :, 0] - a[A, 0][:, None]
    wy = a[None, :, 1] - a[A, 1][:, None]
    o = ex * wy - ey * wx
    s = np.sign(o).astype(np.int8)
    if tol:
        s[np.abs(o) <= tol * np.hypot(ex, ey) * np.hypot(wx, wy)] = 0
    proj = ex * wx + ey * wy
    inside = (s == 0) & (proj > 0) & (proj < ex * ex + ey * ey)
    return s, inside


def check_planar_drawing(d, g: Graph, tol=None) -> bool:
    """No two edges cross and no vertex lies in the interior of another edge."""
    d = as_drawing(d)
    t = d.tol if tol is None else tol
    if not g.edges:
        return True
    A = np.array([e[0] for e in g.edges])
    B = np.array([e[1] for e in g.edges])
    S, inside = _orient_signs(d, A, B, t)
    # vertex in the relative interior of an edge
    m = len(A)
    inside[np.arange(m), A] = False
    inside[np.arange(m), B] = False
    if inside.any():
        return False
    s1 = S[:, A]  # s1[i, j] = sign of a_j w.r.t. edge i
    s2 = S[:, B]
    straddle = (s1.astype(np.int16) * s2) < 0
    both = straddle & straddle.T
    shared = (A[:, None] == A[None, :]) | (A[:, None] == B[None, :]) | (B[:, None] == A[None, :]) | (B[:, None] == B[None, :])
    return not (both & ~shared).any()


def direction_sets(d, c: BinaryCactus) -> dict:
    """Upward/downward direction vectors and upward directed edges of a cactus drawing."""
    d = as_drawing(d)
    eu = upward_edges(c)
    U = [d.float_diff(a, b) for a, b in eu]
    return {"E_U": eu, "U": U, "D": [(-x, -y) for x, y in U]}


def cutvertex_direction_set(c: BinaryCactus, u: int) -> list:
    """``U_u``: upward directed edges of the subcactus ``G(u)``."""
    return upward_edges(c, c.subcactus_blocks(u))


def _single_arc(labels_sorted) -> bool:
    changes = sum(1 for i in range(len(labels_sorted)) if labels_sorted[i] != labels_sorted[i - 1])
    return changes <= 2


def check_slope_disjointness(d, c: BinaryCactus) -> bool:
    """Directions of ``U_u`` and ``U_v`` occupy disjoint single arcs for disjoint ``G(u)``, ``G(v)``."""
    d = as_drawing(d)
    cuts = [v for v in c.bc.cutvertices if v != c.root]
    sets = {}
    for u in cuts:
        es = cutvertex_direction_set(c, u)
        if es:
            sets[u] = np.array([math.atan2(*reversed(d.float_diff(a, b))) for a, b in es])
    members = {u: subcactus(c, u) for u in sets}
    keys = sorted(sets)
    for i, u in enumerate(keys):
        for v in keys[i + 1:]:
            if u in members[v] or v in members[u]:
                continue
            ang = np.concatenate([sets[u], sets[v]])
            lab = np.concatenate([np.zeros(len(sets[u]), int), np.ones(len(sets[v]), int)])
            order = np.lexsort((lab, ang))
            a_sorted, l_sorted = ang[order], lab[order]
            # equal directions shared by both sets are not disjoint
            same = (np.diff(a_sorted) == 0) & (np.diff(l_sorted) != 0)
            if same.any() or not _single_arc(list(l_sorted)):
                return False
    return True


def _ray_hit(p, a, q, b) -> bool:
    """Whether rays ``p + s*a`` and ``q + t*b`` (s, t >= 0) intersect."""
    den = geo.cross(a, b)
    w = geo.sub(q, p)
    if den == 0:
        if geo.cross(w, a) != 0:
            return False
        # collinear: some origin lies on the other ray, or they point at each other
        return geo.dot(w, a) >= 0 or geo.dot(geo.sub(p, q), b) >= 0
    s = geo.cross(w, b) / den
    t = geo.cross(w, a) / den
    return s >= 0 and t >= 0


def check_divergence(d, c: BinaryCactus, s: int, t: int) -> bool:
    """``ray(v_1, s)`` and ``ray(v_k, t)`` do not meet (cutvertex chain ``v_1..v_k``)."""
    d = as_drawing(d)
    chain = cutvertex_chain(c, s, t)
    if not chain:
        return True
    v1, vk = chain[0], chain[-1]
    P = d.lattice[:2] if d.exact else None
    pt = (lambda v: (P[0][v], P[1][v])) if d.exact else (lambda v: d[v])
    a = geo.sub(pt(s), pt(v1))
    b = geo.sub(pt(t), pt(vk))
    if v1 == vk:
        # both rays leave the same cutvertex; they diverge unless they coincide
        return _angle_cmp(a, b) != 0
    return not _ray_hit(pt(v1), a, pt(vk), b)


def polygon_angles(d, cycle) -> list:
    """Interior angles (degrees) of the polygon drawn for ``cycle``."""
    d = as_drawing(d)
    pts = [d[v] for v in cycle]
    k = len(pts)
    for i in range(k):
        for j in range(i + 1, k):
            if j == i + 1 or (i == 0 and j == k - 1):
                continue
            r = geo.segments_intersect((pts[i], pts[(i + 1) % k]), (pts[j], pts[(j + 1) % k]), d.tol)
            if r != "disjoint":
                raise GeometryError("polygon is self-intersecting")
    ccw = geo.polygon_area2(pts) > 0
    out = []
    for i in range(k):
        prev, cur, nxt = pts[i - 1], pts[i], pts[(i + 1) % k]
        a = geo.ccw_angle(geo.sub(nxt, cur), geo.sub(prev, cur))
        out.append(a if ccw else 360.0 - a)
    return out


def check_polygon_angles(d, cycle) -> bool:
    """No two non-consecutive interior angles are both below 90 degrees."""
    ang = polygon_angles(d, cycle)
    k = len(ang)
    sharp = [i for i in range(k) if ang[i] < 90.0]
    for x in range(len(sharp)):
        for y in range(x + 1, len(sharp)):
            i, j = sharp[x], sharp[y]
            if (j - i) % k not in (1, k - 1):
                return False
    return True
