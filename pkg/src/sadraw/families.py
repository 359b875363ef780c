"""Deterministic generators for the graph families used throughout the package.

All random generators draw from ``random.Random(seed)`` (Python's Mersenne
Twister), so a seed reproduces the same graph on every platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .graphs import BinaryCactus, Graph, as_binary_cactus

# size of the central cactus G' (root, ten triangles, eleven pendant leaves)
STRMON_BASE_VERTICES = 32
STRMON_LEAVES = 11


@dataclass
class StrmonCactus:
    """``G_k`` together with the vertices named in the lower-bound argument."""

    cactus: BinaryCactus
    k: int
    leaves: tuple          # r_1 .. r_11
    green_edges: tuple     # one closing edge per triangle
    chains: tuple          # per r_i: (u_0=r_i, u_1, ..., u_2k) and (v_1, ..., v_2k)


def _grow_central(edges, green, leaves, v, count, counter):
    """Attach a subtree of triangles below ``v`` ending in ``count`` pendant leaves."""
    if count == 1:
        leaf = counter[0]
        counter[0] += 1
        edges.append((v, leaf))
        leaves.append(leaf)
        return
    a, b = counter[0], counter[0] + 1
    counter[0] += 2
    edges += [(v, a), (v, b), (a, b)]
    green.append((a, b))
    _grow_central(edges, green, leaves, a, (count + 1) // 2, counter)
    _grow_central(edges, green, leaves, b, count // 2, counter)


def gen_strmon_cactus(k: int) -> StrmonCactus:
    """The cactus ``G_k``: central cactus ``G'`` with a copy of ``C_k`` per leaf.

    ``G'`` is a root triangle whose two other corners carry binary triangle
    trees ending in 7 and 4 pendant leaves, so the root is its only degree-2
    vertex.  ``C_k`` is a chain of ``k`` triangles ``(u_{2t-2}, u_{2t-1},
    v_{2t-1})`` with pendant edges ``u_{2t-1} u_{2t}`` and ``v_{2t-1} v_{2t}``;
    the chain continues at ``u_{2t}``.  Each unit of ``k`` adds four vertices
    per leaf, 44 in total.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    edges = [(0, 1), (0, 2), (1, 2)]
    green = [(1, 2)]
    leaves = []
    counter = [3]
    _grow_central(edges, green, leaves, 1, 7, counter)
    _grow_central(edges, green, leaves, 2, 4, counter)
    assert counter[0] == STRMON_BASE_VERTICES and len(leaves) == STRMON_LEAVES
    chains = []
    for r in leaves:
        us, vs = [r], []
        top = r
        for _ in range(k):
            u1, v1, u2, v2 = range(counter[0], counter[0] + 4)
            counter[0] += 4
            edges += [(top, u1), (top, v1), (u1, v1), (u1, u2), (v1, v2)]
            green.append((u1, v1))
            us += [u1, u2]
            vs += [v1, v2]
            top = u2
        chains.append((tuple(us), tuple(vs)))
    g = Graph(counter[0], tuple(edges))
    return StrmonCactus(as_binary_cactus(g, root=0), k, tuple(leaves), tuple(green), tuple(chains))


def gen_strmon_tree(k: int) -> Graph:
    """Binary spanning tree ``T_k`` of ``G_k`` (closing edge of each triangle removed)."""
    s = gen_strmon_cactus(k)
    return s.cactus.graph.without_edges(s.green_edges)


def gen_square_cactus(n: int) -> BinaryCactus:
    """Square-cactus family ``G_n``: recursively doubled 4-cycles; root is vertex 0.

    For ``n >= 10`` no self-approaching drawing exists (a non-constructive
    result; nothing here verifies it).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    edges: list = []
    counter = [0]

    def build(level):
        # returns the root of the built copy
        if level == 0:
            r, a, b, c = range(counter[0], counter[0] + 4)
            counter[0] += 4
            edges.extend([(r, a), (a, b), (b, c), (c, r)])
            return r
        r0, b0 = counter[0], counter[0] + 1
        counter[0] += 2
        a0 = build(level - 1)
        c0 = build(level - 1)
        edges.extend([(r0, a0), (a0, b0), (b0, c0), (c0, r0)])
        return r0

    build(n)
    return as_binary_cactus(Graph(counter[0], tuple(edges)), root=0)


def square_cactus_size(n: int) -> int:
    return 6 * 2 ** n - 2


def gen_random_dt_cactus(seed: int, depth: int, max_fan: int, extend_prob: float = 0.5,
                         max_vertices: Optional[int] = None) -> BinaryCactus:
    """Random downward-triangulated binary cactus rooted at vertex 0.

    Blocks are fans with a uniform number of tips in ``[1, max_fan]``; each tip
    is extended by a child fan with probability ``extend_prob`` while the
    block depth stays below ``depth``.
    """
    if depth < 1 or max_fan < 1:
        raise ValueError("depth and max_fan must be >= 1")
    rng = random.Random(seed)
    edges = []
    n = 1
    queue = [(0, 1)]
    while queue:
        r, d = queue.pop(0)
        k = rng.randint(1, max_fan)
        if max_vertices is not None and n + k > max_vertices:
            if n + 1 > max_vertices:
                continue
            k = max_vertices - n
        tips = list(range(n, n + k))
        n += k
        edges += [(r, t) for t in tips]
        edges += list(zip(tips, tips[1:]))
        if d < depth:
            for t in tips:
                if rng.random() < extend_prob:
                    queue.append((t, d + 1))
    return as_binary_cactus(Graph(n, tuple(edges)), root=0)


def gen_random_cycle_cactus(seed: int, max_vertices: int = 100, extend_prob: float = 0.6,
                            max_cycle: int = 6) -> BinaryCactus:
    """Random binary cactus whose blocks are single edges or cycles."""
    rng = random.Random(seed)
    edges = []
    n = 1
    queue = [0]
    while queue:
        r = queue.pop(0)
        size = rng.randint(2, max_cycle)  # block vertex count, 2 = single edge
        if n + size - 1 > max_vertices:
            continue
        others = list(range(n, n + size - 1))
        n += size - 1
        cyc = [r] + others
        if size == 2:
            edges.append((r, others[0]))
        else:
            edges += [(cyc[i], cyc[(i + 1) % size]) for i in range(size)]
        for v in others:
            if rng.random() < extend_prob:
                queue.append(v)
    return as_binary_cactus(Graph(n, tuple(edges)), root=0)


def gen_random_planar_3tree(seed: int, n: int):
    """Random planar 3-tree on ``n`` vertices with its insertion order.

    Vertices 0, 1, 2 are the outer red, green and blue vertices.  The order is
    a list of ``(v, (x, y, z))`` where ``x, y, z`` are the red, green and blue
    corners of the face ``v`` was inserted into.
    """
    if n < 4:
        raise ValueError("n must be >= 4")
    rng = random.Random(seed)
    edges = [(0, 1), (1, 2), (0, 2)]
    faces = [(0, 1, 2)]
    order = []
    for v in range(3, n):
        i = rng.randrange(len(faces))
        x, y, z = faces[i]
        edges += [(v, x), (v, y), (v, z)]
        faces[i] = (v, y, z)
        faces += [(x, v, z), (x, y, v)]
        order.append((v, (x, y, z)))
    return Graph(n, tuple(edges)), order


def gen_random_graph(seed: int, n: int, p: float) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, tuple(edges))


def gen_random_tree(seed: int, n: int, max_degree: Optional[int] = None) -> Graph:
    """Random recursive tree, optionally respecting a degree bound."""
    rng = random.Random(seed)
    deg = [0] * n
    edges = []
    for v in range(1, n):
        cands = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        u = rng.choice(cands)
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Graph(n, tuple(edges))


def complete_cubic_tree(depth: int) -> Graph:
    """Tree with a degree-3 root, degree-3 internal nodes and leaves at ``depth``."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    edges = []
    frontier = [0]
    n = 1
    for level in range(depth):
        nxt = []
        for v in frontier:
            for _ in range(3 if level == 0 else 2):
                edges.append((v, n))
                nxt.append(n)
                n += 1
        frontier = nxt
    return Graph(n, tuple(edges))


def k14_subdivision(legs) -> Graph:
    """Subdivided star ``K_{1,4}`` with ``legs[i]`` vertices on leg ``i``."""
    if len(legs) != 4 or any(l < 1 for l in legs):
        raise ValueError("need four legs of length >= 1")
    edges = []
    n = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, n))
            prev = n
            n += 1
    return Graph(n, tuple(edges))
