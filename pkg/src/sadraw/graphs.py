"""Graphs, block-cutvertex trees and binary cactuses."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

import networkx as nx


class GraphError(ValueError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class NotACactusError(GraphError):
    pass


class NotBinaryError(GraphError):
    pass


class RootVertexError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``rotation`` optionally gives, per vertex, the cyclic (counterclockwise)
    order of its neighbours.
    """

    n: int
    edges: tuple
    rotation: Optional[dict] = None

    def __post_init__(self):
        seen = set()
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"multi-edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, rotation=None) -> "Graph":
        return cls(n, tuple(edges), rotation)

    @cached_property
    def adj(self) -> list:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for a in adj:
            a.sort()
        return adj

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> list:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def without_edges(self, removed: Iterable) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in removed}
        return Graph(self.n, tuple(e for e in self.edges if e not in drop))


# ---------------------------------------------------------------------------
# BC-tree
# ---------------------------------------------------------------------------

@dataclass
class BCTree:
    """Rooted block-cutvertex tree.

    Blocks are indexed ``0..len(blocks)-1`` in increasing order of their
    sorted vertex tuples.  ``block_root[b]`` is ``r(b)``; for non-root
    blocks it is the cutvertex shared with ``parent[b]``.
    """

    graph: Graph
    blocks: list
    cutvertices: tuple
    root_block: int
    block_root: list
    parent: list
    depth: list
    children: list
    vertex_blocks: dict = field(default_factory=dict)

    @property
    def root(self) -> int:
        return self.block_root[self.root_block]

    def owner_block(self, v: int) -> Optional[int]:
        """The unique block containing ``v`` with ``v != r(block)``."""
        for b in self.vertex_blocks[v]:
            if self.block_root[b] != v:
                return b
        return None

    def block_edges(self, b: int) -> list:
        vs = set(self.blocks[b])
        return [e for e in self.graph.edges if e[0] in vs and e[1] in vs]

    def tree_edges(self) -> list:
        """Edges of the BC-tree as ``(("B", b), ("C", v))`` pairs."""
        out = []
        for c in self.cutvertices:
            for b in self.vertex_blocks[c]:
                out.append((("B", b), ("C", c)))
        return out

    def parent_chain(self, b: int) -> list:
        chain = [b]
        while self.parent[chain[-1]] is not None:
            chain.append(self.parent[chain[-1]])
        return chain


def bc_tree(g: Graph, root: Optional[int] = None) -> BCTree:
    """Block-cutvertex tree of a connected graph.

    Without ``root`` the root block is the lowest-index block containing a
    non-cutvertex and ``r(root block)`` its lowest non-cutvertex.  With
    ``root`` (which must not be a cutvertex) its block becomes the root.
    """
    if g.n == 0:
        raise GraphError("empty graph")
    if not g.is_connected():
        raise DisconnectedGraphError("graph is not connected")
    nxg = g.to_networkx()
    if g.n == 1:
        blocks = [(0,)]
        cut = ()
    else:
        blocks = sorted(tuple(sorted(c)) for c in nx.biconnected_components(nxg))
        cut = tuple(sorted(nx.articulation_points(nxg)))
    cutset = set(cut)
    vertex_blocks = {v: [] for v in range(g.n)}
    for i, b in enumerate(blocks):
        for v in b:
            vertex_blocks[v].append(i)

    if root is None:
        rb = next(i for i, b in enumerate(blocks) if any(v not in cutset for v in b))
        rv = min(v for v in blocks[rb] if v not in cutset)
    else:
        if root in cutset:
            raise RootVertexError(f"root {root} is a cutvertex")
        rv = root
        rb = vertex_blocks[root][0]

    nb = len(blocks)
    block_root = [None] * nb
    parent = [None] * nb
    depth = [0] * nb
    children = [[] for _ in range(nb)]
    block_root[rb] = rv
    queue = deque([rb])
    while queue:
        b = queue.popleft()
        for v in blocks[b]:
            if v == block_root[b] or v not in cutset:
                continue
            for c in vertex_blocks[v]:
                if c != b and block_root[c] is None:
                    block_root[c] = v
                    parent[c] = b
                    depth[c] = depth[b] + 1
                    children[b].append(c)
                    queue.append(c)
    return BCTree(g, blocks, cut, rb, block_root, parent, depth, children, vertex_blocks)


# ---------------------------------------------------------------------------
# binary cactuses
# ---------------------------------------------------------------------------

@dataclass
class Block:
    """One block of a cactus.

    ``kind`` is ``"edge"``, ``"cycle"`` (triangles included) or ``"fan"``
    (a triangulated fan with at least three tips).  For cycles ``order`` is
    ``(r, v1, ..., vk)`` around the cycle starting at the block root.  For
    fan-shaped blocks (edges, triangles, fans) ``fan_hub`` is the fan root
    and ``fan_order`` the tips ``v1..vk`` along the fan path.
    """

    index: int
    vertices: tuple
    root: int
    kind: str
    order: Optional[tuple] = None
    fan_hub: Optional[int] = None
    fan_order: Optional[tuple] = None

    @property
    def k(self) -> int:
        return len(self.vertices) - 1


def _fan_shape(vertices, edges, hub, adj_in):
    """Fan order of tips if the block is a triangulated fan around ``hub``."""
    others = [v for v in vertices if v != hub]
    if any(hub not in adj_in[v] for v in others):
        return None
    sub = {v: [w for w in adj_in[v] if w != hub] for v in others}
    if len(others) == 1:
        return tuple(others)
    if sum(len(s) for s in sub.values()) != 2 * (len(others) - 1):
        return None
    ends = sorted(v for v in others if len(sub[v]) == 1)
    if len(ends) != 2 or any(len(s) > 2 for s in sub.values()):
        return None
    order = [ends[0]]
    prev = None
    while len(order) < len(others):
        nxt = [w for w in sub[order[-1]] if w != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return tuple(order)


def _orient_by_rotation(hub, order, rotation):
    """Flip ``order`` so tips follow the clockwise order around ``hub``."""
    if not rotation or hub not in rotation or len(order) < 2:
        return order
    rot = list(rotation[hub])
    try:
        i, j = rot.index(order[0]), rot.index(order[1])
    except ValueError:
        return order
    # rotation lists neighbours counterclockwise; fans are laid out clockwise
    if (j - i) % len(rot) == 1:
        return tuple(reversed(order))
    return order


@dataclass
class BinaryCactus:
    graph: Graph
    bc: BCTree
    blocks: list

    @property
    def root(self) -> int:
        return self.bc.root

    @property
    def root_block(self) -> int:
        return self.bc.root_block

    @cached_property
    def downward_edges(self) -> frozenset:
        out = set()
        for b in self.blocks:
            for v in b.vertices:
                if v != b.root and self.graph.has_edge(v, b.root):
                    out.add((min(v, b.root), max(v, b.root)))
        return frozenset(out)

    def owner_block(self, v: int) -> Optional[Block]:
        b = self.bc.owner_block(v)
        return None if b is None else self.blocks[b]

    def child_blocks(self, v: int) -> list:
        return [self.blocks[b] for b in self.bc.vertex_blocks[v] if self.blocks[b].root == v]

    def down_path(self, v: int) -> list:
        """Vertices ``v, r(mu_v), r(parent), ...`` down to the global root."""
        path = [v]
        while True:
            b = self.owner_block(path[-1])
            if b is None:
                return path
            path.append(b.root)

    def block_descendants(self, b: int) -> list:
        out = [b]
        i = 0
        while i < len(out):
            out.extend(self.bc.children[out[i]])
            i += 1
        return out

    def subcactus_blocks(self, v: int) -> list:
        """Block indices of ``G(v)`` (blocks hanging below ``v``)."""
        if v == self.root:
            raise RootVertexError("the global root has no subcactus")
        out = []
        for blk in self.child_blocks(v):
            out.extend(self.block_descendants(blk.index))
        return out

    def tip_child(self, v: int) -> Optional[Block]:
        """The child block rooted at non-root vertex ``v`` (None for leaves)."""
        kids = self.child_blocks(v) if v != self.root else []
        return kids[0] if kids else None


def _classify(g: Graph, bc: BCTree, b: int) -> Block:
    verts = bc.blocks[b]
    root = bc.block_root[b]
    vs = set(verts)
    adj_in = {v: [w for w in g.adj[v] if w in vs] for v in verts}
    m = sum(len(a) for a in adj_in.values()) // 2
    nv = len(verts)
    if nv == 1:
        return Block(b, verts, root, "edge", order=(root,), fan_hub=root, fan_order=())
    if nv == 2:
        other = verts[0] if verts[1] == root else verts[1]
        return Block(b, verts, root, "edge", order=(root, other), fan_hub=root, fan_order=(other,))

    hub, fan = None, None
    for cand in [root] + sorted(v for v in verts if v != root):
        fan = _fan_shape(verts, None, cand, adj_in)
        if fan is not None:
            hub = cand
            fan = _orient_by_rotation(hub, fan, g.rotation)
            break

    if m == nv and all(len(a) == 2 for a in adj_in.values()):
        nbrs = sorted(adj_in[root])
        order = [root, nbrs[0]]
        if g.rotation and root in g.rotation:
            rot = [w for w in g.rotation[root] if w in vs]
            if len(rot) == 2:
                order = [root, rot[0]]
        while len(order) < nv:
            nxt = [w for w in adj_in[order[-1]] if w != order[-2]]
            order.append(nxt[0])
        return Block(b, verts, root, "cycle", order=tuple(order), fan_hub=hub, fan_order=fan)
    if fan is not None and m == 2 * nv - 3:
        return Block(b, verts, root, "fan", order=None, fan_hub=hub, fan_order=fan)
    raise NotACactusError(f"block {verts} is neither an edge, a cycle nor a triangulated fan")


def as_binary_cactus(g: Graph, root: Optional[int] = None) -> BinaryCactus:
    """Validate ``g`` as a (triangulated) binary cactus and classify its blocks."""
    bc = bc_tree(g, root)
    for c in bc.cutvertices:
        if len(bc.vertex_blocks[c]) != 2:
            raise NotBinaryError(f"cutvertex {c} lies in {len(bc.vertex_blocks[c])} blocks")
    blocks = [_classify(g, bc, b) for b in range(len(bc.blocks))]
    return BinaryCactus(g, bc, blocks)


def is_downward_triangulated(c: BinaryCactus) -> bool:
    for b in c.blocks:
        if len(b.vertices) >= 3 and b.fan_hub != b.root:
            return False
    return True


def subcactus(c: BinaryCactus, v: int) -> frozenset:
    """Vertex set of ``G(v)``: the part of the cactus hanging at ``v``."""
    mu = c.owner_block(v)
    if mu is None:
        raise RootVertexError("the global root has no subcactus")
    blocked = set(mu.vertices) - {v}
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in c.graph.adj[u]:
            if w not in seen and w not in blocked:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def upward_edges(c: BinaryCactus, blocks: Optional[Iterable] = None) -> list:
    """Upward directed pairs ``(r(mu), v)`` for the given blocks (default all)."""
    idx = range(len(c.blocks)) if blocks is None else blocks
    out = []
    for b in idx:
        blk = c.blocks[b]
        for v in blk.vertices:
            if v != blk.root:
                out.append((blk.root, v))
    return out


def cutvertex_chain(c: BinaryCactus, s: int, t: int) -> list:
    """Cutvertices other than ``s``, ``t`` lying on every s-t path, in order."""
    bc = c.bc

    def node(v):
        if v in bc.vertex_blocks and len(bc.vertex_blocks[v]) > 1:
            return ("C", v)
        return ("B", bc.vertex_blocks[v][0])

    tree = nx.Graph()
    tree.add_edges_from(bc.tree_edges())
    a, b = node(s), node(t)
    if a == b:
        return []
    tree.add_node(a)
    tree.add_node(b)
    path = nx.shortest_path(tree, a, b)
    return [x[1] for x in path if x[0] == "C" and x[1] not in (s, t)]
