import json
from pathlib import Path

import pytest

from sadraw import io as sio
from sadraw.families import (STRMON_BASE_VERTICES, complete_cubic_tree, gen_random_dt_cactus,
                             gen_random_planar_3tree, gen_square_cactus, gen_strmon_cactus, gen_strmon_tree,
                             k14_subdivision, square_cactus_size)
from sadraw.graphs import as_binary_cactus, bc_tree, is_downward_triangulated
from sadraw.schnyder import recognize_3tree

GOLDEN = Path(__file__).parent / "golden"


def _binary(c):
    bc = c.bc
    return all(len(bc.vertex_blocks[v]) == 2 for v in bc.cutvertices)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_strmon_counts(k):
    s = gen_strmon_cactus(k)
    assert s.cactus.graph.n == STRMON_BASE_VERTICES + 44 * k
    assert _binary(s.cactus)
    assert len(s.green_edges) == sum(1 for b in s.cactus.blocks if b.kind != "edge")


def test_strmon_increment_is_44():
    sizes = [gen_strmon_cactus(k).cactus.graph.n for k in range(1, 8)]
    assert all(b - a == 44 for a, b in zip(sizes, sizes[1:]))


def test_central_cactus():
    s = gen_strmon_cactus(1)
    g = s.cactus.graph
    # G' is induced by the first STRMON_BASE_VERTICES vertices
    sub = [e for e in g.edges if e[1] < STRMON_BASE_VERTICES]
    deg = [0] * STRMON_BASE_VERTICES
    for u, v in sub:
        deg[u] += 1
        deg[v] += 1
    assert sorted(v for v in range(STRMON_BASE_VERTICES) if deg[v] == 1) == sorted(s.leaves)
    assert len(s.leaves) == 11
    assert [v for v in range(STRMON_BASE_VERTICES) if deg[v] == 2] == [0]
    assert s.cactus.root == 0


def test_strmon_golden():
    gold = sio.read_graph(str(GOLDEN / "strmon_cactus_k1.json"))
    assert gold.graph.edges == gen_strmon_cactus(1).cactus.graph.edges


@pytest.mark.parametrize("k", [1, 2, 3])
def test_strmon_tree(k):
    t = gen_strmon_tree(k)
    s = gen_strmon_cactus(k)
    assert len(t.edges) == t.n - 1 and t.is_tree()
    assert max(t.degree(v) for v in range(t.n)) <= 3
    cycles = [b for b in s.cactus.blocks if b.kind != "edge"]
    assert len(cycles) == len(s.green_edges)
    for b in cycles:
        assert sum(1 for e in s.green_edges if set(e) <= set(b.vertices)) == 1


@pytest.mark.parametrize("n", range(0, 11))
def test_square_cactus_counts(n):
    c = gen_square_cactus(n)
    assert c.graph.n == square_cactus_size(n) == 6 * 2 ** n - 2
    assert all(b.kind == "cycle" and len(b.vertices) == 4 for b in c.blocks)
    assert _binary(c)


def test_square_cactus_recurrence():
    sizes = [gen_square_cactus(n).graph.n for n in range(13)]
    assert sizes[0] == 4
    assert all(b == 2 * a + 2 for a, b in zip(sizes, sizes[1:]))


def test_random_dt_cactus():
    for seed in range(20):
        c = gen_random_dt_cactus(seed, 5, 4)
        assert is_downward_triangulated(c)
        assert gen_random_dt_cactus(seed, 5, 4).graph == c.graph
    single = gen_random_dt_cactus(3, 1, 4)
    assert len(single.blocks) == 1


def test_random_dt_cactus_vertex_cap():
    for seed in range(20):
        c = gen_random_dt_cactus(seed, 6, 4, 0.6, max_vertices=200)
        assert c.graph.n <= 200


def test_random_3tree():
    g, order = gen_random_planar_3tree(0, 4)
    assert g.edges == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    for seed in range(10):
        n = 5 + 17 * seed
        g, order = gen_random_planar_3tree(seed, n)
        assert len(g.edges) == 3 * n - 6
        rec = recognize_3tree(g)
        assert sorted(v for v, _ in rec) == sorted(v for v, _ in order)


def test_cubic_and_k14():
    t = complete_cubic_tree(3)
    assert t.n == 1 + 3 + 6 + 12
    assert all(t.degree(v) in (1, 3) for v in range(t.n))
    s = k14_subdivision([1, 2, 3, 4])
    assert s.n == 11 and s.degree(0) == 4
    with pytest.raises(ValueError):
        k14_subdivision([1, 1, 1])
