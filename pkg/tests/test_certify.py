import math
import random
from fractions import Fraction

import numpy as np
import pytest

from sadraw import certify as C
from sadraw.cactus import draw_cactus_ic, draw_fan
from sadraw.certify import (BUDGET, EXHAUSTED, WITNESSED, CoincidentVerticesError, EuclidDrawing, PathError,
                            check_concat, check_divergence, check_greedy_path, check_ic_path, check_lemma3,
                            check_monotone_path, check_planar_drawing, check_polygon_angles,
                            check_sa_path, check_slope_disjointness, check_strongly_monotone_path,
                            certify_drawing, detour, find_sa_path, front, resolution)
from sadraw.families import gen_random_dt_cactus, gen_random_graph
from sadraw.geometry import GeometryError
from sadraw.graphs import Graph, as_binary_cactus

import oracles as O


def D(*pts):
    return C.as_drawing(pts)


def G(n, edges):
    return Graph(n, tuple(edges))


def test_sa_examples():
    assert check_sa_path(D((0, 0), (1, 0), (2, 0)), [0, 1, 2])
    assert not check_sa_path(D((0, 0), (1, 0), (1, 1), (0, 1)), [0, 1, 2, 3])
    assert check_sa_path(D((0, 0), (1, 0), (1, 1)), [0, 1, 2])
    with pytest.raises(PathError):
        check_sa_path(D((0, 0), (1, 0)), [0, 1, 0])


def test_sa_adjacency_flag():
    d = D((0, 0), (1, 0), (2, 0))
    assert check_sa_path(d, [0, 1, 2], graph=G(3, [(0, 1), (1, 2)]))
    with pytest.raises(PathError):
        check_sa_path(d, [0, 2], graph=G(3, [(0, 1), (1, 2)]))


def test_ic_examples():
    assert check_ic_path(D((0, 0), (1, 0), (1, 1)), [0, 1, 2])
    assert not check_ic_path(D((0, 0), (1, 0), (0.5, 0.1)), [0, 1, 2])
    assert check_ic_path(D((0, 0), (3, 7)), [0, 1])


def test_cone_path_examples():
    lay = draw_fan(5, 30.0)
    d = C.as_drawing(lay.tips, "rational")
    assert check_lemma3(d, list(range(5)))
    assert check_ic_path(d, list(range(5)))
    assert not check_lemma3(D((0, 0), (1, 0), (0, 1)), [0, 1, 2])
    assert check_lemma3(D((0, 0), (1, 1), (2, 2), (3, 3)), [0, 1, 2, 3])


def test_front_examples():
    f = front(D((0, 0), (1, 0)), [0, 1])
    assert len(f.halfplanes) == 1 and f.contains((2, 5))
    f = front(D((0, 0), (1, 0), (1, 1)), [0, 1, 2])
    assert f.contains((2, 2)) and not f.contains((2, 0.5))
    assert not front(D((0, 0), (1, 0), (1, 1), (0, 1)), [0, 1, 2, 3]).path_is_sa


def test_concat_examples():
    d = D((0, 0), (1, 0), (2, 1), (0.5, 1))
    assert check_concat(d, [0, 1], [1, 2])
    assert not check_concat(d, [0, 1], [1, 3])
    assert check_concat(d, [0, 1], [1])
    with pytest.raises(PathError):
        check_concat(d, [0, 1], [2, 3])


def test_greedy_monotone_examples():
    d = D((0, 0), (5, 1))
    for chk in (check_greedy_path, check_monotone_path, check_strongly_monotone_path):
        assert chk(d, [0, 1])
    back = D((0, 0), (2, 0), (1, 1), (4, 0))
    assert not check_strongly_monotone_path(back, [0, 1, 2, 3])
    assert check_monotone_path(D((0, 0), (1, 0), (1, 1), (0, 2)), [0, 1, 2, 3])
    assert not check_monotone_path(D((0, 0), (1, 0), (1, 1), (0, 1)), [0, 1, 2, 3])


def test_detour_and_resolution():
    assert detour(D((0, 0), (2, 0)), [0, 1]) == pytest.approx(1.0)
    assert detour(D((0, 0), (1, 0), (1, 1)), [0, 1, 2]) == pytest.approx(2 / math.sqrt(2))
    with pytest.raises(PathError):
        detour(D((0, 0), (1, 0)), [0])
    assert resolution(D((0, 0), (1, 0), (1, 1), (0, 1))) == pytest.approx(math.sqrt(2))
    assert resolution(D((0, 0), (3, 4))) == pytest.approx(1.0)
    with pytest.raises(CoincidentVerticesError):
        D((0, 0), (0, 0))


def test_resolution_exact_huge_range():
    d = C.as_drawing([(Fraction(0), Fraction(0)), (Fraction(1, 2 ** 3000), Fraction(0)), (Fraction(1), Fraction(0))])
    assert C.resolution_log2(d) == pytest.approx(3000.0)


def test_planarity_examples():
    assert check_planar_drawing(D((0, 0), (1, 0), (0, 1)), G(3, [(0, 1), (1, 2), (0, 2)]))
    k4 = G(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert not check_planar_drawing(D((0, 0), (1, 0), (1, 1), (0, 1)), k4)
    assert check_planar_drawing(D((0, 0), (2, 0), (1, 2), (1, 0.5)), k4)
    # vertex in the interior of an edge
    assert not check_planar_drawing(D((0, 0), (2, 0), (1, 0)), G(3, [(0, 1), (1, 2)]))


def _two_branch_cactus():
    # root triangle 0-1-2, branch 1-3-4 and branch 2-5-6
    return as_binary_cactus(G(7, [(0, 1), (0, 2), (1, 2), (1, 3), (3, 4), (2, 5), (5, 6)]), root=0)


def _branch_drawing(angles):
    p = {0: (0.0, 0.0), 1: (-1.0, -1.0), 2: (1.0, -1.0)}
    for (parent, a, b), (ta, tb) in zip(((1, 3, 4), (2, 5, 6)), angles):
        u = (math.cos(math.radians(ta)), math.sin(math.radians(ta)))
        w = (math.cos(math.radians(tb)), math.sin(math.radians(tb)))
        p[a] = (p[parent][0] - 0.3 * u[0], p[parent][1] - 0.3 * u[1])
        p[b] = (p[a][0] - 0.3 * w[0], p[a][1] - 0.3 * w[1])
    return C.as_drawing([p[v] for v in range(7)])


def test_slope_disjointness_examples():
    c = _two_branch_cactus()
    assert check_slope_disjointness(_branch_drawing([(80, 100), (60, 70)]), c)
    assert not check_slope_disjointness(_branch_drawing([(60, 100), (70, 110)]), c)
    fan = as_binary_cactus(G(3, [(0, 1), (0, 2), (1, 2)]), root=0)
    assert check_slope_disjointness(D((0, 0), (-1, 1), (1, 1)), fan)


def test_slope_disjointness_of_construction():
    for seed in range(5):
        c = gen_random_dt_cactus(seed, 4, 3)
        assert check_slope_disjointness(draw_cactus_ic(c).drawing, c)


def test_divergence_examples():
    path = as_binary_cactus(G(4, [(0, 1), (1, 2), (2, 3)]), root=0)
    assert check_divergence(D((0, 0), (1, 0), (2, 0), (3, 0)), path, 0, 3)
    assert check_divergence(D((0, 1), (1, 0), (2, 0), (3, 1)), path, 0, 3)
    assert not check_divergence(D((2, 1), (1, 0), (2, 0), (1, 1)), path, 0, 3)
    # adjacent vertices in one block: vacuous
    assert check_divergence(D((2, 1), (1, 0), (2, 0), (1, 1)), path, 0, 1)


def test_polygon_angle_examples():
    assert check_polygon_angles(D((0, 0), (1, 0), (1, 1), (0, 1)), [0, 1, 2, 3])
    assert not check_polygon_angles(D((-10, 0), (0, 1), (10, 0), (0, -1)), [0, 1, 2, 3])
    assert check_polygon_angles(D((0, 0), (1, 0), (0, 1)), [0, 1, 2])
    ang = C.polygon_angles(D((0, 0), (1, 0), (1, 1), (0, 1)), [0, 1, 2, 3])
    assert ang == pytest.approx([90.0] * 4)
    with pytest.raises(GeometryError):
        C.polygon_angles(D((0, 0), (1, 1), (1, 0), (0, 1)), [0, 1, 2, 3])


def test_certify_examples():
    cert = certify_drawing(D((0, 0), (1, 1)), G(2, [(0, 1)]), "ic")
    assert cert.all_witnessed and len(cert.results) == 2
    # staircase path drawn around a square corner
    stair = D((0, 0), (1, 0), (1, 1), (0, 1))
    cert = certify_drawing(stair, G(4, [(0, 1), (1, 2), (2, 3)]), "sa")
    assert cert.results[(0, 3)].status == EXHAUSTED
    assert cert.results[(0, 2)].status == WITNESSED
    assert not cert.all_witnessed


def test_certify_rejects_bad_witness_and_falls_back():
    d = D((0, 0), (1, 0), (2, 0))
    g = G(3, [(0, 1), (1, 2)])
    cert = certify_drawing(d, g, "sa", witnesses={(0, 2): [0, 2]})
    assert cert.results[(0, 2)].source == "search"
    assert cert.results[(0, 2)].path == [0, 1, 2]


def test_budget():
    d = D((0, 0), (1, 0), (2, 0))
    g = G(3, [(0, 1), (1, 2)])
    assert find_sa_path(d, g, 0, 2, budget=1).status == BUDGET
    with pytest.raises(ValueError):
        find_sa_path(d, g, 0, 2, budget=0)
    with pytest.raises(PathError):
        find_sa_path(d, g, 0, 0)


def test_tree_search_equals_direct_check():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(3, 10)
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        g = G(n, [tuple(sorted(e)) for e in edges])
        pts = _grid_points(rng, n)
        d = C.as_drawing(pts, "rational")
        for s in range(n):
            for t in range(n):
                if s == t:
                    continue
                (p,) = list(O.all_simple_paths(g.edges, n, s, t))
                for mode, chk in (("sa", check_sa_path), ("ic", check_ic_path)):
                    r = find_sa_path(d, g, s, t, mode)
                    assert (r.status == WITNESSED) == chk(d, p)


def _grid_points(rng, n):
    pts = set()
    while len(pts) < n:
        pts.add((rng.randrange(O.GRID), rng.randrange(O.GRID)))
    pts = list(pts)
    rng.shuffle(pts)
    return pts


def _random_paths(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        k = rng.randint(2, 8)
        pts = _grid_points(rng, k)
        # bias towards nearly straight paths so both verdicts occur often
        if rng.random() < 0.5:
            x, y = rng.randrange(8), rng.randrange(8)
            pts = []
            for i in range(k):
                x += rng.randint(0, 7)
                y += rng.randint(-2, 7)
                pts.append((x, y))
            if len(set(pts)) < k or max(max(p) for p in pts) >= O.GRID or min(min(p) for p in pts) < 0:
                continue
        yield pts


def test_halfplane_and_four_point_equivalence():
    n_sa = n_ic = total = 0
    for pts in _random_paths(11, 10_000):
        d = C.as_drawing(pts, "rational")
        path = list(range(len(pts)))
        sa = check_sa_path(d, path)
        ic = check_ic_path(d, path)
        assert sa == O.sa_direct(pts, path)
        assert ic == O.ic_direct(pts, path)
        if check_lemma3(d, path):
            assert ic
        total += 1
        n_sa += sa
        n_ic += ic
    assert total >= 8000 and n_sa > 500 and n_ic > 300


def test_float_backend_agrees_on_grid():
    for pts in _random_paths(12, 2000):
        e = C.as_drawing(pts, "rational")
        f = C.as_drawing([(float(x), float(y)) for x, y in pts], "float64")
        path = list(range(len(pts)))
        assert check_sa_path(e, path) == check_sa_path(f, path, tol=0)


def test_find_sa_path_matches_brute_force():
    rng = random.Random(21)
    for seed in range(60):
        n = rng.randint(3, 7)
        g = gen_random_graph(seed, n, 0.5)
        pts = _grid_points(rng, n)
        d = C.as_drawing(pts, "rational")
        for s in range(n):
            for t in range(n):
                if s == t:
                    continue
                for mode, direct in (("sa", O.sa_direct), ("ic", O.ic_direct)):
                    r = find_sa_path(d, g, s, t, mode)
                    want = O.exists_path(g.edges, n, s, t, lambda p: direct(pts, p))
                    assert (r.status == WITNESSED) == want
                    if r.path:
                        assert direct(pts, r.path)


def test_batch_check_matches_single():
    rng = random.Random(4)
    for seed in range(10):
        n = 7
        g = gen_random_graph(seed, n, 0.6)
        d = C.as_drawing(_grid_points(rng, n), "rational")
        table = C.HalfplaneTable(d, C.graph_segments(g))
        paths = [list(p) for s in range(n) for t in range(n) if s != t
                 for p in O.all_simple_paths(g.edges, n, s, t)]
        if not paths:
            continue
        for both, chk in ((False, check_sa_path), (True, check_ic_path)):
            got = C.batch_check_paths(table, paths, both)
            assert list(got) == [chk(d, p) for p in paths]


def test_certificate_invariant_witnesses_reverify():
    c = gen_random_dt_cactus(1, 3, 3)
    cd = draw_cactus_ic(c)
    cert = certify_drawing(cd.drawing, c.graph, "ic", witnesses=cd.witnesses())
    assert cert.all_witnessed
    for (s, t), r in cert.results.items():
        assert r.path[0] == s and r.path[-1] == t
        assert check_ic_path(cd.drawing, r.path, graph=c.graph)
    assert cert.metrics["max_detour"] <= 2.094 + 1e-6


@pytest.mark.parametrize("prop", ["greedy", "monotone", "strongly_monotone"])
def test_other_properties_on_line(prop):
    d = D((0, 0), (1, 0), (2, 0), (3, 0))
    g = G(4, [(0, 1), (1, 2), (2, 3)])
    assert certify_drawing(d, g, prop).all_witnessed


def _exact_table_reference(coords, segs):
    # plain big-integer evaluation, no float filter
    D = 1
    for x, y in coords:
        D = D * x.denominator * y.denominator // math.gcd(D, x.denominator * y.denominator) or 1
    X = [int(x * D) for x, _ in coords]
    Y = [int(y * D) for _, y in coords]
    return [[(X[v] - X[u]) * (X[x] - X[v]) + (Y[v] - Y[u]) * (Y[x] - Y[v]) >= 0 for x in range(len(coords))]
            for u, v in segs]


def test_float_filter_matches_exact_tables():
    from sadraw.certify import HalfplaneTable, graph_segments
    rng = random.Random(12)
    for trial in range(40):
        n = rng.randint(3, 9)
        base = Fraction(1, 2 ** rng.choice([0, 40, 700, 3000]))
        # huge offsets with tiny perturbations and exact collinear triples
        pts = []
        for i in range(n):
            if i >= 2 and rng.random() < 0.3:
                a, b = pts[rng.randrange(i)], pts[rng.randrange(i)]
                t = Fraction(rng.randint(-3, 5), 2)
                pts.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
            else:
                big = Fraction(rng.randint(-2 ** 60, 2 ** 60))
                pts.append((big + base * rng.randint(-9, 9), big * rng.choice([1, -1]) + base * rng.randint(-9, 9)))
        if len(set(pts)) < n:
            continue
        edges = tuple((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5)
        if not edges:
            continue
        d = EuclidDrawing(tuple(pts))
        g = Graph(n, edges)
        segs = graph_segments(g)
        assert HalfplaneTable(d, segs).table.tolist() == _exact_table_reference(pts, segs)
        ref = EuclidDrawing(tuple(pts))
        ref.__dict__["_scaled"] = (np.zeros(n), np.zeros(n), math.inf)   # forces every entry exact
        assert check_planar_drawing(d, g) == check_planar_drawing(ref, g)
