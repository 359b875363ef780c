import cmath
import math
import re
from pathlib import Path

from sadraw import io as sio
from sadraw.families import complete_cubic_tree
from sadraw.hyperbolic import DiskIsometry, draw_binary_tree_hyp, geodesic_through
from sadraw.io import DrawingFile
from sadraw.render import PAD, SIZE, render, svg_euclid, svg_poincare

GOLDEN = Path(__file__).parent / "golden"


def _hex_file(depth=2):
    d = draw_binary_tree_hyp(complete_cubic_tree(depth), 0)
    return DrawingFile("poincare", "float64", list(d.coords), [list(e) for e in d.graph.edges])


def test_hexagon_golden():
    assert render(_hex_file()) == (GOLDEN / "hexagon_depth2.svg").read_text()


def test_render_through_file_round_trip():
    df = _hex_file()
    back = sio.read_drawing(sio.dumps_drawing(df))
    assert render(back) == render(df)


def test_poincare_svg_shape():
    svg = render(_hex_file(1))
    assert svg.count("<circle") == 1 + 7        # unit circle and vertices
    assert 'stroke="gray"' in svg
    assert svg.count("<line") + svg.count("<path") == 6


def _screen(z):
    R = (SIZE - 2 * PAD) / 2
    return complex(SIZE / 2 + z.real * R, SIZE / 2 - z.imag * R)


def test_arc_flags_follow_geodesic():
    # the SVG arc (small-arc, sweep flag) must pass through the hyperbolic midpoint
    rng_pts = [cmath.rect(0.8 * ((k * 37) % 11) / 11 + 0.05, k * 0.7) for k in range(24)]
    coords = [(z.real, z.imag) for z in rng_pts]
    edges = [(i, i + 1) for i in range(len(coords) - 1)]
    svg = svg_poincare(coords, edges)
    arcs = re.findall(r'<path d="M ([\d.]+) ([\d.]+) A ([\d.]+) [\d.]+ 0 0 ([01]) ([\d.]+) ([\d.]+)"/>', svg)
    assert arcs
    checked = 0
    for u, v in edges:
        p, q = rng_pts[u], rng_pts[v]
        G = geodesic_through(p, q)
        if G.is_diameter:
            continue
        a, b = _screen(p), _screen(q)
        hit = [x for x in arcs if abs(float(x[0]) - a.real) < 1e-3 and abs(float(x[1]) - a.imag) < 1e-3]
        assert len(hit) == 1
        sweep = int(hit[0][3])
        iso = DiskIsometry.to_origin(p)
        w = iso.apply(q)
        mid = iso.inverse().apply(math.tanh(math.atanh(abs(w)) / 2) * w / abs(w))
        c = _screen(G.center)
        ang = lambda z: math.atan2((z - c).imag, (z - c).real)
        span = (ang(b) - ang(a)) % (2 * math.pi)
        m = (ang(_screen(mid)) - ang(a)) % (2 * math.pi)
        if sweep == 1:      # positive angle direction on screen
            assert span < math.pi and m < span
        else:
            assert 2 * math.pi - span < math.pi and m > span
        checked += 1
    assert checked > 10


def test_euclid_svg():
    coords = [(0, 0), (1, 0), (0.5, 2)]
    svg = svg_euclid(coords, [(0, 1), (1, 2), (0, 2)])
    assert svg.count("<line") == 3 and svg.count("<circle") == 3
    assert svg == svg_euclid(list(coords), [(0, 1), (1, 2), (0, 2)])
    assert "-0.000" not in svg
    assert svg_euclid([], []).endswith("</svg>\n")
