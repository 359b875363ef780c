"""Binary trees in the Poincare disk.

Run with ``python3 demos/hyperbolic_tour.py``.  A complete cubic tree is
drawn on the tiling by right-angled regular hexagons.  Every edge has the
same hyperbolic length and the three edges at each vertex meet at 120
degrees.  The drawing is then certified to be increasing-chord.
"""
from sadraw import certify_tree_hyp, draw_binary_tree_hyp
from sadraw.families import complete_cubic_tree
from sadraw.hyperbolic import hyp_distance

for depth in range(1, 5):
    t = complete_cubic_tree(depth)
    d = draw_binary_tree_hyp(t)
    lengths = [hyp_distance(d[u], d[v]) for u, v in t.edges]
    print(f"depth {depth}: {t.n:3d} vertices, edge length {min(lengths):.9f}..{max(lengths):.9f}, "
          f"closest to the rim 1-|z|^2 = {d.min_margin():.2e}, certified: {certify_tree_hyp(d, t)}")
