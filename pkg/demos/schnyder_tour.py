"""alpha-Schnyder drawings of a planar 3-tree.

Run with ``python3 demos/schnyder_tour.py``.  The classical face-count
drawing is compared with the narrow-cone placement, whose edges all stay
within 30 degrees of their Schnyder directions, so that increasing-chord
paths exist for every pair.
"""
from sadraw import certify_drawing, draw_alpha_schnyder, schnyder_face_count_drawing
from sadraw.certify import check_planar_drawing
from sadraw.families import gen_random_planar_3tree
from sadraw.schnyder import check_alpha_schnyder, schnyder_label_3tree

g, order = gen_random_planar_3tree(seed=5, n=30)
L = schnyder_label_3tree(g, order)

classic, counts = schnyder_face_count_drawing(g, L)
print("face counts of vertex 3:", counts[3], "sum", sum(counts[3]), "= faces - 1")
print("face-count drawing planar:", check_planar_drawing(classic, g),
      "| 60-deg cones:", check_alpha_schnyder(classic, L, 60.0))

d, L = draw_alpha_schnyder(g, order, alpha=30.0)
print("30-deg drawing planar:", check_planar_drawing(d, g),
      "| 30-deg cones:", check_alpha_schnyder(d, L, 30.0))

cert = certify_drawing(d, g, "ic")
print("ic pairs:", cert.counts())
print("max detour:", round(cert.metrics["max_detour"], 4))
