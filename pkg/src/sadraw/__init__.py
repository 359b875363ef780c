"""Self-approaching and increasing-chord graph drawings.

Constructions for downward-triangulated binary cactuses (exact rational
coordinates), alpha-Schnyder drawings of planar 3-trees, and hexagon-tiling
drawings of binary trees and cactuses in the Poincare disk, together with
pairwise certifiers for the self-approaching, increasing-chord, greedy and
(strongly) monotone properties.
"""

__version__ = "1.0.0"

from .graphs import Graph, BinaryCactus, as_binary_cactus, is_downward_triangulated
from .certify import EuclidDrawing, certify_drawing, find_sa_path, check_sa_path, check_ic_path
from .cactus import draw_cactus_ic
from .schnyder import draw_alpha_schnyder, recognize_3tree, schnyder_face_count_drawing
from .hyperbolic import draw_binary_tree_hyp, draw_binary_cactus_hyp, draw_k14_subdivision, certify_tree_hyp

__all__ = [
    "Graph", "BinaryCactus", "as_binary_cactus", "is_downward_triangulated",
    "EuclidDrawing", "certify_drawing", "find_sa_path", "check_sa_path", "check_ic_path",
    "draw_cactus_ic", "draw_alpha_schnyder", "recognize_3tree", "schnyder_face_count_drawing",
    "draw_binary_tree_hyp", "draw_binary_cactus_hyp", "draw_k14_subdivision", "certify_tree_hyp",
]
