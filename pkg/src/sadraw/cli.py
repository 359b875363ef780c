"""Command line interface: ``sadraw gen | draw | certify | measure | render``.

Exit codes: 0 success (all pairs witnessed), 1 property failure, 2 usage or
schema error.  ``SADRAW_THREADS`` sets the number of worker processes used
for pairwise certification (default 1).
"""

from __future__ import annotations

import argparse
import gc
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from . import io as sio
from .cactus import (DEFAULT_EPSILON, NotDownwardTriangulatedError, all_witnesses, angle_budget_max,
                     draw_cactus_ic)
from .certify import (WITNESSED, Certificate, CoincidentVerticesError, EuclidDrawing, certificate_metrics,
                      certify_drawing, check_planar_drawing, check_polygon_angles, check_slope_disjointness,
                      detours, normalize_property)
from .families import (complete_cubic_tree, gen_random_cycle_cactus, gen_random_dt_cactus,
                       gen_random_planar_3tree, gen_random_tree, gen_square_cactus, gen_strmon_cactus,
                       gen_strmon_tree, k14_subdivision)
from .geometry import GeometryError
from .graphs import BinaryCactus, Graph, GraphError, NotACactusError, NotBinaryError, as_binary_cactus
from .hyperbolic import (DegreeError, HypDrawing, NotK14SubdivisionError, arc_lengths, check_hyp_planarity,
                         draw_binary_cactus_hyp, draw_binary_tree_hyp, draw_k14_subdivision,
                         incident_angles, subdivision_collinearity, tree_paths, tree_report_hyp)
from .render import render
from .schnyder import (NotA3TreeError, SchnyderLabeling, SchnyderWitnesses, draw_alpha_schnyder,
                       recognize_3tree, schnyder_face_count_drawing, schnyder_label_3tree)

THREADS_ENV = "SADRAW_THREADS"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ALGORITHMS = ("cactus-ic", "schnyder", "schnyder-classical", "hyp-tree", "hyp-cactus", "k14")
FAMILIES = ("strmon-cactus", "strmon-tree", "square-cactus", "random-dt-cactus", "random-3tree",
            "random-cycle-cactus", "random-tree", "cubic-tree", "k14")


class UsageError(Exception):
    pass


class PreconditionError(Exception):
    def __init__(self, check: str, msg: str):
        super().__init__(f"{check}: {msg}")
        self.check = check


def _out(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        sio.write_text(path, text)


def threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if k < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return k


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"family {args.family} needs --{name.replace('_', '-')}")


def _cactus_file(c: BinaryCactus, family: dict) -> sio.GraphFile:
    return sio.GraphFile(c.graph, [list(b.vertices) for b in c.blocks], None, c.root, family)


def generate(args) -> sio.GraphFile:
    f = args.family
    fam = {"name": f}
    try:
        if f in ("strmon-cactus", "strmon-tree"):
            _need(args, "k")
            fam["k"] = args.k
            if f == "strmon-tree":
                return sio.GraphFile(gen_strmon_tree(args.k), root=0, family=fam)
            return _cactus_file(gen_strmon_cactus(args.k).cactus, fam)
        if f == "square-cactus":
            _need(args, "n")
            fam["n"] = args.n
            return _cactus_file(gen_square_cactus(args.n), fam)
        if f == "random-dt-cactus":
            fam.update(seed=args.seed, depth=args.depth or 3, max_fan=args.max_fan or 3,
                       extend_prob=args.extend_prob)
            if args.n is not None:
                fam["max_vertices"] = args.n
            c = gen_random_dt_cactus(args.seed, fam["depth"], fam["max_fan"], args.extend_prob, args.n)
            return _cactus_file(c, fam)
        if f == "random-cycle-cactus":
            fam.update(seed=args.seed, max_vertices=args.n or 100)
            return _cactus_file(gen_random_cycle_cactus(args.seed, fam["max_vertices"]), fam)
        if f == "random-3tree":
            _need(args, "n")
            fam.update(seed=args.seed, n=args.n)
            g, _ = gen_random_planar_3tree(args.seed, args.n)
            return sio.GraphFile(g, outer_face=(0, 1, 2), family=fam)
        if f == "random-tree":
            _need(args, "n")
            fam.update(seed=args.seed, n=args.n, max_degree=args.max_degree)
            return sio.GraphFile(gen_random_tree(args.seed, args.n, args.max_degree), family=fam)
        if f == "cubic-tree":
            _need(args, "depth")
            fam["depth"] = args.depth
            return sio.GraphFile(complete_cubic_tree(args.depth), root=0, family=fam)
        if f == "k14":
            _need(args, "legs")
            fam["legs"] = list(args.legs)
            return sio.GraphFile(k14_subdivision(args.legs), root=0, family=fam)
    except ValueError as e:
        raise UsageError(f"invalid parameters for {f}: {e}") from None
    raise UsageError(f"unknown family {f}")


def cmd_gen(args) -> int:
    _out(sio.dumps_graph(generate(args)), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# draw
# ---------------------------------------------------------------------------

def _as_cactus(gf: sio.GraphFile) -> BinaryCactus:
    try:
        return as_binary_cactus(gf.graph, gf.root)
    except (NotACactusError, NotBinaryError, GraphError) as e:
        raise PreconditionError("as_binary_cactus", str(e)) from None


def _euclid_file(d: EuclidDrawing, g: Graph, **kw) -> sio.DrawingFile:
    return sio.DrawingFile("euclid", d.backend, list(d.coords), [list(e) for e in g.edges], **kw)


def _hyp_file(d: HypDrawing, alg: dict) -> sio.DrawingFile:
    return sio.DrawingFile("poincare", "float64", list(d.coords), [list(e) for e in d.graph.edges],
                           [list(e) for e in d.tree().edges], dict(d.subdivision) or None, algorithm=alg)


def _labeling_dict(L: SchnyderLabeling) -> dict:
    return {"outer": tuple(L.outer), "edges": L.edges(), "faces": L.faces}


def _schnyder_input(gf: sio.GraphFile):
    outer = gf.outer_face or (0, 1, 2)
    try:
        order = recognize_3tree(gf.graph, outer)
    except NotA3TreeError as e:
        raise PreconditionError("recognize_3tree", str(e)) from None
    return outer, order


def draw(gf: sio.GraphFile, alg: str, epsilon: float = DEFAULT_EPSILON, alpha: float = 30.0,
         backend: str = "rational", witnesses: bool = True) -> sio.DrawingFile:
    g = gf.graph
    if alg == "cactus-ic":
        c = _as_cactus(gf)
        try:
            cd = draw_cactus_ic(c, epsilon)
        except NotDownwardTriangulatedError as e:
            raise PreconditionError("is_downward_triangulated", str(e)) from None
        info = {"name": alg, "epsilon": epsilon, "root": c.root, "angle_budget_max": angle_budget_max(cd)}
        return _euclid_file(cd.drawing, g, witnesses=all_witnesses(c) if witnesses else None, algorithm=info)
    if alg == "schnyder":
        outer, order = _schnyder_input(gf)
        d, L = draw_alpha_schnyder(g, order, alpha, outer, backend)
        # the two-colored witnesses are only guaranteed for alpha <= 30
        wit = SchnyderWitnesses(L).all_pairs() if witnesses and alpha <= 30.0 else None
        return _euclid_file(d, g, schnyder=_labeling_dict(L), witnesses=wit,
                            algorithm={"name": alg, "alpha": alpha})
    if alg == "schnyder-classical":
        outer, order = _schnyder_input(gf)
        L = schnyder_label_3tree(g, order, outer)
        d, counts = schnyder_face_count_drawing(g, L)
        info = {"name": alg, "face_counts": [list(x) for x in counts], "faces": len(L.faces)}
        return _euclid_file(d, g, schnyder=_labeling_dict(L), algorithm=info)
    try:
        if alg == "hyp-tree":
            return _hyp_file(draw_binary_tree_hyp(g, gf.root), {"name": alg})
        if alg == "k14":
            return _hyp_file(draw_k14_subdivision(g), {"name": alg})
        if alg == "hyp-cactus":
            return _hyp_file(draw_binary_cactus_hyp(_as_cactus(gf)), {"name": alg})
    except DegreeError as e:
        raise PreconditionError("max_degree_3", str(e)) from None
    except NotK14SubdivisionError as e:
        raise PreconditionError("is_k14_subdivision", str(e)) from None
    except GraphError as e:
        raise PreconditionError("is_tree", str(e)) from None
    raise UsageError(f"unknown algorithm {alg}")


def cmd_draw(args) -> int:
    gf = sio.read_graph(args.input)
    df = draw(gf, args.alg, args.epsilon, args.alpha, args.backend, not args.no_witnesses)
    _out(sio.dumps_drawing(df), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

def _graph_for(df: sio.DrawingFile, graph_path):
    if graph_path:
        g = sio.read_graph(graph_path).graph
        if df.edges is not None and sorted(map(tuple, df.edges)) != list(g.edges):
            print("warning: drawing edges differ from --graph; using --graph", file=sys.stderr)
    else:
        g = df.graph()
        if g is None:
            raise UsageError("drawing has no edges; pass --graph")
    if g.n > df.n:
        raise sio.SchemaError(f"drawing has {df.n} points but the graph has {g.n} vertices")
    return g


def euclid_drawing(df: sio.DrawingFile) -> EuclidDrawing:
    if df.model != "euclid":
        raise UsageError("expected a euclid drawing")
    try:
        return EuclidDrawing(tuple(df.coords), df.backend)
    except CoincidentVerticesError as e:
        raise sio.SchemaError(f"invalid drawing: {e}") from None


def hyp_drawing(df: sio.DrawingFile) -> HypDrawing:
    g = df.graph()
    try:
        return HypDrawing(tuple(df.coords), g, None if df.tree_edges is None else tuple(map(tuple, df.tree_edges)),
                          dict(df.subdivision or {}))
    except GeometryError as e:
        raise sio.SchemaError(f"invalid drawing: {e}") from None


def _chunk_certify(job):
    d, g, prop, wit, budget, pairs = job
    return certify_drawing(d, g, prop, wit, budget, pairs).results


def certify_euclid(d: EuclidDrawing, g: Graph, prop: str, witnesses, budget: int, workers: int = 1) -> Certificate:
    if workers <= 1 or g.n < 16:
        return certify_drawing(d, g, prop, witnesses, budget, planarity=True)
    pairs = [(s, t) for s in range(g.n) for t in range(g.n) if s != t]
    if prop == "ic":
        # keep each unordered pair inside one chunk
        pairs = [(s, t) for s in range(g.n) for t in range(s + 1, g.n)]
    chunks = [pairs[i::workers] for i in range(workers)]
    jobs = []
    for ch in chunks:
        wit = None if witnesses is None else {k: witnesses[k] for k in ch if k in witnesses}
        if prop == "ic":
            ch = ch + [(t, s) for s, t in ch]
        jobs.append((d, g, prop, wit, budget, ch))
    results: dict = {}
    with ProcessPoolExecutor(workers) as ex:
        for part in ex.map(_chunk_certify, jobs):
            results.update(part)
    results = {k: results[k] for k in sorted(results)}
    return Certificate(prop, results, certificate_metrics(d, g, results, planarity=True))


def certify_hyp(df: sio.DrawingFile, prop: str, samples: int = 200):
    """Tree-part certification of a Poincare drawing: (pairs, metrics, ok)."""
    if prop not in ("sa", "ic"):
        raise UsageError("poincare drawings support --property sa or ic only")
    d = hyp_drawing(df)
    t = d.tree()
    if t is None or not t.is_tree():
        raise UsageError("poincare certification needs a tree (tree_edges or a tree graph)")
    rep = tree_report_hyp(d, t, samples=samples)
    bad = set(rep.discrete_failures)
    pairs = []
    for p in tree_paths(t):
        s, u = p[0], p[-1]
        for a, b, q in ((s, u, p), (u, s, p[::-1])):
            ok = (min(a, b), max(a, b)) not in bad and (a, b) not in bad
            pairs.append((a, b, WITNESSED if ok else "exhausted_no_path", list(q) if ok else None))
    pairs.sort()
    metrics = {"pairs": len(pairs), "discrete": rep.discrete, "sampled_normals": rep.sampled,
               "sampled_clearance": rep.sampled_clearance, "samples": samples,
               "planar": check_hyp_planarity(d, d.graph) if d.graph is not None else None,
               "min_disk_margin": d.min_margin()}
    return pairs, metrics, bool(rep)


def cmd_certify(args) -> int:
    text = _read(args.input)
    df = sio.read_drawing(text)
    prop = normalize_property(args.property)
    inputs = {"drawing": sio.file_hash(text)}
    if args.graph:
        inputs["graph"] = sio.file_hash(_read(args.graph))
    if df.backend == "float64" and df.model == "euclid":
        print("warning: float64 drawing; verdicts use tolerance 1e-9", file=sys.stderr)
    if df.model == "poincare":
        pairs, metrics, ok = certify_hyp(df, prop, args.samples)
    else:
        d = euclid_drawing(df)
        g = _graph_for(df, args.graph)
        cert = certify_euclid(d, g, prop, df.witnesses, args.budget, threads())
        pairs = [(s, t, r.status, r.path) for (s, t), r in sorted(cert.results.items())]
        metrics = dict(cert.metrics)
        ok = cert.all_witnessed
    rf = sio.ReportFile(prop, pairs, metrics, __version__, inputs, df.model)
    if args.output:
        sio.write_text(args.output, sio.dumps_report(rf))
    n_ok = sum(1 for p in pairs if p[2] == WITNESSED)
    print(f"{prop}: {n_ok}/{len(pairs)} pairs witnessed" + ("" if ok else " -- FAILED"))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# measure / render
# ---------------------------------------------------------------------------

def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def measure_euclid(df: sio.DrawingFile, g: Graph, budget: int) -> dict:
    d = euclid_drawing(df)
    cert = certify_drawing(d, g, "sa", df.witnesses, budget, planarity=True)
    paths = [r.path for r in cert.results.values() if r.status == WITNESSED]
    det = detours(d, paths) if paths else np.array([])
    out = {"n": d.n, "backend": d.backend, "sa_witnessed": len(paths), "pairs": len(cert.results),
           "max_detour": float(det.max()) if len(det) else None,
           "mean_detour": float(det.mean()) if len(det) else None,
           "resolution_log2": cert.metrics.get("resolution_log2"),
           "planar": cert.metrics["planar"]}
    try:
        c = as_binary_cactus(g, (df.algorithm or {}).get("root"))
    except GraphError:
        return out
    out["slope_disjoint"] = check_slope_disjointness(d, c)
    lint = []
    for b in c.blocks:
        if b.kind == "cycle" and len(b.order) >= 4:
            try:
                ok = check_polygon_angles(d, list(b.order))
            except GeometryError:
                ok = False
            if not ok:
                lint.append(b.index)
    out["polygon_angle_violations"] = lint
    return out


def measure_hyp(df: sio.DrawingFile) -> dict:
    d = hyp_drawing(df)
    g = d.graph
    lens = arc_lengths(d, g)
    inc = incident_angles(d, g)
    # degree-2 vertices (subdivisions, cycle paths) are reported apart from branch vertices
    gaps = [x for v, gs in inc.items() if len(gs) >= 3 for x in gs]
    gaps2 = [min(gs) for gs in inc.values() if len(gs) == 2]
    col = subdivision_collinearity(d)
    return {"n": d.n, "arc_length_min": min(lens), "arc_length_max": max(lens),
            "angle_gap_min": min(gaps) if gaps else None, "angle_gap_max": max(gaps) if gaps else None,
            "degree2_angle_min": min(gaps2) if gaps2 else None,
            "collinearity_max": max(col) if col else None, "planar": check_hyp_planarity(d, g),
            "min_disk_margin": d.min_margin()}


def cmd_measure(args) -> int:
    df = sio.read_drawing(args.input)
    if df.model == "poincare":
        if df.edges is None:
            raise UsageError("poincare drawing has no edges")
        m = measure_hyp(df)
    else:
        m = measure_euclid(df, _graph_for(df, args.graph), args.budget)
    m = {k: (str(v) if isinstance(v, float) and not math.isfinite(v) else v) for k, v in m.items()}
    _out(json.dumps(m, sort_keys=True, indent=1) + "\n", args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    df = sio.read_drawing(args.input)
    if args.graph:
        df.edges = [list(e) for e in sio.read_graph(args.graph).graph.edges]
    _out(render(df), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sadraw", description="Self-approaching and increasing-chord graph drawings.")
    p.add_argument("--version", action="version", version=f"sadraw {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a graph family")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--depth", type=int)
    g.add_argument("--max-fan", type=int)
    g.add_argument("--max-degree", type=int)
    g.add_argument("--extend-prob", type=float, default=0.5)
    g.add_argument("--legs", type=int, nargs=4)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("draw", help="draw a graph")
    d.add_argument("--alg", required=True, choices=ALGORITHMS)
    d.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    d.add_argument("--alpha", type=float, default=30.0)
    d.add_argument("--backend", choices=("rational", "float64"), default="rational")
    d.add_argument("--no-witnesses", action="store_true")
    d.add_argument("-i", "--input", required=True)
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_draw)

    c = sub.add_parser("certify", help="certify a drawing pairwise")
    c.add_argument("--property", required=True,
                   choices=("sa", "ic", "greedy", "monotone", "strongly-monotone"))
    c.add_argument("-i", "--input", required=True)
    c.add_argument("--graph")
    c.add_argument("--budget", type=int, default=10 ** 6)
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_certify)

    m = sub.add_parser("measure", help="print drawing metrics")
    m.add_argument("-i", "--input", required=True)
    m.add_argument("--graph")
    m.add_argument("--budget", type=int, default=10 ** 5)
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_measure)

    r = sub.add_parser("render", help="write an SVG")
    r.add_argument("-i", "--input", required=True)
    r.add_argument("--graph")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    # witness tables hold ~10^6 small lists; default gen-0 thresholds make
    # the cyclic collector rescan them constantly
    old = gc.get_threshold()
    gc.set_threshold(100_000, 20, 20)
    try:
        return args.func(args)
    except PreconditionError as e:
        print(f"error: precondition failed: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, sio.SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        gc.set_threshold(*old)


if __name__ == "__main__":
    sys.exit(main())
