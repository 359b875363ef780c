import json
import subprocess
import sys

import pytest

from sadraw import io as sio
from sadraw.cli import main


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def tmp(tmp_path):
    return tmp_path


def test_gen_examples(tmp):
    assert run("gen", "square-cactus", "--n", 2, "-o", tmp / "sq.json") == 0
    assert sio.read_graph(str(tmp / "sq.json")).graph.n == 22
    assert run("gen", "random-3tree", "--n", 4, "--seed", 7, "-o", tmp / "k4.json") == 0
    g = sio.read_graph(str(tmp / "k4.json")).graph
    assert g.n == 4 and len(g.edges) == 6
    run("gen", "strmon-cactus", "--k", 1, "-o", tmp / "a.json")
    run("gen", "strmon-cactus", "--k", 2, "-o", tmp / "b.json")
    na = sio.read_graph(str(tmp / "a.json")).graph.n
    nb = sio.read_graph(str(tmp / "b.json")).graph.n
    assert nb - na == 44


def test_gen_errors(tmp, capsys):
    assert run("gen", "square-cactus") == 2
    assert run("gen", "strmon-cactus", "--k", 0) == 2
    assert run("gen", "nope") == 2
    assert run("gen", "square-cactus", "--n", -1) == 2


def test_gen_deterministic(tmp):
    for i in range(2):
        run("gen", "random-dt-cactus", "--seed", 9, "--depth", 4, "-o", tmp / f"g{i}.json")
    assert (tmp / "g0.json").read_bytes() == (tmp / "g1.json").read_bytes()


def test_cactus_ic_pipeline(tmp, capsys):
    run("gen", "random-dt-cactus", "--seed", 3, "--depth", 4, "--max-fan", 4, "-o", tmp / "c.json")
    assert run("draw", "--alg", "cactus-ic", "--epsilon", 30, "-i", tmp / "c.json", "-o", tmp / "d.json") == 0
    assert run("certify", "--property", "ic", "-i", tmp / "d.json", "-o", tmp / "r.json") == 0
    rf = sio.read_report(str(tmp / "r.json"))
    assert rf.all_witnessed and rf.metrics["planar"] in (True, False)
    assert rf.inputs["drawing"].startswith("sha256:")
    # self-contained: re-running only the report's witnesses reproduces every verdict
    from sadraw.certify import certify_drawing
    df = sio.read_drawing(str(tmp / "d.json"))
    wit = {(s, t): p for s, t, st, p in rf.pairs}
    cert = certify_drawing(df.coords, df.graph(), "ic", witnesses=wit)
    assert all(r.source == "witness" for r in cert.results.values())
    out = capsys.readouterr().out
    assert "pairs witnessed" in out


def test_draw_is_deterministic(tmp):
    run("gen", "random-3tree", "--n", 20, "--seed", 2, "-o", tmp / "g.json")
    for i in range(2):
        run("draw", "--alg", "schnyder", "--alpha", 30, "-i", tmp / "g.json", "-o", tmp / f"d{i}.json")
        run("certify", "--property", "ic", "-i", tmp / f"d{i}.json", "-o", tmp / f"r{i}.json")
    assert (tmp / "d0.json").read_bytes() == (tmp / "d1.json").read_bytes()
    assert (tmp / "r0.json").read_bytes() == (tmp / "r1.json").read_bytes()


def test_schnyder_k4(tmp):
    run("gen", "random-3tree", "--n", 4, "--seed", 7, "-o", tmp / "k4.json")
    assert run("draw", "--alg", "schnyder", "--alpha", 30, "-i", tmp / "k4.json", "-o", tmp / "d.json") == 0
    assert run("certify", "--property", "ic", "-i", tmp / "d.json", "-o", tmp / "r.json") == 0
    assert sio.read_report(str(tmp / "r.json")).metrics["planar"] is True


def test_schnyder_classical(tmp):
    run("gen", "random-3tree", "--n", 12, "--seed", 1, "-o", tmp / "g.json")
    assert run("draw", "--alg", "schnyder-classical", "-i", tmp / "g.json", "-o", tmp / "d.json") == 0
    df = sio.read_drawing(str(tmp / "d.json"))
    f = df.algorithm["faces"]
    assert all(sum(c) == f for c in df.algorithm["face_counts"])


def test_precondition_errors(tmp, capsys):
    run("gen", "random-tree", "--n", 30, "--seed", 1, "-o", tmp / "t.json")
    g = sio.read_graph(str(tmp / "t.json")).graph
    assert max(g.degree(v) for v in range(g.n)) >= 4
    assert run("draw", "--alg", "hyp-tree", "-i", tmp / "t.json") == 2
    assert "max_degree_3" in capsys.readouterr().err
    run("gen", "square-cactus", "--n", 1, "-o", tmp / "s.json")
    assert run("draw", "--alg", "cactus-ic", "-i", tmp / "s.json") == 2
    assert "is_downward_triangulated" in capsys.readouterr().err
    assert run("draw", "--alg", "schnyder", "-i", tmp / "s.json") == 2
    assert "recognize_3tree" in capsys.readouterr().err
    assert run("draw", "--alg", "k14", "-i", tmp / "s.json") == 2


def _write_drawing(path, coords, edges, backend="float64"):
    df = sio.DrawingFile("euclid", backend, coords, edges)
    sio.write_text(str(path), sio.dumps_drawing(df))


def test_certify_line_and_failure(tmp, capsys):
    _write_drawing(tmp / "line.json", [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], [[0, 1], [1, 2]])
    assert run("certify", "--property", "sa", "-i", tmp / "line.json") == 0
    _write_drawing(tmp / "stair.json", [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], [[0, 1], [1, 2], [2, 3]])
    assert run("certify", "--property", "sa", "-i", tmp / "stair.json") == 1
    assert "FAILED" in capsys.readouterr().out
    for prop in ("greedy", "monotone", "strongly-monotone"):
        assert run("certify", "--property", prop, "-i", tmp / "line.json") == 0


def test_certify_coincident_is_schema_error(tmp, capsys):
    _write_drawing(tmp / "bad.json", [(0.0, 0.0), (1.0, 0.0), (1.0, 0.0)], [[0, 1], [1, 2]])
    assert run("certify", "--property", "ic", "-i", tmp / "bad.json") == 2
    assert "same point" in capsys.readouterr().err
    (tmp / "junk.json").write_text('{"format": "sadraw.drawing"}')
    assert run("certify", "--property", "ic", "-i", tmp / "junk.json") == 2
    assert run("certify", "--property", "ic", "-i", tmp / "missing.json") == 2


def test_measure_line(tmp, capsys):
    _write_drawing(tmp / "line.json", [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], [[0, 1], [1, 2]])
    assert run("measure", "-i", tmp / "line.json") == 0
    m = json.loads(capsys.readouterr().out)
    assert m["max_detour"] == pytest.approx(1.0) and m["planar"] is True


def test_measure_cactus(tmp, capsys):
    run("gen", "random-dt-cactus", "--seed", 4, "--depth", 4, "--max-fan", 4, "-o", tmp / "c.json")
    run("draw", "--alg", "cactus-ic", "-i", tmp / "c.json", "-o", tmp / "d.json")
    capsys.readouterr()
    assert run("measure", "-i", tmp / "d.json", "--graph", tmp / "c.json") == 0
    m = json.loads(capsys.readouterr().out)
    assert m["slope_disjoint"] is True and m["max_detour"] <= 2.094 + 1e-6
    assert m["resolution_log2"] > 0


def test_hyperbolic_pipeline(tmp, capsys):
    run("gen", "cubic-tree", "--depth", 2, "-o", tmp / "t.json")
    assert run("draw", "--alg", "hyp-tree", "-i", tmp / "t.json", "-o", tmp / "h.json") == 0
    assert run("certify", "--property", "ic", "-i", tmp / "h.json", "-o", tmp / "r.json") == 0
    rf = sio.read_report(str(tmp / "r.json"))
    assert rf.model == "poincare" and rf.metrics["sampled_normals"] is True
    capsys.readouterr()
    assert run("measure", "-i", tmp / "h.json") == 0
    m = json.loads(capsys.readouterr().out)
    assert m["arc_length_max"] - m["arc_length_min"] < 1e-9
    assert m["angle_gap_min"] == pytest.approx(120.0) and m["angle_gap_max"] == pytest.approx(120.0)
    assert run("render", "-i", tmp / "h.json", "-o", tmp / "h.svg") == 0
    assert (tmp / "h.svg").read_text().startswith("<?xml")
    assert run("certify", "--property", "greedy", "-i", tmp / "h.json") == 2


def test_hyp_cactus_and_k14(tmp):
    run("gen", "random-cycle-cactus", "--seed", 4, "--n", 40, "-o", tmp / "c.json")
    assert run("draw", "--alg", "hyp-cactus", "-i", tmp / "c.json", "-o", tmp / "h.json") == 0
    assert run("certify", "--property", "ic", "-i", tmp / "h.json") == 0
    run("gen", "k14", "--legs", 1, 2, 3, 1, "-o", tmp / "k.json")
    assert run("draw", "--alg", "k14", "-i", tmp / "k.json", "-o", tmp / "k14.json") == 0
    assert run("certify", "--property", "ic", "-i", tmp / "k14.json") == 0


def test_threads_env(tmp, monkeypatch):
    run("gen", "random-dt-cactus", "--seed", 3, "--depth", 4, "--max-fan", 4, "--extend-prob", 0.7,
        "-o", tmp / "c.json")
    assert sio.read_graph(str(tmp / "c.json")).graph.n >= 16   # large enough for the worker pool
    run("draw", "--alg", "cactus-ic", "-i", tmp / "c.json", "-o", tmp / "d.json")
    run("certify", "--property", "ic", "-i", tmp / "d.json", "-o", tmp / "r1.json")
    monkeypatch.setenv("SADRAW_THREADS", "2")
    assert run("certify", "--property", "ic", "-i", tmp / "d.json", "-o", tmp / "r2.json") == 0
    assert (tmp / "r1.json").read_bytes() == (tmp / "r2.json").read_bytes()
    monkeypatch.setenv("SADRAW_THREADS", "zero")
    assert run("certify", "--property", "ic", "-i", tmp / "d.json") == 2


def test_console_script_and_module():
    r = subprocess.run([sys.executable, "-m", "sadraw", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("sadraw ")
    r = subprocess.run([sys.executable, "-m", "sadraw"], capture_output=True, text=True)
    assert r.returncode == 2
