import json
from fractions import Fraction

import pytest

from sadraw import io as sio
from sadraw.graphs import Graph
from sadraw.io import DrawingFile, GraphFile, ReportFile, SchemaError


def test_number_round_trip():
    for x in (Fraction(1, 3), Fraction(-7, 2 ** 200), Fraction(5), Fraction(0)):
        assert sio.parse_number(sio.format_number(x), True) == x
    for x in (0.1, -1e-300, 123456.789, 5e-324):
        assert sio.parse_number(sio.format_number(x), False) == x
    assert sio.parse_number("1/4", False) == 0.25
    with pytest.raises(SchemaError):
        sio.parse_number("0.5.1", True)


def test_graph_round_trip():
    g = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 2)), {0: (1, 2), 1: (0, 2), 2: (1, 3, 0), 3: (2,)})
    gf = GraphFile(g, [[0, 1, 2], [2, 3]], None, 0, {"name": "demo"})
    text = sio.dumps_graph(gf)
    back = sio.read_graph(text)
    assert back.graph == g and back.graph.rotation == g.rotation
    assert back.blocks == gf.blocks and back.root == 0 and back.family == {"name": "demo"}
    assert sio.dumps_graph(back) == text
    gf3 = GraphFile(Graph(3, ((0, 1), (1, 2), (0, 2))), outer_face=(0, 1, 2))
    assert sio.read_graph(sio.dumps_graph(gf3)).outer_face == (0, 1, 2)


def test_graph_schema_errors():
    base = {"format": "sadraw.graph", "version": 1, "n": 3, "edges": [[0, 1], [1, 2]]}
    sio.graph_from_json(base)
    for bad in ({**base, "version": 2}, {**base, "edges": [[0, 3]]}, {**base, "edges": [[0, 0]]},
                {**base, "n": -1}, {**base, "format": "other"}, {**base, "root": 5},
                {k: v for k, v in base.items() if k != "n"}):
        with pytest.raises(SchemaError):
            sio.graph_from_json(bad)
    with pytest.raises(SchemaError):
        sio.read_graph("{not json")


def test_drawing_round_trip_exact():
    coords = [(Fraction(1, 3), Fraction(-2, 7)), (Fraction(0), Fraction(1, 2 ** 500)), (Fraction(3), Fraction(4))]
    df = DrawingFile("euclid", "rational", coords, [[0, 1], [1, 2]], witnesses={(0, 2): [0, 1, 2]},
                     algorithm={"name": "x", "epsilon": 30.0})
    text = sio.dumps_drawing(df)
    back = sio.read_drawing(text)
    assert back.coords == coords
    assert back.witnesses == {(0, 2): [0, 1, 2]}
    assert back.graph().edges == ((0, 1), (1, 2))
    assert sio.dumps_drawing(back) == text


def test_drawing_round_trip_float_and_extras():
    coords = [(0.1, -0.2), (0.5, 0.25), (-0.3, 0.0)]
    df = DrawingFile("poincare", "float64", coords, [[0, 2], [2, 1]], tree_edges=[[0, 2], [2, 1]],
                     subdivision={(0, 1): 2},
                     schnyder={"outer": (0, 1, 2), "edges": [(3, 0, "red")], "faces": [(0, 1, 2)]})
    back = sio.read_drawing(sio.dumps_drawing(df))
    assert back.coords == coords and back.subdivision == {(0, 1): 2}
    assert back.schnyder["edges"] == [(3, 0, "red")]
    assert back.tree_edges == [[0, 2], [2, 1]]


def test_drawing_schema_errors():
    good = json.loads(sio.dumps_drawing(DrawingFile("euclid", "float64", [(0.0, 0.0), (1.0, 0.0)], [[0, 1]])))
    sio.drawing_from_json(good)
    bad_disk = {**good, "model": "poincare", "coords": [["0.0", "0.0"], ["1.0", "0.0"]]}
    bad_rat = {**good, "backend": "rational", "coords": [["1/0", "0"], ["1", "0"]]}
    bad_witness = {**good, "witnesses": [[0, 1, [1, 0]]]}
    bad_edge = {**good, "edges": [[0, 2]]}
    bad_model = {**good, "model": "klein"}
    for bad in (bad_disk, bad_rat, bad_witness, bad_edge, bad_model):
        with pytest.raises(SchemaError):
            sio.drawing_from_json(bad)


def test_report_round_trip():
    rf = ReportFile("ic", [(0, 1, "witnessed", [0, 1]), (1, 0, "exhausted_no_path", None)],
                    {"max_detour": 1.0, "resolution": float("inf"), "planar": True}, "1.0.0",
                    {"drawing": "sha256:ab"})
    text = sio.dumps_report(rf)
    back = sio.read_report(text)
    assert back.pairs == rf.pairs and not back.all_witnessed
    assert back.metrics["resolution"] == "inf"
    assert json.loads(text)["all_witnessed"] is False
    obj = json.loads(text)
    obj["pairs"][0][3] = None
    with pytest.raises(SchemaError):
        sio.report_from_json(obj)


def test_file_hash_and_files(tmp_path):
    p = tmp_path / "g.json"
    text = sio.dumps_graph(GraphFile(Graph(2, ((0, 1),))))
    sio.write_text(str(p), text)
    assert sio.read_graph(str(p)).graph.n == 2
    assert sio.file_hash(text).startswith("sha256:") and len(sio.file_hash(text)) == 71


def test_graph_bulk_fields_checked():
    base = {"format": "sadraw.graph", "version": 1, "n": 3, "edges": [[0, 1], [1, 2]]}
    sio.graph_from_json({**base, "blocks": [[0, 1], [1, 2]], "rotation_system": {"1": [0, 2]}})
    for bad in ({**base, "blocks": [[0, -1]]}, {**base, "blocks": [0]}, {**base, "rotation_system": {"1": [0, "x"]}},
                {**base, "rotation_system": {"a": [0]}}, {**base, "rotation_system": [[0]]}):
        with pytest.raises(SchemaError):
            sio.graph_from_json(bad)
