"""JSON files for graphs, drawings and certificate reports.

Every file carries ``format`` and ``version`` keys and is validated against a
JSON schema on read.  Exact rationals are written as ``"p/q"`` strings and
floats as their shortest round-trip decimal string, so reading a written file
gives back exactly the same values.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import jsonschema

from .graphs import Graph

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """A file does not match its schema or violates a semantic invariant."""


# ---------------------------------------------------------------------------
# schemas
# ---------------------------------------------------------------------------

_INT = {"type": "integer", "minimum": 0}
_NUM = {"type": "string", "pattern": r"^-?(\d+(/\d+)?|(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?|inf|nan)$"}
_PATH = {"type": "array", "items": _INT, "minItems": 2}
_EDGE = {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}


def _header(fmt):
    return {"format": {"const": fmt}, "version": {"const": SCHEMA_VERSION}}


GRAPH_SCHEMA = {
    "type": "object",
    "required": ["format", "version", "n", "edges"],
    "properties": {
        **_header("sadraw.graph"),
        "n": _INT,
        "edges": {"type": "array", "items": _EDGE},
        "rotation_system": {"type": "object", "additionalProperties": {"type": "array", "items": _INT}},
        "blocks": {"type": "array", "items": {"type": "array", "items": _INT}},
        "outer_face": {"type": "array", "items": _INT, "minItems": 3, "maxItems": 3},
        "root": _INT,
        "family": {"type": "object"},
    },
    "additionalProperties": False,
}

DRAWING_SCHEMA = {
    "type": "object",
    "required": ["format", "version", "model", "backend", "coords"],
    "properties": {
        **_header("sadraw.drawing"),
        "model": {"enum": ["euclid", "poincare"]},
        "backend": {"enum": ["float64", "rational"]},
        "coords": {"type": "array", "items": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}},
        "edges": {"type": "array", "items": _EDGE},
        "tree_edges": {"type": "array", "items": _EDGE},
        "subdivision": {"type": "array", "items": {"type": "array", "items": _INT, "minItems": 3, "maxItems": 3}},
        "schnyder": {
            "type": "object",
            "required": ["outer", "edges", "faces"],
            "properties": {
                "outer": {"type": "array", "items": _INT, "minItems": 3, "maxItems": 3},
                "edges": {"type": "array", "items": {
                    "type": "array", "prefixItems": [_INT, _INT, {"enum": ["red", "green", "blue"]}],
                    "minItems": 3, "maxItems": 3}},
                "faces": {"type": "array", "items": {"type": "array", "items": _INT, "minItems": 3, "maxItems": 3}},
            },
        },
        "witnesses": {"type": "array", "items": {
            "type": "array", "prefixItems": [_INT, _INT, _PATH], "minItems": 3, "maxItems": 3}},
        "algorithm": {"type": "object"},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["format", "version", "property", "pairs", "metrics", "tool_version", "inputs"],
    "properties": {
        **_header("sadraw.report"),
        "property": {"type": "string"},
        "model": {"enum": ["euclid", "poincare"]},
        "all_witnessed": {"type": "boolean"},
        "pairs": {"type": "array", "items": {
            "type": "array",
            "prefixItems": [_INT, _INT, {"enum": ["witnessed", "exhausted_no_path", "budget_exceeded"]},
                            {"anyOf": [_PATH, {"type": "null"}]}],
            "minItems": 4, "maxItems": 4}},
        "metrics": {"type": "object"},
        "tool_version": {"type": "string"},
        "inputs": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "additionalProperties": False,
}


_NUM_RE = re.compile(_NUM["pattern"])
_STATUSES = frozenset(("witnessed", "exhausted_no_path", "budget_exceeded"))

# bulk arrays are checked by the loops below; jsonschema only sees the envelope
_BULK = {
    "graph": {"edges": ("ints", 2), "blocks": ("ints", None), "rotation_system": ("ints", None)},
    "drawing": {"coords": ("coords", 2), "edges": ("ints", 2), "tree_edges": ("ints", 2),
                "subdivision": ("ints", 3), "witnesses": ("witness", None)},
    "report": {"pairs": ("pair", None)},
}


_INT_ONLY = {int}


def _is_index(x) -> bool:
    return type(x) is int and x >= 0


def _index_row(r, width) -> bool:
    # set(map(type, ...)) keeps the per-element work in C; bools are rejected
    return (type(r) is list and (width is None or len(r) == width)
            and (not r or (set(map(type, r)) == _INT_ONLY and min(r) >= 0)))


def _check_row(kind, width, r) -> bool:
    if kind == "ints":
        return _index_row(r, width)
    if kind == "coords":
        return type(r) is list and len(r) == 2 and all(type(x) is str and _NUM_RE.match(x) for x in r)
    if kind == "witness":
        return (type(r) is list and len(r) == 3 and _is_index(r[0]) and _is_index(r[1])
                and _index_row(r[2], None) and len(r[2]) >= 2)
    # report pair
    return (type(r) is list and len(r) == 4 and _is_index(r[0]) and _is_index(r[1]) and r[2] in _STATUSES
            and (r[3] is None or (_index_row(r[3], None) and len(r[3]) >= 2)))


_VALIDATORS: dict = {}


def _validator(what, schema):
    # checking the schema itself is costly, so do it once per file kind
    v = _VALIDATORS.get(what)
    if v is None:
        cls = jsonschema.validators.validator_for(schema)
        cls.check_schema(schema)
        v = _VALIDATORS[what] = cls(schema)
    return v


def _validate(obj, schema, what):
    bulk = _BULK[what]
    if isinstance(obj, dict):
        shell = {k: (type(v)() if k in bulk and isinstance(v, (list, dict)) else v) for k, v in obj.items()}
    else:
        shell = obj
    e = jsonschema.exceptions.best_match(_validator(what, schema).iter_errors(shell))
    if e is not None:
        path = "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(f"invalid {what} file at '{path}': {e.message}") from None
    for key, (kind, width) in bulk.items():
        rows = obj.get(key, ())
        items = rows.items() if isinstance(rows, dict) else enumerate(rows)
        for i, r in items:
            if not _check_row(kind, width, r):
                raise SchemaError(f"invalid {what} file at '{key}/{i}': malformed entry {r!r}")


# ---------------------------------------------------------------------------
# numbers
# ---------------------------------------------------------------------------

def format_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def parse_number(s: str, exact: bool):
    if exact:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"not an exact rational: {s!r}") from None
    if "/" in s:
        return float(Fraction(s))
    return float(s)


def dumps(obj) -> str:
    """Deterministic serialization: sorted keys, compact separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def file_hash(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def _load(path_or_text, schema, what):
    text = path_or_text
    if not path_or_text.lstrip().startswith("{"):
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{what} file is not JSON: {e}") from None
    return obj, text


def write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

@dataclass
class GraphFile:
    graph: Graph
    blocks: Optional[list] = None
    outer_face: Optional[tuple] = None
    root: Optional[int] = None
    family: Optional[dict] = None


def graph_to_json(gf: GraphFile) -> dict:
    g = gf.graph
    out = {"format": "sadraw.graph", "version": SCHEMA_VERSION, "n": g.n,
           "edges": [list(e) for e in g.edges]}
    if g.rotation is not None:
        out["rotation_system"] = {str(v): list(order) for v, order in sorted(g.rotation.items())}
    if gf.blocks is not None:
        out["blocks"] = [list(b) for b in gf.blocks]
    if gf.outer_face is not None:
        out["outer_face"] = list(gf.outer_face)
    if gf.root is not None:
        out["root"] = gf.root
    if gf.family is not None:
        out["family"] = gf.family
    return out


def graph_from_json(obj: dict) -> GraphFile:
    _validate(obj, GRAPH_SCHEMA, "graph")
    n = obj["n"]
    rot = obj.get("rotation_system")
    if rot is not None:
        if not all(k.isdigit() for k in rot):
            raise SchemaError("invalid graph file at 'rotation_system': keys must be vertex ids")
        rot = {int(k): tuple(v) for k, v in rot.items()}
    try:
        g = Graph(n, tuple(tuple(e) for e in obj["edges"]), rot)
    except ValueError as e:
        raise SchemaError(f"invalid graph: {e}") from None
    for key in ("outer_face", "root"):
        vals = obj.get(key)
        vals = [vals] if isinstance(vals, int) else (vals or [])
        if any(v >= n for v in vals):
            raise SchemaError(f"{key} refers to a vertex outside [0, {n})")
    outer = obj.get("outer_face")
    return GraphFile(g, obj.get("blocks"), tuple(outer) if outer else None, obj.get("root"), obj.get("family"))


def dumps_graph(gf: GraphFile) -> str:
    return dumps(graph_to_json(gf))


def read_graph(path_or_text: str) -> GraphFile:
    obj, _ = _load(path_or_text, GRAPH_SCHEMA, "graph")
    return graph_from_json(obj)


# ---------------------------------------------------------------------------
# drawings
# ---------------------------------------------------------------------------

@dataclass
class DrawingFile:
    model: str
    backend: str
    coords: list
    edges: Optional[list] = None
    tree_edges: Optional[list] = None
    subdivision: Optional[dict] = None   # (u, w) -> midpoint vertex
    schnyder: Optional[dict] = None      # {"outer", "edges": [(u, v, color)], "faces"}
    witnesses: Optional[dict] = None     # (s, t) -> path
    algorithm: Optional[dict] = None

    @property
    def n(self) -> int:
        return len(self.coords)

    def graph(self) -> Optional[Graph]:
        if self.edges is None:
            return None
        return Graph(self.n, tuple(tuple(e) for e in self.edges))


def drawing_to_json(df: DrawingFile) -> dict:
    out = {"format": "sadraw.drawing", "version": SCHEMA_VERSION, "model": df.model,
           "backend": df.backend,
           "coords": [[format_number(x), format_number(y)] for x, y in df.coords]}
    if df.edges is not None:
        out["edges"] = [list(e) for e in df.edges]
    if df.tree_edges is not None:
        out["tree_edges"] = [list(e) for e in df.tree_edges]
    if df.subdivision:
        out["subdivision"] = [[u, w, m] for (u, w), m in sorted(df.subdivision.items())]
    if df.schnyder is not None:
        s = df.schnyder
        out["schnyder"] = {"outer": list(s["outer"]), "edges": [list(e) for e in s["edges"]],
                           "faces": [list(f) for f in s["faces"]]}
    if df.witnesses is not None:
        out["witnesses"] = [[s, t, list(p)] for (s, t), p in sorted(df.witnesses.items())]
    if df.algorithm is not None:
        out["algorithm"] = df.algorithm
    return out


def drawing_from_json(obj: dict) -> DrawingFile:
    _validate(obj, DRAWING_SCHEMA, "drawing")
    exact = obj["backend"] == "rational"
    coords = [(parse_number(x, exact), parse_number(y, exact)) for x, y in obj["coords"]]
    n = len(coords)
    if obj["model"] == "poincare":
        if exact:
            raise SchemaError("poincare drawings use the float64 backend")
        for v, (x, y) in enumerate(coords):
            if not x * x + y * y < 1.0:
                raise SchemaError(f"poincare vertex {v} does not lie inside the unit disk")
    for key in ("edges", "tree_edges", "subdivision"):
        for e in obj.get(key, []):
            if any(v >= n for v in e):
                raise SchemaError(f"{key} refers to a vertex outside [0, {n})")
    wit = None
    if "witnesses" in obj:
        wit = {}
        for s, t, p in obj["witnesses"]:
            if p[0] != s or p[-1] != t or max(p) >= n:
                raise SchemaError(f"witness for ({s}, {t}) does not run from {s} to {t} inside [0, {n})")
            wit[(s, t)] = list(p)
    sub = None
    if "subdivision" in obj:
        sub = {(u, w): m for u, w, m in obj["subdivision"]}
    sch = obj.get("schnyder")
    if sch is not None:
        sch = {"outer": tuple(sch["outer"]), "edges": [tuple(e) for e in sch["edges"]],
               "faces": [tuple(f) for f in sch["faces"]]}
    return DrawingFile(obj["model"], obj["backend"], coords, obj.get("edges"), obj.get("tree_edges"),
                       sub, sch, wit, obj.get("algorithm"))


def dumps_drawing(df: DrawingFile) -> str:
    return dumps(drawing_to_json(df))


def read_drawing(path_or_text: str) -> DrawingFile:
    obj, _ = _load(path_or_text, DRAWING_SCHEMA, "drawing")
    return drawing_from_json(obj)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class ReportFile:
    prop: str
    pairs: list                 # (s, t, status, path or None)
    metrics: dict
    tool_version: str
    inputs: dict = field(default_factory=dict)
    model: str = "euclid"

    @property
    def all_witnessed(self) -> bool:
        return all(p[2] == "witnessed" for p in self.pairs)


def _clean_metric(v):
    if isinstance(v, float) and (v != v or v in (float("inf"), float("-inf"))):
        return str(v)
    if isinstance(v, Fraction):
        return format_number(v)
    return v


def report_to_json(rf: ReportFile) -> dict:
    return {"format": "sadraw.report", "version": SCHEMA_VERSION, "property": rf.prop,
            "model": rf.model, "all_witnessed": rf.all_witnessed,
            "pairs": [[s, t, st, p if p is None or type(p) is list else list(p)] for s, t, st, p in rf.pairs],
            "metrics": {k: _clean_metric(v) for k, v in rf.metrics.items()},
            "tool_version": rf.tool_version, "inputs": dict(rf.inputs)}


def report_from_json(obj: dict) -> ReportFile:
    _validate(obj, REPORT_SCHEMA, "report")
    pairs = []
    for s, t, st, p in obj["pairs"]:
        if st == "witnessed" and (p is None or p[0] != s or p[-1] != t):
            raise SchemaError(f"witnessed pair ({s}, {t}) lacks a matching path")
        pairs.append((s, t, st, None if p is None else list(p)))
    return ReportFile(obj["property"], pairs, obj["metrics"], obj["tool_version"], obj["inputs"],
                      obj.get("model", "euclid"))


def dumps_report(rf: ReportFile) -> str:
    return dumps(report_to_json(rf))


def read_report(path_or_text: str) -> ReportFile:
    obj, _ = _load(path_or_text, REPORT_SCHEMA, "report")
    return report_from_json(obj)
