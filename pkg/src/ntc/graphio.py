"""Reading and writing ``.wdg.json`` weighted dual graph documents.

Document shape::

    {
      "name": "ex4_4_m",
      "vertices": [{"id": "E1", "self": -2, "genus": 1}, {"id": "E2", "self": -1}],
      "edges": [["E1", "E2"]],
      "arrows": [{"at": "E2", "weight": 1}]
    }

A repeated edge encodes an intersection number above one.  ``genus`` may be
omitted when it is zero.  Diagnostics locate the offending token either by
``line:col`` (syntax errors) or by a document path such as
``/vertices/2/self``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .lattice import GraphError, Vertex, WeightedDualGraph

SUFFIX = ".wdg.json"


def _int(value, where: str, code: str = "E_SCHEMA") -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphError(code, f"expected an integer, got {value!r}", where)
    return value


def _relocate(exc: GraphError, paths: dict[str, str]) -> GraphError:
    # graph-level checks report vertex ids; map them back to document paths
    if exc.where in paths:
        return GraphError(exc.code, exc.message, f"{paths[exc.where]} (vertex {exc.where})")
    return exc


def parse(text: str) -> WeightedDualGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError("E_SYNTAX", exc.msg, f"{exc.lineno}:{exc.colno}") from None
    if not isinstance(doc, dict):
        raise GraphError("E_SCHEMA", "top level must be an object", "/")
    unknown = sorted(set(doc) - {"name", "vertices", "edges", "arrows"})
    if unknown:
        raise GraphError("E_SCHEMA", f"unknown key {unknown[0]!r}", f"/{unknown[0]}")

    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise GraphError("E_SCHEMA", "name must be a string", "/name")

    raw_vertices = doc.get("vertices", [])
    if not isinstance(raw_vertices, list):
        raise GraphError("E_SCHEMA", "vertices must be a list", "/vertices")
    if not raw_vertices:
        raise GraphError("E_NO_VERTICES", "no vertices", "/vertices")

    vertices, index, paths = [], {}, {}
    for k, item in enumerate(raw_vertices):
        where = f"/vertices/{k}"
        if not isinstance(item, dict):
            raise GraphError("E_SCHEMA", "vertex must be an object", where)
        extra = sorted(set(item) - {"id", "self", "genus"})
        if extra:
            raise GraphError("E_SCHEMA", f"unknown vertex key {extra[0]!r}", f"{where}/{extra[0]}")
        vid = item.get("id")
        if not isinstance(vid, str) or not vid:
            raise GraphError("E_SCHEMA", "vertex id must be a nonempty string", f"{where}/id")
        if vid in index:
            raise GraphError("E_DUPLICATE_ID", f"duplicate vertex id {vid!r}", f"{where}/id")
        if "self" not in item:
            raise GraphError("E_SCHEMA", "vertex needs a 'self' self-intersection", where)
        self_int = _int(item["self"], f"{where}/self")
        if self_int >= 0:
            raise GraphError("E_SELF_NONNEGATIVE", f"self-intersection {self_int} must be <= -1", f"{where}/self")
        genus = _int(item.get("genus", 0), f"{where}/genus")
        if genus < 0:
            raise GraphError("E_GENUS_NEGATIVE", f"genus {genus} must be >= 0", f"{where}/genus")
        index[vid] = k
        paths[vid] = where
        vertices.append(Vertex(vid, self_int, genus))

    def lookup(vid, where):
        if not isinstance(vid, str):
            raise GraphError("E_SCHEMA", f"expected a vertex id, got {vid!r}", where)
        if vid not in index:
            raise GraphError("E_UNKNOWN_ID", f"unknown vertex id {vid!r}", where)
        return index[vid]

    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphError("E_SCHEMA", "edges must be a list", "/edges")
    edges = []
    for k, pair in enumerate(raw_edges):
        where = f"/edges/{k}"
        if not isinstance(pair, list) or len(pair) != 2:
            raise GraphError("E_SCHEMA", "edge must be a 2-element list of ids", where)
        i, j = lookup(pair[0], f"{where}/0"), lookup(pair[1], f"{where}/1")
        if i == j:
            raise GraphError("E_SELF_LOOP", f"self-loop at {pair[0]!r}", where)
        edges.append((i, j))

    raw_arrows = doc.get("arrows", [])
    if not isinstance(raw_arrows, list):
        raise GraphError("E_SCHEMA", "arrows must be a list", "/arrows")
    arrows = []
    for k, item in enumerate(raw_arrows):
        where = f"/arrows/{k}"
        if not isinstance(item, dict) or set(item) != {"at", "weight"}:
            raise GraphError("E_SCHEMA", "arrow must be an object with 'at' and 'weight'", where)
        i = lookup(item["at"], f"{where}/at")
        weight = _int(item["weight"], f"{where}/weight")
        if weight < 1:
            raise GraphError("E_ARROW_WEIGHT", f"arrow weight {weight} must be >= 1", f"{where}/weight")
        arrows.append((i, weight))

    try:
        return WeightedDualGraph(tuple(vertices), tuple(edges), tuple(arrows), name)
    except GraphError as exc:
        raise _relocate(exc, paths) from None


def to_document(graph: WeightedDualGraph) -> dict:
    ids = [v.id for v in graph.vertices]
    doc = {
        "vertices": [{"id": v.id, "self": v.self_int, "genus": v.genus} for v in graph.vertices],
        "edges": [[ids[i], ids[j]] for i, j in graph.edges],
        "arrows": [{"at": ids[i], "weight": w} for i, w in graph.arrows],
    }
    if graph.name is not None:
        doc["name"] = graph.name
    return doc


def dumps(doc) -> str:
    """Canonical serialization shared by graph files and reports."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize(graph: WeightedDualGraph) -> str:
    return dumps(to_document(graph))


def load(path) -> WeightedDualGraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise GraphError("E_SYNTAX", f"not UTF-8: {exc.reason}", f"byte {exc.start}") from None
    return parse(text)


def fixture_names() -> list[str]:
    root = resources.files("ntc") / "fixtures"
    return sorted(p.name[: -len(SUFFIX)] for p in root.iterdir() if p.name.endswith(SUFFIX))


def fixture_text(name: str) -> str:
    return (resources.files("ntc") / "fixtures" / f"{name}{SUFFIX}").read_text(encoding="utf-8")


def load_fixture(name: str) -> WeightedDualGraph:
    return parse(fixture_text(name))
