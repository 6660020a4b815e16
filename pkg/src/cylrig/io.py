"""JSON graph documents.

    {"group": "C2",
     "vertices": ["1", "2", ...],
     "edges": [["1", "2"], ...],
     "action": {"c2p": {"1": "4", ...}}}

Only the group's generators appear under "action"; the other elements are derived.
"""
from __future__ import annotations

import json
from importlib import resources

from .graph import GraphError, SymmetricGraph, make_graph, natural_key, sort_edges, validate
from .groups import GROUPS, get_group


class DocumentError(ValueError):
    """Schema violation or failed validation."""


def _load(data):
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            return json.loads(data)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"malformed JSON: {exc}") from None
    return data


def _ids(xs, what):
    if not isinstance(xs, list):
        raise DocumentError(f"{what} must be a list")
    for x in xs:
        if not isinstance(x, (str, int)) or isinstance(x, bool):
            raise DocumentError(f"{what} entries must be strings, got {x!r}")
    return [str(x) for x in xs]


def parse_document(data) -> SymmetricGraph:
    """Parse bytes, str or an already-decoded dict into a validated graph."""
    doc = _load(data)
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("group", "vertices", "edges"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    group = doc["group"]
    if group not in GROUPS:
        raise DocumentError(f"unknown group {group!r}; expected one of {sorted(GROUPS)}")
    spec = get_group(group)
    verts = _ids(doc["vertices"], "vertices")
    edges = []
    if not isinstance(doc["edges"], list):
        raise DocumentError("edges must be a list")
    for e in doc["edges"]:
        if not isinstance(e, list) or len(e) != 2:
            raise DocumentError(f"edge {e!r} is not a pair")
        edges.append(tuple(_ids(e, "edge endpoints")))
    action = doc.get("action", {})
    if not isinstance(action, dict):
        raise DocumentError("action must be an object")
    for gen in spec.generators:
        if gen not in action:
            raise DocumentError(f"group {group} needs generator {gen!r} in action")
    for gen, perm in action.items():
        if gen not in spec.generators:
            raise DocumentError(f"{gen!r} is not a generator of {group}; use {list(spec.generators)}")
        if not isinstance(perm, dict):
            raise DocumentError(f"action[{gen!r}] must be an object")
    try:
        g = make_graph(group, verts, edges, action)
    except GraphError as exc:
        raise DocumentError(str(exc)) from None
    rep = validate(g)
    if not rep.ok:
        raise DocumentError("invalid graph: " + "; ".join(rep.violations))
    return g


def to_document(graph: SymmetricGraph) -> dict:
    spec = graph.spec
    return {
        "group": spec.name,
        "vertices": sorted(graph.vertices, key=natural_key),
        "edges": [list(e) for e in sort_edges(graph.edges)],
        "action": {gen: {v: graph.action[gen][v] for v in sorted(graph.vertices, key=natural_key)}
                   for gen in spec.generators},
    }


def serialize(graph: SymmetricGraph) -> str:
    return json.dumps(to_document(graph), indent=1)


def read_graph(path) -> SymmetricGraph:
    with open(path, "rb") as fh:
        return parse_document(fh.read())


def bundled(name) -> bytes:
    """Raw bytes of a bundled fixture, e.g. bundled("Ci_F1.json")."""
    return resources.files("cylrig").joinpath("data", name).read_bytes()


def bundled_names():
    return sorted(p.name for p in resources.files("cylrig").joinpath("data").iterdir()
                  if p.name.endswith(".json"))
