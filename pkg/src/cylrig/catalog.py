"""Base graphs of the recursive constructions, with their two-tree colourings.

Vertex ids are the drawing labels without their prefix (n13 -> "3").
Colourings: (blue edges, red edges). Everything is re-checked by `verify_catalog`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import SymmetricGraph, make_graph, edge, checked


def _pairs(s):
    return [tuple(x) for x in s.split()]


def _inv(s):
    out = {}
    for a, b in _pairs(s):
        out[a], out[b] = b, a
    return out


@dataclass(frozen=True)
class BaseEntry:
    key: str  # e.g. "C2/W5"
    family: str  # Ci, C2 or Cs
    name: str
    n: int
    edges: tuple
    involution: dict
    blue: tuple
    red: tuple


_RAW = [
    # family, name, n, edges, involution swaps, blue, red
    ("Ci", "F1", 6, "12 13 14 23 24 35 36 45 46 56", "16 25 34",
     "12 14 23 35 46", "13 24 36 45 56"),
    ("Ci", "F2", 8, "12 13 14 23 24 35 34 46 56 57 58 67 68 78", "18 27 36 45",
     "12 13 24 35 56 58 67", "14 23 34 46 57 68 78"),
    ("C2", "K4", 4, "12 13 14 23 24 34", "14 23",
     "12 34 23", "13 24 14"),
    ("C2", "W5", 5, "12 13 24 34 15 25 35 45", "14 23",
     "12 34 25 35", "13 24 15 45"),
    ("C2", "Wd42", 7, "12 13 23 45 46 56 17 27 37 47 57 67", "16 25 34",
     "13 23 45 46 27 57", "12 56 17 37 47 67"),
    ("C2", "F2", 8, "12 13 14 23 24 36 34 45 56 57 58 67 68 78", "18 27 36 45",
     "12 13 24 36 57 68 78", "14 23 34 45 56 58 67"),
    ("Cs", "F1", 6, "12 13 14 15 23 26 36 45 46 56", "16 24 35",
     "12 14 15 23 56", "13 26 36 45 46"),
    ("Cs", "F2", 8, "12 13 24 36 57 68 78 14 23 34 45 56 58 67", "17 28 35 46",
     "12 13 24 36 56 58 67", "14 57 78 23 34 45 68"),
    ("Cs", "Wd42", 7, "13 23 45 46 27 57 12 56 17 37 47 67", "16 24 35",
     "13 45 27 57 12 67", "23 46 56 17 37 47"),
    ("Cs", "K34", 7, "13 14 15 23 24 25 36 46 56 37 47 57", "16 27",
     "13 14 24 25 56 37", "15 23 46 47 57 36"),
    ("Cs", "F1fix2", 6, "12 13 14 23 24 35 46 45 36 56", "15 26",
     "12 13 24 45 36", "14 23 35 46 56"),
    ("Cs", "W5", 5, "12 13 15 23 24 35 34 45", "14 25",
     "13 23 24 45", "12 15 35 34"),
]

ENTRIES = {}
for fam, name, n, es, inv, blue, red in _RAW:
    key = f"{fam}/{name}"
    ENTRIES[key] = BaseEntry(key, fam, name, n, tuple(_pairs(es)), _inv(inv),
                             tuple(_pairs(blue)), tuple(_pairs(red)))

_GEN = {"Ci": "inv", "C2": "c2p", "Cs_axial": "sigma", "Cs_horizontal": "sigma_p"}


def family_of(group):
    return "Cs" if group.startswith("Cs") else group


def entries_for(group):
    fam = family_of(group)
    return [e for e in ENTRIES.values() if e.family == fam]


def base_graph(key, group=None) -> SymmetricGraph:
    """Catalog graph as a SymmetricGraph; Cs entries need the concrete mirror group."""
    e = ENTRIES[key]
    if group is None:
        group = "Cs_axial" if e.family == "Cs" else e.family
    if family_of(group) != e.family:
        raise KeyError(f"{key} is not a base graph for {group}")
    verts = [str(i) for i in range(1, e.n + 1)]
    perm = {v: e.involution.get(v, v) for v in verts}
    return make_graph(group, verts, e.edges, {_GEN[group]: perm})


def base_coloring(key) -> dict:
    e = ENTRIES[key]
    col = {edge(*p): "blue" for p in e.blue}
    col.update({edge(*p): "red" for p in e.red})
    return col


@lru_cache(maxsize=None)
def verify_catalog():
    """Check each entry: valid action, Gamma-tight, stored colouring valid. Returns {key: report}."""
    from .sparsity import gamma_tight
    from .trees import verify_decomposition
    out = {}
    for key, e in ENTRIES.items():
        g = checked(base_graph(key))
        gt = gamma_tight(g)
        col = base_coloring(key)
        out[key] = {
            "vertices": len(g.vertices), "edges": len(g.edges),
            "gamma_tight": gt.ok,
            "coloring_ok": set(col) == g.edge_set and verify_decomposition(g, col),
        }
        if not gt.ok:
            raise AssertionError(f"catalog entry {key} is not Gamma-tight: {gt.reasons}")
    return out
