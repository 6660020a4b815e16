"""Two-spanning-tree colourings of Gamma-tight graphs.

A (2,2)-tight graph splits into two edge-disjoint spanning trees. Under a half-turn the
two classes can be chosen invariant; under an inversion or a mirror the involution can be
made to swap them. `decompose` pushes the stored colourings of the base graphs through a
certificate, re-solving only the edges a step touches, and falls back to a global search
when that local repair fails.
"""
from __future__ import annotations

import logging

from . import catalog
from .construction import Certificate, apply_step, replay
from .graph import SymmetricGraph, edge, equivariant_isomorphisms, natural_key

log = logging.getLogger(__name__)

RED, BLUE = "red", "blue"
_OTHER = {RED: BLUE, BLUE: RED}


class DecompositionError(RuntimeError):
    pass


def _kind(graph):
    fam = graph.spec.name
    if fam == "C2":
        return "invariant"
    if fam in ("Ci", "Cs_axial", "Cs_horizontal"):
        return "swap"
    if fam == "trivial":
        return "plain"
    return None


class _DSU:
    def __init__(self, verts):
        self.p = {v: v for v in verts}

    def find(self, v):
        while self.p[v] != v:
            self.p[v] = self.p[self.p[v]]
            v = self.p[v]
        return v

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        self.p[a] = b
        return True


def is_spanning_tree(vertices, edges) -> bool:
    vertices = list(vertices)
    if len(edges) != len(vertices) - 1:
        return False
    d = _DSU(vertices)
    for e in edges:
        a, b = tuple(e)
        if a not in d.p or b not in d.p or not d.union(a, b):
            return False
    return True


def verify_decomposition(graph: SymmetricGraph, coloring) -> bool:
    kind = _kind(graph)
    if kind is None:
        return False
    col = {edge(*e) if not isinstance(e, frozenset) else e: c for e, c in dict(coloring).items()}
    if set(col) != graph.edge_set or not set(col.values()) <= {RED, BLUE}:
        return False
    red = [e for e, c in col.items() if c == RED]
    blue = [e for e, c in col.items() if c == BLUE]
    if not (is_spanning_tree(graph.vertices, red) and is_spanning_tree(graph.vertices, blue)):
        return False
    if kind == "plain":
        return True
    for el in graph.spec.nonidentity():
        for e, c in col.items():
            want = c if kind == "invariant" else _OTHER[c]
            if col[graph.edge_image(e, el.label)] != want:
                return False
    return True


# ---------------------------------------------------------------------------------
# search

def _edge_orbits(graph):
    """Edge orbits as tuples (e, g e) or (e,), in a stable order."""
    g = graph.involution if _kind(graph) != "plain" else None
    seen, out = set(), []
    for e in sorted(graph.edges, key=lambda e: sorted(e, key=natural_key)):
        if e in seen:
            continue
        ge = edge(*(g[x] for x in e)) if g else e
        orb = (e,) if ge == e else (e, ge)
        seen.update(orb)
        out.append(orb)
    return out


def _options(orb, kind):
    """Possible (red edges, blue edges) splits of one orbit."""
    if kind == "swap":
        if len(orb) == 1:
            return []
        return [((orb[0],), (orb[1],)), ((orb[1],), (orb[0],))]
    return [(orb, ()), ((), orb)]


def _search(graph, hints=None, frozen=(), limit=200_000):
    """Backtracking over edge orbits. `hints` orders the choices, orbits whose edges are all
    in `frozen` only take the hinted colour. Returns a colouring or None."""
    kind = _kind(graph)
    hints = hints or {}
    frozen = set(frozen)
    orbits = _edge_orbits(graph)
    n = len(graph.vertices)
    verts = list(graph.vertices)

    plans = []
    for orb in orbits:
        opts = _options(orb, kind)
        if not opts:
            return None
        hinted = [o for o in opts if all(hints.get(e) == RED for e in o[0])
                  and all(hints.get(e) == BLUE for e in o[1])]
        if all(e in frozen for e in orb) and hinted:
            opts = hinted[:1]
        else:
            opts = hinted[:1] + [o for o in opts if o not in hinted[:1]]
        plans.append((orb, opts))
    # decided orbits first, then the rest in BFS-ish order
    plans.sort(key=lambda p: len(p[1]))

    budget = [limit]

    def connected_possible(fixed_other, undecided):
        # colour class can still become spanning: own edges plus undecided edges connect V
        d = _DSU(verts)
        comps = n
        for e in fixed_other:
            a, b = tuple(e)
            comps -= d.union(a, b)
        for e in undecided:
            a, b = tuple(e)
            comps -= d.union(a, b)
        return comps == 1

    red, blue = [], []

    def rec(i, dred, dblue, undecided):
        budget[0] -= 1
        if budget[0] < 0:
            raise TimeoutError
        if len(red) > n - 1 or len(blue) > n - 1:
            return False
        if i == len(plans):
            return True
        if i % 4 == 0:
            if not connected_possible(red, undecided) or not connected_possible(blue, undecided):
                return False
        orb, opts = plans[i]
        rest = undecided - set(orb)
        for r_e, b_e in opts:
            ok = True
            nr, nb = dict(dred.p), dict(dblue.p)
            for e in r_e:
                a, b = tuple(e)
                if not dred.union(a, b):
                    ok = False
            for e in b_e:
                a, b = tuple(e)
                if not dblue.union(a, b):
                    ok = False
            if ok:
                red.extend(r_e)
                blue.extend(b_e)
                if rec(i + 1, dred, dblue, rest):
                    return True
                del red[len(red) - len(r_e):]
                del blue[len(blue) - len(b_e):]
            dred.p, dblue.p = nr, nb
        return False

    try:
        found = rec(0, _DSU(verts), _DSU(verts), set(graph.edges))
    except TimeoutError:
        return None
    if not found:
        return None
    col = {e: RED for e in red}
    col.update({e: BLUE for e in blue})
    return col


def _swap_intersection(graph):
    """Swap-type colouring by matroid intersection: a spanning tree meeting every edge
    orbit exactly once (graphic matroid against the orbit partition matroid)."""
    orbits = _edge_orbits(graph)
    if any(len(o) != 2 for o in orbits):
        return None
    orbit_of = {e: i for i, o in enumerate(orbits) for e in o}
    ground = [e for o in orbits for e in o]
    verts = list(graph.vertices)
    chosen = set()

    def forest_ok(es):
        d = _DSU(verts)
        return all(d.union(*tuple(e)) for e in es)

    while True:
        used = {orbit_of[e] for e in chosen}
        outside = [e for e in ground if e not in chosen]
        x1 = {e for e in outside if forest_ok(list(chosen) + [e])}
        x2 = {e for e in outside if orbit_of[e] not in used}
        if not x1 or not x2:
            break
        # exchange graph: y in I, x outside
        edges_out = {}
        for y in chosen:
            base = [c for c in chosen if c != y]
            for x in outside:
                if x not in x1 and forest_ok(base + [x]):
                    edges_out.setdefault(y, []).append(x)  # y -> x
                if x not in x2 and orbit_of[x] not in {orbit_of[c] for c in base}:
                    edges_out.setdefault(x, []).append(y)  # x -> y
        parent = {s: None for s in x1}
        queue = list(x1)
        end = None
        for s in queue:
            if s in x2:
                end = s
                break
        while end is None and queue:
            cur = queue.pop(0)
            for nxt in edges_out.get(cur, ()):
                if nxt not in parent:
                    parent[nxt] = cur
                    if nxt in x2:
                        end = nxt
                        break
                    queue.append(nxt)
        if end is None:
            break
        node = end
        while node is not None:
            chosen.symmetric_difference_update({node})
            node = parent[node]
    if len(chosen) != len(verts) - 1:
        return None
    col = {e: RED for e in chosen}
    col.update({e: BLUE for e in ground if e not in chosen})
    return col


def two_tree_search(graph: SymmetricGraph, hints=None):
    """Global search for a symmetric two-tree colouring."""
    kind = _kind(graph)
    if kind == "swap":
        col = _search(graph, hints, limit=50_000) if hints else None
        return col or _swap_intersection(graph)
    col = _search(graph, hints, limit=200_000)
    if col is None:
        col = _search(graph, hints, limit=10 ** 8)
    return col


# ---------------------------------------------------------------------------------
# propagation

def _inherit(old: SymmetricGraph, new: SymmetricGraph, col):
    """Hints for `new`: surviving edges keep their colour, rewired edges (one endpoint
    replaced by a new vertex) take the colour of the edge they replace."""
    hints, frozen = {}, set()
    removed = {}
    for e in old.edges:
        if e not in new.edge_set:
            for x in e:
                (other,) = e - {x}
                removed.setdefault(other, []).append(e)
    for e in new.edges:
        if e in col:
            hints[e] = col[e]
            frozen.add(e)
            continue
        fresh = [x for x in e if x not in old.adj]
        if len(fresh) == 1:
            (n,) = e - {fresh[0]}
            for r in removed.get(n, ()):
                if r in col:
                    hints[e] = col[r]
                    break
    return hints, frozen


def _extend(old, new, col, variant):
    hints, frozen = _inherit(old, new, col)
    out = _search(new, hints, frozen, limit=20_000)
    if out is None:
        # let the edges at the touched vertices be recoloured as well
        touched = set().union(*(e for e in new.edges if e not in frozen),
                              *(e for e in old.edges if e not in new.edge_set))
        loose = {e for e in frozen if not e & touched}
        out = _search(new, hints, loose, limit=20_000)
    if out is not None and verify_decomposition(new, out):
        return out
    log.info("two-tree fallback search after %s on %d vertices", variant, len(new.vertices))
    out = two_tree_search(new, hints)
    if out is None or not verify_decomposition(new, out):
        raise DecompositionError(f"no symmetric two-tree colouring found after {variant}")
    return out


def _color_cert(cert: Certificate):
    g = catalog.base_graph(cert.base, cert.group)
    ren = {str(k): str(v) for k, v in cert.relabel.items()}
    base_col = catalog.base_coloring(cert.base)
    col = {edge(ren[a], ren[b]): c for (a, b), c in ((tuple(e), c) for e, c in base_col.items())}
    g = g.relabel(ren)
    if not verify_decomposition(g, col):
        raise DecompositionError(f"stored colouring of {cert.base} does not verify")
    for s in cert.steps:
        new = apply_step(g, s, check=False)
        if s.variant in ("JoinTwoEdges", "VertexToTight"):
            other = s.params["other"]
            if not isinstance(other, Certificate):
                other = Certificate.from_json(other)
            _, sub_col = _color_cert(other)
            col = {**col, **sub_col}
        col = _extend(g, new, col, s.variant)
        g = new
    return g, col


def decompose(graph: SymmetricGraph, certificate: Certificate | None = None):
    """Red/blue two-tree colouring of a Gamma-tight graph, as {edge: colour}."""
    if _kind(graph) in (None,):
        raise ValueError(f"no two-tree decomposition defined for group {graph.spec.name}")
    if certificate is None:
        from .construction import certify
        certificate = certify(graph)
    built, col = _color_cert(certificate)
    if built != graph:
        iso = next(equivariant_isomorphisms(built, graph, first_only=True), None)
        if iso is None:
            raise DecompositionError("certificate does not replay to the given graph")
        col = {edge(iso[a], iso[b]): c for (a, b), c in ((tuple(e), c) for e, c in col.items())}
    if not verify_decomposition(graph, col):
        raise DecompositionError("propagated colouring does not verify")
    return col


def coloring_to_json(coloring) -> dict:
    out = {}
    for e, c in coloring.items():
        a, b = sorted(e, key=natural_key)
        out[f"{a},{b}"] = c
    return dict(sorted(out.items(), key=lambda kv: [natural_key(x) for x in kv[0].split(",")]))


def coloring_from_json(obj) -> dict:
    return {edge(*k.split(",", 1)): v for k, v in obj.items()}
