"""Symmetrised extension moves, the inverse reductions, and construction certificates.

All moves here are for groups of order two; `g` below is the involution and v' = g(v).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from . import catalog
from .graph import (SymmetricGraph, edge, edge_tuple, equivariant_isomorphisms, k4_copies,
                    natural_key, validate)
from .groups import CERTIFIABLE, get_group
from .sparsity import PebbleGame, gamma_tight

log = logging.getLogger(__name__)

VARIANTS = ("Sym0Ext", "FixedVertex0Ext", "Sym1Ext", "VertexToK4", "VertexToC4",
            "JoinTwoEdges", "Double1Ext", "VertexToTight")


class StepError(ValueError):
    """Step parameters do not fit the graph."""


class NotTight(ValueError):
    def __init__(self, msg, verdict=None):
        super().__init__(msg)
        self.verdict = verdict


class InternalExhaustion(RuntimeError):
    """No reduction candidate validated; should not happen for a Gamma-tight input."""

    def __init__(self, msg, graph=None):
        super().__init__(msg)
        self.graph = graph


class InternalInvariantError(RuntimeError):
    pass


@dataclass
class Step:
    variant: str
    params: dict

    def to_json(self):
        p = {}
        for k, v in self.params.items():
            p[k] = v.to_json() if isinstance(v, Certificate) else v
        return {"variant": self.variant, "params": p}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "variant" not in obj or "params" not in obj:
            raise StepError(f"malformed step record {obj!r}")
        p = dict(obj["params"])
        if "other" in p and isinstance(p["other"], list):
            p["other"] = Certificate.from_json(p["other"])
        return cls(obj["variant"], p)


@dataclass
class Certificate:
    group: str
    base: str
    relabel: dict  # catalog vertex id -> vertex id
    steps: list = field(default_factory=list)

    def to_json(self):
        head = {"variant": "Base", "params": {"group": self.group, "graph": self.base,
                                              "map": dict(self.relabel)}}
        return [head] + [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, arr):
        if not isinstance(arr, list) or not arr or not isinstance(arr[0], dict) or arr[0].get("variant") != "Base":
            raise StepError("certificate must be an array starting with a Base record")
        p = arr[0].get("params", {})
        try:
            return cls(p["group"], p["graph"], dict(p["map"]), [Step.from_json(s) for s in arr[1:]])
        except KeyError as exc:
            raise StepError(f"Base record lacks {exc}") from None

    def size(self):
        n = len(self.steps)
        for s in self.steps:
            o = s.params.get("other")
            if isinstance(o, Certificate):
                n += o.size()
        return n


# ---------------------------------------------------------------------------------
# forward moves

def _order_two(graph, allowed=None):
    spec = get_group(graph.group)
    if spec.order != 2:
        raise StepError(f"construction moves need a group of order two, not {graph.group}")
    if allowed and not any(graph.group.startswith(a) for a in allowed):
        raise StepError(f"move not available for group {graph.group}")
    return spec.nonidentity()[0].label


def _fresh(graph, names):
    names = list(names)
    if len(set(names)) != len(names):
        raise StepError(f"new vertex names {names} repeat")
    clash = [n for n in names if n in graph.adj]
    if clash:
        raise StepError(f"new vertex name(s) {clash} already used")
    for n in names:
        if not isinstance(n, str):
            raise StepError(f"vertex names must be strings, got {n!r}")


def _need(graph, *vs):
    for v in vs:
        if v not in graph.adj:
            raise StepError(f"unknown vertex {v!r}")


def _build(graph, label, verts, edges, perm):
    eset = set()
    for e in edges:
        if len(e) != 2:
            raise StepError("move would create a loop")
        if e in eset:
            raise StepError(f"move would create a parallel edge {list(edge_tuple(e))}")
        eset.add(e)
    return SymmetricGraph(graph.group, tuple(verts), tuple(edges), {label: perm})


def _neighbors_sorted(graph, v):
    return sorted(graph.adj[v], key=natural_key)


def _sym0(graph, p):
    lb = _order_two(graph)
    g = dict(graph.involution)
    v, v2 = p["new"]
    a, b = p["neighbors"]
    _fresh(graph, (v, v2))
    _need(graph, a, b)
    if a == b:
        raise StepError("the two neighbours must differ")
    g[v], g[v2] = v2, v
    edges = list(graph.edges) + [edge(v, a), edge(v, b), edge(v2, g[a]), edge(v2, g[b])]
    return _build(graph, lb, list(graph.vertices) + [v, v2], edges, g)


def _fixed0(graph, p):
    lb = _order_two(graph, ("Cs",))
    g = dict(graph.involution)
    v = p["new"]
    x, x2 = p["neighbors"]
    _fresh(graph, (v,))
    _need(graph, x, x2)
    if g[x] != x2 or x == x2:
        raise StepError("neighbours of a fixed new vertex must be a swapped pair")
    g[v] = v
    return _build(graph, lb, list(graph.vertices) + [v], list(graph.edges) + [edge(v, x), edge(v, x2)], g)


def _sym1(graph, p):
    lb = _order_two(graph)
    g = dict(graph.involution)
    v, v2 = p["new"]
    x, y = p["edge"]
    z = p["third"]
    _fresh(graph, (v, v2))
    _need(graph, x, y, z)
    e = edge(x, y)
    if e not in graph.edge_set:
        raise StepError(f"{x}{y} is not an edge")
    ge = edge(g[x], g[y])
    if ge == e:
        raise StepError("the removed edge orbit must have size two")
    if z in (x, y):
        raise StepError("third neighbour must differ from the edge endpoints")
    g[v], g[v2] = v2, v
    edges = [f for f in graph.edges if f not in (e, ge)]
    edges += [edge(v, x), edge(v, y), edge(v, z), edge(v2, g[x]), edge(v2, g[y]), edge(v2, g[z])]
    return _build(graph, lb, list(graph.vertices) + [v, v2], edges, g)


def _double1(graph, p):
    lb = _order_two(graph, ("C2",))
    if graph.group != "C2":
        raise StepError("double 1-extension is a C2 move")
    g = dict(graph.involution)
    v, v2 = p["new"]
    x, x2 = p["edge"]
    y = p.get("third", x2)
    _fresh(graph, (v, v2))
    _need(graph, x, x2, y)
    e = edge(x, x2)
    if e not in graph.edge_set or g[x] != x2 or x == x2:
        raise StepError("double 1-extension needs an edge fixed by the half-turn")
    if y == x:
        raise StepError("third neighbour must differ from x")
    g[v], g[v2] = v2, v
    edges = [f for f in graph.edges if f != e]
    new = [edge(v, x), edge(v, y), edge(v2, x2), edge(v2, g[y]), edge(v, v2)]
    edges += list(dict.fromkeys(new))
    return _build(graph, lb, list(graph.vertices) + [v, v2], edges, g)


def _split(graph, w, new_pairs, target_of, keep_edges_to_partner=True):
    """Shared bookkeeping for vertex splits of a non-fixed vertex w.

    target_of(n) gives which of the new copies on w's side receives the edge to neighbour n.
    """
    g = graph.involution
    w2 = g[w]
    out = []
    for n in _neighbors_sorted(graph, w):
        t = target_of(n)
        if n == w2:
            out.append(edge(t, new_pairs[t]))
        else:
            out.append(edge(t, n))
            out.append(edge(new_pairs[t], g[n]))
    return out


def _vk4(graph, p):
    lb = _order_two(graph)
    g = dict(graph.involution)
    w = p["vertex"]
    _need(graph, w)
    w2 = g[w]
    if w2 == w:
        raise StepError("vertex-to-K4 needs a vertex in a free orbit")
    pairs = [tuple(x) for x in p["new"]]
    if len(pairs) != 3:
        raise StepError("vertex-to-K4 adds three vertex pairs")
    names = [n for pr in pairs for n in pr]
    _fresh(graph, names)
    assign = dict(p["assign"])
    if set(assign) != graph.adj[w]:
        raise StepError("assignment must cover exactly the neighbours of the split vertex")
    side = {w: w2}
    for a, a2 in pairs:
        side[a] = a2
    for n, t in assign.items():
        if t not in side:
            raise StepError(f"neighbour {n} assigned to {t}, not a vertex of the new K4")
    for a, a2 in pairs:
        g[a], g[a2] = a2, a
    full = dict(side)
    full.update({b: a for a, b in side.items()})
    new_edges = _split(graph, w, full, lambda n: assign[n])
    keep = [e for e in graph.edges if w not in e and w2 not in e]
    quad = [w] + [a for a, _ in pairs]
    quad2 = [w2] + [a2 for _, a2 in pairs]
    k4 = [edge(a, b) for a, b in itertools.combinations(quad, 2)]
    k4 += [edge(a, b) for a, b in itertools.combinations(quad2, 2)]
    return _build(graph, lb, list(graph.vertices) + names, keep + new_edges + k4, g)


def _vc4(graph, p):
    lb = _order_two(graph)
    g = dict(graph.involution)
    w = p["vertex"]
    _need(graph, w)
    v1, v2 = p["shared"]
    moved = set(p.get("moved", []))
    nb = graph.adj[w]
    if v1 == v2 or v1 not in nb or v2 not in nb:
        raise StepError("shared vertices must be two distinct neighbours of the split vertex")
    if not moved <= nb - {v1, v2}:
        raise StepError("moved neighbours must be other neighbours of the split vertex")
    if g[w] == w and len(p["new"]) == 1:
        # mirror variant: the new vertex is fixed too
        if not graph.group.startswith("Cs"):
            raise StepError("a fixed new vertex is only possible under mirror symmetry")
        (u,) = p["new"]
        _fresh(graph, (u,))
        if g[v1] != v2:
            raise StepError("mirror vertex-to-C4 needs the shared pair to be swapped by the mirror")
        if any(g[n] not in moved for n in moved):
            raise StepError("moved set must be mirror-symmetric")
        g[u] = u
        edges = [e for e in graph.edges if w not in e]
        for n in _neighbors_sorted(graph, w):
            edges.append(edge(u if n in moved else w, n))
        edges += [edge(u, v1), edge(u, v2)]
        return _build(graph, lb, list(graph.vertices) + [u], edges, g)
    if g[w] == w:
        # fixed vertex split into itself and a new free orbit u, u'
        u, u2 = p["new"]
        _fresh(graph, (u, u2))
        if g[v1] == v2:
            # w would keep degree two and G - w would be a tight set without fixed elements
            raise StepError("a fixed split vertex cannot share an orbit pair with the new vertices")
        gm = {g[n] for n in moved}
        if moved & gm or (moved | gm) & {v1, v2, g[v1], g[v2]}:
            raise StepError("moved neighbours clash with their images or the shared vertices")
        g[u], g[u2] = u2, u
        edges = [e for e in graph.edges if w not in e]
        for n in _neighbors_sorted(graph, w):
            if n in moved:
                edges.append(edge(u, n))
            elif n in gm:
                edges.append(edge(u2, n))
            else:
                edges.append(edge(w, n))
        edges += [edge(u, v1), edge(u, v2), edge(u2, g[v1]), edge(u2, g[v2])]
        return _build(graph, lb, list(graph.vertices) + [u, u2], edges, g)
    u, u2 = p["new"]
    _fresh(graph, (u, u2))
    w2 = g[w]
    if w2 in (v1, v2):
        raise StepError("shared vertices cannot include the image of the split vertex")
    g[u], g[u2] = u2, u
    full = {w: w2, w2: w, u: u2, u2: u}
    new_edges = _split(graph, w, full, lambda n: u if n in moved else w)
    new_edges += [edge(u, v1), edge(u, v2), edge(u2, g[v1]), edge(u2, g[v2])]
    keep = [e for e in graph.edges if w not in e and w2 not in e]
    return _build(graph, lb, list(graph.vertices) + [u, u2], keep + new_edges, g)


def _join(graph, p):
    lb = _order_two(graph, ("Ci",))
    other = p["other"]
    if not isinstance(other, Certificate):
        other = Certificate.from_json(other)
    h = replay(other)
    if h.group != graph.group:
        raise StepError("joined graphs must share the group")
    x, y = p["edge"]
    _need(graph, x)
    if y not in h.adj:
        raise StepError(f"{y} is not a vertex of the joined graph")
    clash = set(h.vertices) & set(graph.vertices)
    if clash:
        raise StepError(f"joined graphs share vertex names {sorted(clash, key=natural_key)[:5]}")
    g = dict(graph.involution)
    g.update(h.involution)
    edges = list(graph.edges) + list(h.edges) + [edge(x, y), edge(g[x], g[y])]
    return _build(graph, lb, list(graph.vertices) + list(h.vertices), edges, g)


def _vtight(graph, p):
    lb = _order_two(graph, ("Cs",))
    w = p["vertex"]
    _need(graph, w)
    g = dict(graph.involution)
    if g[w] != w:
        raise StepError("vertex-to-tight replaces a fixed vertex")
    other = p["other"]
    if not isinstance(other, Certificate):
        other = Certificate.from_json(other)
    h = replay(other)
    if h.group != graph.group:
        raise StepError("substituted graph must carry the same mirror")
    rest = set(graph.vertices) - {w}
    clash = rest & set(h.vertices)
    if clash:
        raise StepError(f"substituted graph reuses vertex names {sorted(clash, key=natural_key)[:5]}")
    attach = dict(p["attach"])
    if set(attach) != graph.adj[w]:
        raise StepError("attachment must cover exactly the neighbours of the replaced vertex")
    gh = h.involution
    for n, t in attach.items():
        if t not in gh:
            raise StepError(f"attachment target {t} is not in the substituted graph")
        if attach.get(g[n]) != gh[t]:
            raise StepError("attachment is not mirror-symmetric")
    del g[w]
    g.update(gh)
    edges = [e for e in graph.edges if w not in e] + list(h.edges)
    edges += [edge(t, n) for n, t in sorted(attach.items(), key=lambda kv: natural_key(kv[0]))]
    verts = [v for v in graph.vertices if v != w] + list(h.vertices)
    return _build(graph, lb, verts, edges, g)


_APPLY = {"Sym0Ext": _sym0, "FixedVertex0Ext": _fixed0, "Sym1Ext": _sym1, "Double1Ext": _double1,
          "VertexToK4": _vk4, "VertexToC4": _vc4, "JoinTwoEdges": _join, "VertexToTight": _vtight}


def apply_step(graph: SymmetricGraph, step: Step, check=True) -> SymmetricGraph:
    fn = _APPLY.get(step.variant)
    if fn is None:
        raise StepError(f"unknown step variant {step.variant!r}")
    try:
        out = fn(graph, step.params)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, StepError):
            raise
        raise StepError(f"bad parameters for {step.variant}: {exc!r}") from None
    rep = validate(out)
    if not rep.ok:
        raise StepError(f"{step.variant} produced an invalid graph: {rep.violations[0]}")
    if check and gamma_tight(graph).ok and not gamma_tight(out).ok:
        raise InternalInvariantError(f"{step.variant} broke Gamma-tightness: {gamma_tight(out).reasons}")
    return out


def replay(cert: Certificate, check=True) -> SymmetricGraph:
    if cert.base not in catalog.ENTRIES:
        raise StepError(f"unknown base graph {cert.base!r}")
    try:
        g = catalog.base_graph(cert.base, cert.group)
    except KeyError as exc:
        raise StepError(str(exc)) from None
    if set(cert.relabel) != set(g.vertices) or len(set(cert.relabel.values())) != len(g.vertices):
        raise StepError("base relabelling must be a bijection on the catalog vertices")
    g = g.relabel({str(k): str(v) for k, v in cert.relabel.items()})
    for s in cert.steps:
        g = apply_step(g, s, check=check)
    return g


def verify_certificate(graph: SymmetricGraph, cert: Certificate) -> bool:
    try:
        out = replay(cert)
    except (StepError, InternalInvariantError):
        return False
    if out.group != graph.group:
        return False
    if out == graph:
        return True
    return next(equivariant_isomorphisms(out, graph, first_only=True), None) is not None


# ---------------------------------------------------------------------------------
# reductions

@dataclass
class Reduction:
    kind: str  # "base" or "step"
    graph: SymmetricGraph | None = None
    step: Step | None = None
    base: str | None = None
    relabel: dict | None = None


def _remove(graph, drop, add=()):
    drop = set(drop)
    verts = [v for v in graph.vertices if v not in drop]
    edges = [e for e in graph.edges if not (e & drop)] + list(add)
    perm = {v: graph.involution[v] for v in verts}
    lb = graph.spec.nonidentity()[0].label
    return SymmetricGraph(graph.group, tuple(verts), tuple(edges), {lb: perm})


def _with_edges(graph, drop, edges):
    drop = set(drop)
    verts = [v for v in graph.vertices if v not in drop]
    perm = {v: graph.involution[v] for v in verts}
    lb = graph.spec.nonidentity()[0].label
    return SymmetricGraph(graph.group, tuple(verts), tuple(edges), {lb: perm})


def recognize_base(graph):
    for ent in catalog.entries_for(graph.group):
        if ent.n != len(graph.vertices) or len(ent.edges) != len(graph.edges):
            continue
        b = catalog.base_graph(ent.key, graph.group)
        m = next(equivariant_isomorphisms(b, graph, first_only=True), None)
        if m is not None:
            return ent.key, m
    return None


def _vkey(graph):
    return lambda v: (graph.degree(v), natural_key(v))


def _cands_deg2(graph):
    g = graph.involution
    for v in sorted(graph.vertices, key=_vkey(graph)):
        if graph.degree(v) != 2:
            if graph.degree(v) > 2:
                break
            continue
        a, b = _neighbors_sorted(graph, v)
        if g[v] == v:
            if graph.group.startswith("Cs") and g[a] == b:
                yield _remove(graph, [v]), Step("FixedVertex0Ext", {"new": v, "neighbors": [a, b]})
            continue
        if g[v] in (a, b):
            continue
        yield _remove(graph, [v, g[v]]), Step("Sym0Ext", {"new": [v, g[v]], "neighbors": [a, b]})


def _fresh_name(used, stem="t"):
    i = 1
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def _cands_tight_sub(graph, used_names):
    """Contract a proper mirror-symmetric tight subgraph to a fixed vertex."""
    if not graph.group.startswith("Cs"):
        return
    g = graph.involution
    game = PebbleGame(graph.vertices)
    for e in graph.edges:
        game.insert(*tuple(e))
    seen = set()
    for u in sorted(graph.vertices, key=natural_key):
        if g[u] == u:
            continue
        T = game.closure(u, g[u])
        if len(T) >= len(graph.vertices) or T in seen:
            continue
        seen.add(T)
        F = set(T)
        grew = True
        while grew:
            grew = False
            for y in graph.vertices:
                if y not in F and len(graph.adj[y] & F) >= 2:
                    F |= {y, g[y]}
                    grew = True
        if len(F) >= len(graph.vertices):
            continue
        yield F
    return


def _contract_tight(graph, F, used_names):
    g = graph.involution
    f = _fresh_name(used_names | set(graph.vertices))
    attach = {}
    for y in graph.vertices:
        if y in F:
            continue
        hit = graph.adj[y] & F
        if len(hit) > 1:
            return None
        if hit:
            attach[y] = next(iter(hit))
    reduced = _remove(graph, F, [edge(f, y) for y in sorted(attach, key=natural_key)])
    verts = list(reduced.vertices) + [f]
    perm = dict(reduced.involution)
    perm[f] = f
    lb = graph.spec.nonidentity()[0].label
    reduced = SymmetricGraph(graph.group, tuple(verts), reduced.edges, {lb: perm})
    sub = graph.induced(F)
    return reduced, sub, f, attach


def _cands_node(graph):
    g = graph.involution
    for v in sorted(graph.vertices, key=_vkey(graph)):
        if graph.degree(v) != 3:
            if graph.degree(v) > 3:
                break
            continue
        if g[v] == v or g[v] in graph.adj[v]:
            continue
        nb = _neighbors_sorted(graph, v)
        for a, b in itertools.combinations(nb, 2):
            if graph.has_edge(a, b):
                continue
            e, ge = edge(a, b), edge(g[a], g[b])
            if e == ge:
                continue
            z = next(x for x in nb if x not in (a, b))
            red = _remove(graph, [v, g[v]], [e, ge])
            yield red, Step("Sym1Ext", {"new": [v, g[v]], "edge": [a, b], "third": z})


def _cands_double(graph):
    if graph.group != "C2":
        return
    g = graph.involution
    for v in sorted(graph.vertices, key=_vkey(graph)):
        if graph.degree(v) != 3:
            if graph.degree(v) > 3:
                break
            continue
        if g[v] not in graph.adj[v]:
            continue
        x, y = [n for n in _neighbors_sorted(graph, v) if n != g[v]]
        tried = set()
        for a, b in ((x, y), (y, x)):
            if g[a] == a or g[a] in (v, g[v]):
                continue
            e = edge(a, g[a])
            if e in tried or graph.has_edge(a, g[a]):
                continue
            tried.add(e)
            red = _remove(graph, [v, g[v]], [e])
            yield red, Step("Double1Ext", {"new": [v, g[v]], "edge": [a, g[a]], "third": b})


def _cands_k4(graph):
    g = graph.involution
    for X in k4_copies(graph):
        Xs = set(X)
        gX = {g[x] for x in X}
        if Xs & gX:
            continue
        w, rest = X[0], list(X[1:])
        assign, bridge, ok = {}, [], True
        for y in graph.vertices:
            if y in Xs:
                continue
            hit = graph.adj[y] & Xs
            if y in gX:
                bridge += [(x, y) for x in hit]
                continue
            if len(hit) > 1:
                ok = False
                break
            if hit:
                assign[y] = next(iter(hit))
        if not ok or len(bridge) > 1:
            continue
        block = Xs | gX
        add = [e for e in graph.edges if not (e & block)]
        for y in assign:
            add += [edge(w, y), edge(g[w], g[y])]
        if bridge:
            x, y = bridge[0]
            if g[x] != y:
                continue
            assign[g[w]] = x
            add.append(edge(w, g[w]))
        red = _with_edges(graph, block - {w, g[w]}, add)
        step = Step("VertexToK4", {"vertex": w, "new": [[a, g[a]] for a in rest],
                                   "assign": {k: assign[k] for k in sorted(assign, key=natural_key)}})
        yield red, step


def _cands_c4(graph):
    g = graph.involution
    adj = graph.adj
    for p in sorted(graph.vertices, key=_vkey(graph)):
        second = set()
        for a in adj[p]:
            second |= adj[a]
        second -= adj[p] | {p}
        for q in sorted(second, key=natural_key):
            fixed_p, fixed_q = g[p] == p, g[q] == q
            if (fixed_p and not fixed_q) or (not fixed_p and q == g[p]):
                continue
            common = sorted(adj[p] & adj[q], key=natural_key)
            for a, b in itertools.combinations(common, 2):
                if fixed_p and g[a] != b:
                    continue
                cand = _contract_pair(graph, p, q, a, b)
                if cand is not None:
                    yield cand


def _contract_pair(graph, p, q, a, b):
    """Contract p into q (and p' into q') along the 4-cycle p a q b."""
    g = graph.involution
    mirror = g[p] == p
    phi = {p: q} if mirror else {p: q, g[p]: g[q]}
    if not mirror and g[q] == q and g[p] in graph.adj[p]:
        return None
    new = set()
    for e in graph.edges:
        u, v = tuple(e)
        f = edge(phi.get(u, u), phi.get(v, v))
        if len(f) < 2:
            return None
        new.add(f)
    expect = len(graph.edges) - (2 if mirror else 4)
    if len(new) != expect:
        return None
    drop = [p] if mirror else [p, g[p]]
    red = _with_edges(graph, drop, sorted(new, key=lambda e: [natural_key(x) for x in edge_tuple(e)]))
    moved = []
    for n in _neighbors_sorted(graph, p):
        if n in (a, b):
            continue
        moved.append(phi.get(n, n))
    if not mirror and g[q] == q and ({g[n] for n in moved} & set(moved)):
        return None
    new_names = [p] if mirror else [p, g[p]]
    step = Step("VertexToC4", {"vertex": q, "new": new_names, "shared": [a, b],
                               "moved": sorted(moved, key=natural_key)})
    return red, step


def _components(verts, adj):
    seen, comps = set(), []
    for v in verts:
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def _cands_separation(graph):
    if graph.group != "Ci":
        return
    g = graph.involution
    done = set()
    for e in sorted(graph.edges, key=lambda e: [natural_key(x) for x in edge_tuple(e)]):
        ge = edge(*(g[x] for x in e))
        if e in done or ge == e:
            continue
        done |= {e, ge}
        adj = {v: set(s) for v, s in graph.adj.items()}
        for f in (e, ge):
            u, v = tuple(f)
            adj[u].discard(v)
            adj[v].discard(u)
        comps = _components(graph.vertices, adj)
        if len(comps) != 2:
            continue
        c1, c2 = comps
        if any(g[v] not in c1 for v in c1):
            continue
        x, y = edge_tuple(e)
        if x not in c1:
            x, y = y, x
        if x not in c1 or y not in c2:
            continue
        yield c1, c2, x, y


def _accept(graph, reduced, step, check_inverse=True):
    if not gamma_tight(reduced).ok:
        return False
    if check_inverse:
        back = apply_step(reduced, step, check=False)
        if back != graph:
            raise InternalInvariantError(f"{step.variant} inverse does not rebuild the graph")
    return True


def reduce_once(graph: SymmetricGraph, _names=None, check_inverse=True) -> Reduction:
    if graph.group not in CERTIFIABLE:
        raise StepError(f"no recursive characterization for {graph.group}; "
                        "necessary conditions only; see characters")
    gt = gamma_tight(graph)
    if not gt.ok:
        raise NotTight("graph is not Gamma-tight: " + "; ".join(gt.reasons), gt)
    used = set(_names or ()) | set(graph.vertices)
    hit = recognize_base(graph)
    if hit is not None:
        return Reduction("base", base=hit[0], relabel=hit[1])
    for red, step in _cands_deg2(graph):
        if _accept(graph, red, step, check_inverse):
            return Reduction("step", red, step)
    for F in _cands_tight_sub(graph, used):
        out = _contract_tight(graph, F, used)
        if out is None:
            continue
        red, sub, f, attach = out
        if not gamma_tight(red).ok or not gamma_tight(sub).ok:
            continue
        sub_cert = certify(sub, _names=used | {f}, check_inverse=check_inverse)
        step = Step("VertexToTight", {"vertex": f, "other": sub_cert,
                                      "attach": {k: attach[k] for k in sorted(attach, key=natural_key)}})
        if check_inverse and apply_step(red, step, check=False) != graph:
            raise InternalInvariantError("VertexToTight inverse does not rebuild the graph")
        return Reduction("step", red, step)
    for gen in (_cands_node, _cands_double, _cands_k4, _cands_c4):
        for red, step in gen(graph):
            if _accept(graph, red, step, check_inverse):
                return Reduction("step", red, step)
    for c1, c2, x, y in _cands_separation(graph):
        left, right = graph.induced(c1), graph.induced(c2)
        if not gamma_tight(left).ok or not gamma_tight(right).ok:
            continue
        sub_cert = certify(right, _names=used, check_inverse=check_inverse)
        step = Step("JoinTwoEdges", {"other": sub_cert, "edge": [x, y]})
        if check_inverse and apply_step(left, step, check=False) != graph:
            raise InternalInvariantError("JoinTwoEdges inverse does not rebuild the graph")
        return Reduction("step", left, step)
    raise InternalExhaustion(f"no reduction found for a Gamma-tight {graph.group} graph on "
                             f"{len(graph.vertices)} vertices", graph)


def certify(graph: SymmetricGraph, _names=None, check_inverse=True) -> Certificate:
    """Reduce to a catalog base graph; the certificate rebuilds `graph` exactly (same labels)."""
    if graph.group not in CERTIFIABLE:
        raise StepError(f"no recursive characterization for {graph.group}; "
                        "necessary conditions only; see characters")
    steps = []
    cur = graph
    names = set(_names or ()) | set(graph.vertices)
    for _ in range(len(graph.vertices) + 1):
        r = reduce_once(cur, names, check_inverse)
        if r.kind == "base":
            return Certificate(graph.group, r.base, {k: r.relabel[k] for k in sorted(r.relabel, key=natural_key)},
                               steps[::-1])
        steps.append(r.step)
        cur = r.graph
        names |= set(cur.vertices)
    raise InternalExhaustion("reduction did not terminate within |V| rounds", graph)
