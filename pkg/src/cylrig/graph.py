"""Finite simple graphs with a group action by automorphisms."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

from .groups import get_group


class GraphError(ValueError):
    """Malformed graph or action."""


def natural_key(v):
    parts = re.split(r"(\d+)", str(v))
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


def edge(u, v) -> frozenset:
    return frozenset((u, v))


def edge_tuple(e) -> tuple:
    return tuple(sorted(e, key=natural_key))


def sort_edges(edges):
    return sorted((edge_tuple(e) for e in edges), key=lambda t: (natural_key(t[0]), natural_key(t[1])))


@dataclass(frozen=True, eq=False)
class SymmetricGraph:
    """A graph plus a permutation of the vertices for every non-identity group element.

    `edges` keeps input order (rigidity-matrix rows follow it).
    """

    group: str
    vertices: tuple
    edges: tuple
    action: dict = field(default_factory=dict)

    @cached_property
    def spec(self):
        return get_group(self.group)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def adj(self) -> dict:
        nb = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def degree(self, v):
        return len(self.adj[v])

    def has_edge(self, u, v):
        return edge(u, v) in self.edge_set

    def perm(self, label) -> dict:
        el = self.spec.element(label)
        if el.is_identity:
            return {v: v for v in self.vertices}
        return self.action[el.label]

    @cached_property
    def involution(self) -> dict:
        """The non-identity permutation of an order-two group."""
        non = self.spec.nonidentity()
        if len(non) != 1:
            raise GraphError(f"{self.group} is not of order two")
        return self.action[non[0].label]

    def image(self, v, label=None):
        return (self.involution if label is None else self.perm(label))[v]

    def edge_image(self, e, label=None):
        p = self.involution if label is None else self.perm(label)
        u, v = tuple(e)
        return edge(p[u], p[v])

    def __eq__(self, other):
        if not isinstance(other, SymmetricGraph):
            return NotImplemented
        return (self.group == other.group and set(self.vertices) == set(other.vertices)
                and self.edge_set == other.edge_set
                and {k: dict(v) for k, v in self.action.items()} == {k: dict(v) for k, v in other.action.items()})

    __hash__ = None

    def __repr__(self):
        return f"SymmetricGraph({self.group}, |V|={len(self.vertices)}, |E|={len(self.edges)})"

    # small structural helpers -------------------------------------------------
    def induced(self, keep) -> "SymmetricGraph":
        """Subgraph induced on an action-closed vertex set."""
        keep = set(keep)
        verts = tuple(v for v in self.vertices if v in keep)
        edges = tuple(e for e in self.edges if e <= keep)
        action = {k: {v: p[v] for v in verts} for k, p in self.action.items()}
        for p in action.values():
            if not set(p.values()) <= keep:
                raise GraphError("vertex set is not closed under the action")
        return SymmetricGraph(self.group, verts, edges, action)

    def relabel(self, mapping) -> "SymmetricGraph":
        m = lambda v: mapping.get(v, v)  # noqa: E731
        verts = tuple(m(v) for v in self.vertices)
        edges = tuple(edge(*(m(x) for x in e)) for e in self.edges)
        action = {k: {m(a): m(b) for a, b in p.items()} for k, p in self.action.items()}
        return SymmetricGraph(self.group, verts, edges, action)

    def with_group(self, group) -> "SymmetricGraph":
        """Reinterpret an order-two action under another order-two group."""
        src, dst = self.spec, get_group(group)
        if src.order != 2 or dst.order != 2:
            raise GraphError("only order-two actions can be reinterpreted")
        return SymmetricGraph(dst.name, self.vertices, self.edges,
                              {dst.nonidentity()[0].label: dict(self.involution)})


def make_graph(group, vertices, edges, generators=None) -> SymmetricGraph:
    """Build a graph from generator permutations; non-generator elements by composition.

    Edges can be any iterable of pairs. No validation beyond what is needed to build the action.
    """
    spec = get_group(group)
    vertices = tuple(str(v) for v in vertices)
    edges = tuple(edge(str(a), str(b)) if a != b else frozenset((str(a),)) for a, b in edges)
    generators = {k: {str(a): str(b) for a, b in p.items()} for k, p in (generators or {}).items()}
    missing = [g for g in spec.generators if g not in generators]
    if missing:
        raise GraphError(f"group {spec.name} needs generator(s) {missing}")
    extra = [g for g in generators if g not in spec.generators]
    if extra:
        raise GraphError(f"unexpected generator(s) {extra} for group {spec.name}")
    action = {g: dict(generators[g]) for g in spec.generators}
    # close under composition
    changed = True
    while changed:
        changed = False
        for a, b in itertools.product(list(action), repeat=2):
            c = spec.compose(a, b)
            if c == "id" or c in action:
                continue
            pa, pb = action[a], action[b]
            action[c] = {v: pa.get(pb.get(v, v), pb.get(v, v)) for v in vertices}
            changed = True
    return SymmetricGraph(spec.name, vertices, edges, action)


@dataclass
class ValidationReport:
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def validate(graph: SymmetricGraph) -> ValidationReport:
    """Collect every violation; never raises on malformed input."""
    bad = []
    try:
        spec = get_group(graph.group)
    except ValueError as exc:
        return ValidationReport(False, [str(exc)])
    verts = list(graph.vertices)
    vset = set(verts)
    if len(vset) != len(verts):
        dup = sorted({v for v in verts if verts.count(v) > 1}, key=natural_key)
        bad.append(f"repeated vertex id(s) {dup}")
    seen = set()
    for e in graph.edges:
        t = edge_tuple(e)
        if len(e) != 2:
            bad.append(f"loop at {t[0]}")
            continue
        if not e <= vset:
            bad.append(f"edge {list(t)} uses unknown vertex")
        if e in seen:
            bad.append(f"parallel edge {list(t)}")
        seen.add(e)
    labels = {el.label for el in spec.nonidentity()}
    for k in graph.action:
        if k not in labels:
            bad.append(f"action given for {k!r}, which is not an element of {spec.name}")
    perms = {}
    for el in spec.nonidentity():
        p = graph.action.get(el.label)
        if p is None:
            bad.append(f"no permutation for element {el.label}")
            continue
        if set(p) != vset or set(p.values()) != vset:
            bad.append(f"{el.label} is not a permutation of the vertex set")
            continue
        perms[el.label] = p
        for e in graph.edges:
            if len(e) == 2 and e <= vset:
                u, v = tuple(e)
                if edge(p[u], p[v]) not in seen:
                    bad.append(f"{el.label} is not an automorphism: edge {list(edge_tuple(e))} "
                               f"maps to non-edge {list(edge_tuple(edge(p[u], p[v])))}")
                    break
        if el.op.kind in ("inversion", "rotation_z"):
            fixed = sorted((v for v in verts if p[v] == v), key=natural_key)
            if fixed:
                bad.append(f"{el.label} ({el.op}) fixes vertex {fixed[0]}; no cylinder point is fixed by it")
    # homomorphism: perm(a) o perm(b) == perm(a*b)
    for a, b in itertools.product(perms, repeat=2):
        c = spec.compose(a, b)
        pa, pb = perms[a], perms[b]
        comp = {v: pa[pb[v]] for v in vset}
        target = {v: v for v in vset} if c == "id" else perms.get(c)
        if target is not None and comp != target:
            bad.append(f"action is not a homomorphism: {a}*{b} should act as {c}")
    return ValidationReport(not bad, bad)


def checked(graph: SymmetricGraph) -> SymmetricGraph:
    rep = validate(graph)
    if not rep.ok:
        raise GraphError("; ".join(rep.violations))
    return graph


def fixed_elements(graph: SymmetricGraph, element):
    """(fixed vertices, fixed edges) of one group element; edges may be fixed by swapping."""
    el = graph.spec.element(element)
    if el.is_identity:
        return set(graph.vertices), set(graph.edges)
    p = graph.action[el.label]
    fv = {v for v in graph.vertices if p[v] == v}
    fe = set()
    for e in graph.edges:
        u, v = tuple(e)
        if (p[u] == u and p[v] == v) or (p[u] == v and p[v] == u):
            fe.add(e)
    return fv, fe


def fixed_counts(graph: SymmetricGraph) -> dict:
    """{element label: (fixed vertex count, fixed edge count)}."""
    out = {}
    for el in graph.spec.elements:
        fv, fe = fixed_elements(graph, el.label)
        out[el.label] = (len(fv), len(fe))
    return out


def orbits(graph: SymmetricGraph):
    perms = list(graph.action.values())
    vorb, seen = [], set()
    for v in graph.vertices:
        if v in seen:
            continue
        o = frozenset([v] + [p[v] for p in perms])
        seen |= o
        vorb.append(o)
    eorb, seen = [], set()
    for e in graph.edges:
        if e in seen:
            continue
        imgs = [e]
        for p in perms:
            u, v = tuple(e)
            imgs.append(edge(p[u], p[v]))
        o = frozenset(imgs)
        seen |= o
        eorb.append(o)
    return vorb, eorb


# pattern search ----------------------------------------------------------------

def k4_copies(graph: SymmetricGraph):
    """All vertex sets spanning a K4, as sorted tuples."""
    adj = graph.adj
    out = []
    order = {v: i for i, v in enumerate(sorted(graph.vertices, key=natural_key))}
    for a in graph.vertices:
        higher = [w for w in adj[a] if order[w] > order[a]]
        for b, c, d in itertools.combinations(sorted(higher, key=order.get), 3):
            if c in adj[b] and d in adj[b] and d in adj[c]:
                out.append(tuple(sorted((a, b, c, d), key=order.get)))
    return sorted(out, key=lambda t: [order[x] for x in t])


def find_pattern(graph: SymmetricGraph, pattern, *args):
    """Embeddings of a small pattern, one per distinct image.

    pattern: "K4" -> list of {0,1,2,3 -> vertex};
             "K4_minus_edge_through" with (u, v) -> K4 minus the edge uv, as {u, v, a, b} maps;
             a SymmetricGraph (catalog entry) -> action-equivariant isomorphisms onto graph.
    """
    if isinstance(pattern, SymmetricGraph):
        if len(pattern.vertices) > 8:
            raise GraphError("pattern has more than 8 vertices")
        return list(equivariant_isomorphisms(pattern, graph))
    if pattern == "K4":
        return [dict(enumerate(c)) for c in k4_copies(graph)]
    if pattern == "K4_minus_edge_through":
        u, v = args
        if graph.has_edge(u, v):
            return []
        common = sorted(graph.adj[u] & graph.adj[v], key=natural_key)
        return [{"u": u, "v": v, "a": a, "b": b}
                for a, b in itertools.combinations(common, 2) if graph.has_edge(a, b)]
    raise GraphError(f"unknown pattern {pattern!r}")


def equivariant_isomorphisms(g1: SymmetricGraph, g2: SymmetricGraph, first_only=False):
    """Bijections f: V1 -> V2 with f(E1) = E2 and f(gamma v) = gamma f(v) for every element.

    Plain backtracking with degree and fixedness pruning; adequate for the sizes used here.
    """
    if g1.group != g2.group or len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return
    labels = [el.label for el in g1.spec.nonidentity()]

    def sig(g, v):
        return (g.degree(v), tuple(g.perm(lb)[v] == v for lb in labels),
                tuple(g.has_edge(v, g.perm(lb)[v]) for lb in labels))

    s1 = {v: sig(g1, v) for v in g1.vertices}
    s2 = {v: sig(g2, v) for v in g2.vertices}
    if sorted(s1.values()) != sorted(s2.values()):
        return
    # BFS order for better pruning
    order, seen = [], set()
    for root in sorted(g1.vertices, key=lambda v: (-g1.degree(v), natural_key(v))):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(g1.adj[x], key=natural_key):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    f, used = {}, set()

    def consistent(a, b):
        for x in g1.adj[a]:
            if x in f and not g2.has_edge(b, f[x]):
                return False
        return True

    def assign(a, b, trail):
        # assign a->b and the forced images of the orbit
        todo = [(a, b)]
        while todo:
            x, y = todo.pop()
            if x in f:
                if f[x] != y:
                    return False
                continue
            if y in used or s1[x] != s2[y] or not consistent(x, y):
                return False
            f[x] = y
            used.add(y)
            trail.append(x)
            for lb in labels:
                todo.append((g1.perm(lb)[x], g2.perm(lb)[y]))
        return True

    def undo(trail):
        for x in trail:
            used.discard(f.pop(x))

    def rec(i):
        while i < len(order) and order[i] in f:
            i += 1
        if i == len(order):
            yield dict(f)
            return
        a = order[i]
        anchored = [f[x] for x in g1.adj[a] if x in f]
        cands = (g2.adj[anchored[0]] if anchored else g2.vertices)
        for b in sorted(cands, key=natural_key):
            if b in used:
                continue
            trail = []
            if assign(a, b, trail):
                yield from rec(i + 1)
            undo(trail)

    for m in rec(0):
        yield m
        if first_only:
            return


def is_equivariantly_isomorphic(g1: SymmetricGraph, g2: SymmetricGraph) -> bool:
    if g1 == g2:
        return True
    return next(equivariant_isomorphisms(g1, g2, first_only=True), None) is not None
