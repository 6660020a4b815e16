"""(2,2)-sparsity by the pebble game, plus the symmetric tightness counts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import SymmetricGraph, edge, fixed_elements, natural_key


@dataclass
class SparsityReport:
    sparse: bool
    tight: bool
    witness: frozenset | None = None

    def as_dict(self):
        return {"sparse": self.sparse, "tight": self.tight,
                "witness": sorted(self.witness, key=natural_key) if self.witness else None}


class PebbleGame:
    """(2,2) pebble game. Accepted edges are oriented away from the vertex that paid for them."""

    def __init__(self, vertices=()):
        self.peb = {v: 2 for v in vertices}
        self.out = {v: set() for v in vertices}

    def clone(self):
        g = PebbleGame()
        g.peb = dict(self.peb)
        g.out = {v: set(s) for v, s in self.out.items()}
        return g

    def add_vertex(self, v):
        self.peb.setdefault(v, 2)
        self.out.setdefault(v, set())

    def _pull(self, root, blocked):
        """Move one free pebble to root along a directed path avoiding `blocked`."""
        parent = {root: None}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in parent or y in blocked:
                    continue
                parent[y] = x
                if self.peb[y] > 0:
                    # reverse the path root -> ... -> y
                    self.peb[y] -= 1
                    self.peb[root] += 1
                    while parent[y] is not None:
                        x = parent[y]
                        self.out[x].discard(y)
                        self.out[y].add(x)
                        y = x
                    return True
                stack.append(y)
        return False

    def gather(self, u, v, target=3):
        """Collect pebbles on {u, v} until `target` or nothing more moves. Returns the count."""
        while self.peb[u] + self.peb[v] < target:
            if self.peb[u] < 2 and self._pull(u, {v}):
                continue
            if self.peb[v] < 2 and self._pull(v, {u}):
                continue
            break
        return self.peb[u] + self.peb[v]

    def reach(self, roots):
        seen = set(roots)
        stack = list(roots)
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def insert(self, u, v):
        """Try to accept uv; returns True on success."""
        if self.gather(u, v) < 3:
            return False
        src, dst = (u, v) if self.peb[u] > 0 else (v, u)
        self.peb[src] -= 1
        self.out[src].add(dst)
        return True

    def closure(self, u, v):
        """Smallest set containing u, v that is tight among accepted edges (when the accepted graph is tight)."""
        self.gather(u, v, target=4)
        return frozenset(self.reach((u, v)))

    def free(self):
        return sum(self.peb.values())


def _plain(graph):
    """Accept SymmetricGraph or (vertices, edges)."""
    if isinstance(graph, SymmetricGraph):
        return list(graph.vertices), list(graph.edges)
    verts, edges = graph
    return list(verts), [edge(*e) if not isinstance(e, frozenset) else e for e in edges]


def run_pebble_game(graph):
    """Returns (game, first rejected edge or None, witness)."""
    verts, edges = _plain(graph)
    game = PebbleGame(verts)
    rejected, witness = None, None
    for e in edges:
        u, v = tuple(e)
        if not game.insert(u, v) and rejected is None:
            rejected = e
            witness = frozenset(game.reach((u, v)))
    return game, rejected, witness


def check_22(graph) -> SparsityReport:
    verts, edges = _plain(graph)
    _, rejected, witness = run_pebble_game((verts, edges))
    sparse = rejected is None
    return SparsityReport(sparse, sparse and len(edges) == 2 * len(verts) - 2, witness)


def addable(graph, u, v) -> bool:
    verts, edges = _plain(graph)
    if u == v or edge(u, v) in set(edges):
        raise ValueError(f"{u}{v} is already an edge or a loop")
    game, rejected, _ = run_pebble_game((verts, edges))
    return rejected is None and game.insert(u, v)


def addable_pair(graph, e1, e2) -> bool:
    verts, edges = _plain(graph)
    es = set(edges)
    (u1, v1), (u2, v2) = tuple(e1), tuple(e2)
    for a, b in ((u1, v1), (u2, v2)):
        if a == b or edge(a, b) in es:
            raise ValueError(f"{a}{b} is already an edge or a loop")
    if edge(u1, v1) == edge(u2, v2):
        raise ValueError("the two edges coincide")
    game, rejected, _ = run_pebble_game((verts, edges))
    if rejected is not None:
        return False
    game = game.clone()
    return game.insert(u1, v1) and game.insert(u2, v2)


def induced_count(edges, X) -> int:
    X = set(X)
    return sum(1 for e in edges if e <= X)


def brute_force_sparse(graph) -> SparsityReport:
    """Exhaustive check of i(X) <= 2|X| - 2 over all nonempty X."""
    verts, edges = _plain(graph)
    n = len(verts)
    if n > 16:
        raise ValueError("brute force limited to 16 vertices")
    idx = {v: i for i, v in enumerate(verts)}
    masks = [(1 << idx[a]) | (1 << idx[b]) for a, b in (tuple(e) for e in edges)]
    witness = None
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            m = 0
            for i in combo:
                m |= 1 << i
            cnt = sum(1 for em in masks if em & m == em)
            if cnt > 2 * size - 2:
                witness = frozenset(verts[i] for i in combo)
                break
        if witness is not None:
            break
    sparse = witness is None
    return SparsityReport(sparse, sparse and len(edges) == 2 * n - 2, witness)


# symmetric tightness ------------------------------------------------------------

@dataclass
class GammaVerdict:
    ok: bool
    reasons: list
    report: SparsityReport
    counts: dict = field(default_factory=dict)
    necessary_only: bool = False

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {"gamma_tight": self.ok, "reasons": list(self.reasons),
                "necessary_only": self.necessary_only, "counts": dict(self.counts),
                **self.report.as_dict()}


def symmetry_counts(graph: SymmetricGraph) -> dict:
    """Fixed counts keyed by the character-table symbols (v_2p, e_sigma, ...)."""
    out = {}
    for el in graph.spec.nonidentity():
        fv, fe = fixed_elements(graph, el.label)
        col = el.op.column
        out[f"v_{col}"] = len(fv)
        out[f"e_{col}"] = len(fe)
    return out


def table3_conditions(graph: SymmetricGraph, counts=None):
    """Fixed-count constraints per group; returns a list of failure messages."""
    c = symmetry_counts(graph) if counts is None else counts
    name = graph.spec.name
    bad = []

    def need(key, val):
        if c.get(key, 0) != val:
            bad.append(f"{key}={c.get(key, 0)}, need {val}")

    def c2p_rule():
        e, v = c.get("e_c2p", 0), c.get("v_c2p", 0)
        if not ((e == 2 and v == 0) or (e == 0 and v == 1)):
            bad.append(f"e_c2p={e}, v_c2p={v}, need (2, 0) or (0, 1)")

    if name == "Ci":
        need("e_phi", 0)
    elif name == "Cs_axial":
        need("e_sigma", 0)
    elif name == "Cs_horizontal":
        need("e_sigma_p", 0)
    elif name == "C2":
        c2p_rule()
    elif name == "C2v":
        need("e_sigma", 0)
        need("e_sigma_p", 0)
        c2p_rule()
    elif name == "C2h":
        need("e_sigma", 0)
        need("e_phi", 0)
        need("e_c2p", 2)
        need("v_c2p", 0)
    elif name == "C2z":
        bad.append("a half-turn about the cylinder axis admits no isostatic realization")
    return bad


def halfturn_blocker(graph: SymmetricGraph, label="c2p"):
    """A tight vertex set, invariant under the half-turn `label`, that misses the fixed
    vertex or one of the fixed edges; None if there is none.

    Such a set spans a symmetric tight subgraph which fails the fixed-count rule on its
    own, so the whole framework carries a self-stress at every symmetric placement.
    """
    fv, fe = fixed_elements(graph, label)
    perm = graph.perm(label)
    for drop in [set(fv)] if fv else [set(e) for e in fe]:
        keep = [v for v in graph.vertices if v not in drop]
        sub = (keep, [e for e in graph.edges if not e & drop])
        game, rejected, witness = run_pebble_game(sub)
        if rejected is not None:
            return witness
        adj = {edge(*e) for e in sub[1]}
        for v in keep:
            w = perm[v]
            if natural_key(w) <= natural_key(v) or edge(v, w) in adj:
                continue
            trial = game.clone()
            if trial.gather(v, w) < 3:
                return frozenset(trial.reach((v, w)))
    return None


def gamma_tight(graph: SymmetricGraph) -> GammaVerdict:
    rep = check_22(graph)
    counts = symmetry_counts(graph)
    reasons = []
    if not rep.sparse:
        reasons.append("not (2,2)-sparse")
    elif not rep.tight:
        reasons.append(f"|E|={len(graph.edges)} but 2|V|-2={2 * len(graph.vertices) - 2}")
    reasons += table3_conditions(graph, counts)
    if not reasons and any(el.label == "c2p" for el in graph.spec.elements):
        blk = halfturn_blocker(graph)
        if blk is not None:
            rep = SparsityReport(rep.sparse, rep.tight, blk)
            reasons.append("symmetric tight subgraph on "
                           f"{sorted(blk, key=natural_key)} misses the fixed half-turn elements")
    necessary_only = graph.spec.name in ("C2v", "C2h")
    return GammaVerdict(not reasons, reasons, rep, counts, necessary_only)
