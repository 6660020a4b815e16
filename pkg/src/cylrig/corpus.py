"""Random symmetric graphs: grown by random extension moves, or perturbed by edge-orbit swaps."""
from __future__ import annotations

import random

from . import catalog
from .construction import Certificate, Step, StepError, apply_step
from .graph import SymmetricGraph, edge, natural_key, orbits

MOVES = {
    "Ci": ("Sym0Ext", "Sym1Ext", "VertexToK4", "VertexToC4", "JoinTwoEdges"),
    "C2": ("Sym0Ext", "Sym1Ext", "VertexToK4", "VertexToC4", "Double1Ext"),
    "Cs": ("Sym0Ext", "FixedVertex0Ext", "Sym1Ext", "VertexToK4", "VertexToC4", "VertexToTight"),
}

# vertices each move adds (upper bound for the nested ones is handled separately)
_GROWTH = {"Sym0Ext": 2, "FixedVertex0Ext": 1, "Sym1Ext": 2, "Double1Ext": 2,
           "VertexToK4": 6, "VertexToC4": 2}


def _fam(group):
    return "Cs" if group.startswith("Cs") else group


class Namer:
    def __init__(self, used=(), start=1):
        self.used = set(used)
        self.k = start

    def __call__(self):
        while str(self.k) in self.used:
            self.k += 1
        name = str(self.k)
        self.used.add(name)
        return name


def random_base(group, rng, namer=None) -> Certificate:
    ent = rng.choice(catalog.entries_for(group))
    namer = namer or Namer()
    verts = [str(i) for i in range(1, ent.n + 1)]
    return Certificate(group, ent.key, {v: namer() for v in verts}, [])


def _sorted(xs):
    return sorted(xs, key=natural_key)


def random_step(graph: SymmetricGraph, rng, variant, namer, budget=10 ** 9):
    """Random parameters for one move, or None if the move does not apply."""
    g = graph.involution
    verts = _sorted(graph.vertices)
    free = [v for v in verts if g[v] != v]
    fixed = [v for v in verts if g[v] == v]
    if variant == "Sym0Ext":
        a, b = rng.sample(verts, 2)
        return Step(variant, {"new": [namer(), namer()], "neighbors": [a, b]})
    if variant == "FixedVertex0Ext":
        if not free:
            return None
        x = rng.choice(free)
        return Step(variant, {"new": namer(), "neighbors": [x, g[x]]})
    if variant == "Sym1Ext":
        es = [e for e in graph.edges if edge(*(g[x] for x in e)) != e]
        if not es:
            return None
        x, y = _sorted(rng.choice(sorted(es, key=lambda e: _sorted(e))))
        z = rng.choice([v for v in verts if v not in (x, y)])
        return Step(variant, {"new": [namer(), namer()], "edge": [x, y], "third": z})
    if variant == "Double1Ext":
        fe = [e for e in graph.edges if edge(*(g[x] for x in e)) == e and len({g[x] for x in e} & e) == 2
              and all(g[x] != x for x in e)]
        if not fe:
            return None
        x, x2 = _sorted(rng.choice(sorted(fe, key=lambda e: _sorted(e))))
        if rng.random() < 0.5:
            x, x2 = x2, x
        y = rng.choice([v for v in verts if v != x]) if rng.random() < 0.6 else x2
        return Step(variant, {"new": [namer(), namer()], "edge": [x, x2], "third": y})
    if variant == "VertexToK4":
        if not free:
            return None
        w = rng.choice(free)
        new = [[namer(), namer()] for _ in range(3)]
        targets = [w] + [a for a, _ in new]
        assign = {n: rng.choice(targets) for n in _sorted(graph.adj[w])}
        return Step(variant, {"vertex": w, "new": new, "assign": assign})
    if variant == "VertexToC4":
        opts = [w for w in free if len(graph.adj[w] - {g[w]}) >= 2]
        mirror = [w for w in fixed if graph.group.startswith("Cs")
                  and any(g[n] != n for n in graph.adj[w])]
        if not opts and not mirror and not fixed:
            return None
        if mirror and (not opts or rng.random() < 0.4):
            w = rng.choice(mirror)
            x = rng.choice([n for n in _sorted(graph.adj[w]) if g[n] != n])
            rest = [n for n in _sorted(graph.adj[w]) if n not in (x, g[x])]
            moved = set()
            for n in rest:
                if n not in moved and rng.random() < 0.5:
                    moved |= {n, g[n]}
            return Step(variant, {"vertex": w, "new": [namer()], "shared": [x, g[x]],
                                  "moved": _sorted(moved)})
        split = [w for w in fixed if len(graph.adj[w]) >= 4]
        if split and (not opts or rng.random() < 0.3):
            # fixed vertex split into itself plus a new free orbit
            w = rng.choice(split)
            v1 = rng.choice(_sorted(graph.adj[w]))
            v2 = rng.choice([n for n in _sorted(graph.adj[w]) if n not in (v1, g[v1])])
            rest = [n for n in _sorted(graph.adj[w]) if n not in (v1, v2, g[v1], g[v2])]
            moved, taken = [], set()
            for n in rest:
                if n not in taken and rng.random() < 0.5:
                    moved.append(n)
                    taken |= {n, g[n]}
            return Step(variant, {"vertex": w, "new": [namer(), namer()], "shared": [v1, v2],
                                  "moved": _sorted(moved)})
        if not opts:
            return None
        w = rng.choice(opts)
        v1, v2 = rng.sample(_sorted(graph.adj[w] - {g[w]}), 2)
        rest = [n for n in _sorted(graph.adj[w]) if n not in (v1, v2)]
        moved = [n for n in rest if rng.random() < 0.5]
        return Step(variant, {"vertex": w, "new": [namer(), namer()], "shared": [v1, v2], "moved": moved})
    if variant == "JoinTwoEdges":
        if budget < 6:
            return None
        sub_cert, sub = random_tight(graph.group, rng, min(budget, 12), namer=namer, allow_nested=False)
        x = rng.choice(verts)
        y = rng.choice(_sorted(sub.vertices))
        return Step(variant, {"other": sub_cert, "edge": [x, y]})
    if variant == "VertexToTight":
        if not fixed or budget < 5:
            return None
        w = rng.choice(fixed)
        sub_cert, sub = random_tight(graph.group, rng, min(budget + 1, 10), namer=namer, allow_nested=False)
        gh = sub.involution
        hv = _sorted(sub.vertices)
        attach = {}
        for n in _sorted(graph.adj[w]):
            if n in attach:
                continue
            h = rng.choice(hv)
            attach[n], attach[g[n]] = h, gh[h]
        return Step(variant, {"vertex": w, "other": sub_cert, "attach": attach})
    raise ValueError(variant)


def random_tight(group, rng, max_vertices, steps=None, namer=None, allow_nested=True, variants=None):
    """Grow a random Gamma-tight graph; returns (certificate, graph) with the forward steps."""
    namer = namer or Namer()
    cert = random_base(group, rng, namer)
    from .construction import replay
    graph = replay(cert, check=False)
    moves = list(variants or MOVES[_fam(group)])
    if not allow_nested:
        moves = [m for m in moves if m not in ("JoinTwoEdges", "VertexToTight")]
    count = 0
    stalls = 0
    while (steps is None or count < steps) and stalls < 30:
        room = max_vertices - len(graph.vertices)
        options = [m for m in moves if _GROWTH.get(m, 5) <= room]
        if not options:
            break
        variant = rng.choice(options)
        step = random_step(graph, rng, variant, namer, budget=room)
        if step is None:
            stalls += 1
            continue
        try:
            new = apply_step(graph, step, check=False)
        except StepError:
            stalls += 1
            continue
        if len(new.vertices) > max_vertices:
            stalls += 1
            continue
        graph = new
        cert.steps.append(step)
        count += 1
    return cert, graph


def perturb(graph: SymmetricGraph, rng, swaps=1) -> SymmetricGraph:
    """Swap edge orbits for non-edge orbits of equal size; the action is kept."""
    g = graph.involution
    for _ in range(swaps):
        _, eorb = orbits(graph)
        eorb = sorted(eorb, key=lambda o: sorted(_sorted(e) for e in o))
        out = rng.choice(eorb)
        size = len(out)
        verts = _sorted(graph.vertices)
        for _ in range(200):
            a, b = rng.sample(verts, 2)
            e = edge(a, b)
            ge = edge(g[a], g[b])
            if e in graph.edge_set or len({e, ge}) != size or ge == e and a == g[a]:
                continue
            if {e, ge} == out:
                continue
            break
        else:
            continue
        edges = [f for f in graph.edges if f not in out] + list(dict.fromkeys([e, ge]))
        graph = SymmetricGraph(graph.group, graph.vertices, tuple(edges), dict(graph.action))
    return graph


def load_manifest() -> dict:
    """The bundled corpus manifest (sizes and seeds of the acceptance corpora)."""
    import json
    from .io import bundled
    return json.loads(bundled("corpus.json"))


def equivalence_corpus(group, tight=100, perturbed=100, max_vertices=24, seed=1000):
    """[(tag, graph)]: certified random constructions, then single orbit swaps of fresh ones."""
    out = []
    for i in range(tight):
        _, g = random_tight(group, random.Random(seed + i), max_vertices)
        out.append(("constructed", g))
    for i in range(perturbed):
        rng = random.Random(seed + 10 ** 6 + i)
        _, g = random_tight(group, rng, max_vertices)
        out.append(("perturbed", perturb(g, rng)))
    return out


def extension_sample(group, variant, rng, max_vertices=16, tries=50):
    """(graph before, step, graph after) for one random application of `variant`, or None."""
    for _ in range(tries):
        _, g = random_tight(group, rng, max_vertices)
        namer = Namer(g.vertices)
        step = random_step(g, rng, variant, namer, budget=12)
        if step is None:
            continue
        try:
            return g, step, apply_step(g, step)
        except StepError:
            continue
    return None
