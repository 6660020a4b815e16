"""Experiment drivers with dataclass configs; the scripts/ directory wraps these."""
from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass

from .construction import certify, verify_certificate
from .corpus import equivalence_corpus, random_tight
from .geometry import graph_is_gamma_isostatic, random_symmetric_realization, rigidity_matrix
from .linalg import bareiss_rank, exact_rank, integer_rows, rank_mod_p
from .sparsity import gamma_tight
from .trees import decompose, verify_decomposition

DEFAULT_GROUPS = ("Ci", "C2", "Cs_axial", "Cs_horizontal")


@dataclass
class EquivalenceConfig:
    groups: tuple = DEFAULT_GROUPS
    tight: int = 100
    perturbed: int = 100
    max_vertices: int = 24
    seed: int = 1000
    retries: int = 3


@dataclass
class RoundtripConfig:
    groups: tuple = DEFAULT_GROUPS
    count: int = 100
    max_vertices: int = 40
    seed: int = 0
    trees: bool = False


@dataclass
class RankBenchConfig:
    sizes: tuple = (8, 16, 24, 32, 40)
    repeats: int = 3
    group: str = "C2"
    seed: int = 7


def run_equivalence(cfg: EquivalenceConfig):
    rows = []
    for group in cfg.groups:
        t0 = time.perf_counter()
        corpus = equivalence_corpus(group, cfg.tight, cfg.perturbed, cfg.max_vertices, cfg.seed)
        table = {(True, True): 0, (True, False): 0, (False, True): 0, (False, False): 0}
        for i, (_, g) in enumerate(corpus):
            comb = gamma_tight(g).ok
            geo = graph_is_gamma_isostatic(g, seed=i, retries=cfg.retries).isostatic
            table[(comb, geo)] += 1
        rows.append({"group": group, "graphs": len(corpus),
                     "tight&iso": table[(True, True)], "tight&not": table[(True, False)],
                     "not&iso": table[(False, True)], "not&not": table[(False, False)],
                     "seconds": round(time.perf_counter() - t0, 2)})
    return {"config": asdict(cfg), "rows": rows}


def run_roundtrip(cfg: RoundtripConfig):
    rows = []
    for group in cfg.groups:
        t0 = time.perf_counter()
        ok = steps = trees = 0
        for i in range(cfg.count):
            _, g = random_tight(group, random.Random(cfg.seed + i), cfg.max_vertices)
            cert = certify(g)
            ok += verify_certificate(g, cert)
            steps += cert.size()
            if cfg.trees:
                trees += verify_decomposition(g, decompose(g, cert))
        row = {"group": group, "graphs": cfg.count, "roundtrips_ok": ok,
               "mean_steps": round(steps / max(cfg.count, 1), 1),
               "seconds": round(time.perf_counter() - t0, 2)}
        if cfg.trees:
            row["trees_ok"] = trees
        rows.append(row)
    return {"config": asdict(cfg), "rows": rows}


def run_rank_bench(cfg: RankBenchConfig):
    rows = []
    rng = random.Random(cfg.seed)
    for n in cfg.sizes:
        _, g = random_tight(cfg.group, rng, n)
        fw = random_symmetric_realization(g, rng=rng)
        R = rigidity_matrix(fw).rows
        A = integer_rows(R)
        timings = {}
        for name, fn in (("mod_p", rank_mod_p), ("bareiss", bareiss_rank), ("exact", exact_rank)):
            t0 = time.perf_counter()
            for _ in range(cfg.repeats):
                r = fn(A if name != "exact" else R)
            timings[name] = round((time.perf_counter() - t0) / cfg.repeats, 4)
            timings[f"rank_{name}"] = r
        rows.append({"vertices": len(g.vertices), "rows": len(R), "cols": len(R[0]), **timings})
    return {"config": asdict(cfg), "rows": rows}


def format_table(rows):
    if not rows:
        return ""
    keys = list(rows[0])
    width = {k: max(len(k), *(len(str(r.get(k, ""))) for r in rows)) for k in keys}
    lines = ["  ".join(k.ljust(width[k]) for k in keys)]
    lines += ["  ".join(str(r.get(k, "")).ljust(width[k]) for k in keys) for r in rows]
    return "\n".join(lines)
