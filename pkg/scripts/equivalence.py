"""Combinatorial vs geometric verdicts on constructed and perturbed corpora."""
import argparse
import json

from cylrig.experiments import EquivalenceConfig, format_table, run_equivalence


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", nargs="+", default=list(EquivalenceConfig.groups))
    ap.add_argument("--tight", type=int, default=100)
    ap.add_argument("--perturbed", type=int, default=100)
    ap.add_argument("--max-vertices", type=int, default=24)
    ap.add_argument("--seed", type=int, default=1000)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    cfg = EquivalenceConfig(tuple(a.groups), a.tight, a.perturbed, a.max_vertices, a.seed)
    res = run_equivalence(cfg)
    print(json.dumps(res, indent=1) if a.json else format_table(res["rows"]))


if __name__ == "__main__":
    main()
