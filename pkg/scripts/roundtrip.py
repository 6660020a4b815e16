"""Certify random Gamma-tight graphs, replay the certificates, optionally colour two trees."""
import argparse
import json

from cylrig.experiments import RoundtripConfig, format_table, run_roundtrip


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", nargs="+", default=list(RoundtripConfig.groups))
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-vertices", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trees", action="store_true")
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    res = run_roundtrip(RoundtripConfig(tuple(a.groups), a.count, a.max_vertices, a.seed, a.trees))
    print(json.dumps(res, indent=1) if a.json else format_table(res["rows"]))


if __name__ == "__main__":
    main()
