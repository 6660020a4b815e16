"""Regenerate the bundled JSON fixtures in src/cylrig/data."""
import json
import pathlib

from cylrig import catalog
from cylrig.graph import make_graph
from cylrig.io import to_document

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "cylrig" / "data"


def write(name, obj):
    (DATA / name).write_text(json.dumps(obj, indent=1) + "\n")


def main():
    DATA.mkdir(exist_ok=True)
    for key in catalog.ENTRIES:
        fam, name = key.split("/")
        group = "Cs_axial" if fam == "Cs" else fam
        write(f"{fam}_{name}.json", to_document(catalog.base_graph(key, group)))
    k5 = [(a, b) for a in range(1, 6) for b in range(a + 1, 6)]
    write("K5_C2.json", to_document(make_graph("C2", range(1, 6), k5,
                                               {"c2p": {1: 2, 2: 1, 3: 4, 4: 3, 5: 5}})))
    write("corpus.json", {
        "groups": ["Ci", "C2", "Cs_axial", "Cs_horizontal"],
        "equivalence": {"tight": 100, "perturbed": 100, "max_vertices": 24, "seed": 1000},
        "roundtrip": {"count": 100, "max_vertices": 40, "seed": 0},
        "trees": {"count": 50, "max_vertices": 40, "seed": 2000},
        "equivariance": {"frameworks": 20, "vectors": 5, "seed": 3000},
        "pebble": {"graphs": 500, "max_vertices": 8, "seed": 4000},
        "operations": {"applications": 25, "max_vertices": 16, "seed": 5000},
    })


if __name__ == "__main__":
    main()
