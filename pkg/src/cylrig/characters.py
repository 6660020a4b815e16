"""Characters of the edge/vertex, external and trivial-motion representations."""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import SymmetricGraph, fixed_elements
from .sparsity import symmetry_counts, table3_conditions


class CharacterMismatch(AssertionError):
    """First-principles characters disagree with the closed-form table."""


@dataclass
class CharacterRow:
    label: str
    values: dict  # element label -> int

    def __getitem__(self, k):
        return self.values[k]


def _trivial_trace(diag) -> int:
    # t = (0,0,1) per vertex picks up the zz entry; r = (-y, x, 0) is an axial
    # vector along z, so it picks up det * zz
    det = diag[0] * diag[1] * diag[2]
    return diag[2] + det * diag[2]


def _closed_form(col, nE, nV, fv, fe):
    """The three table entries for one column, from fixed counts.

    Vertices fixed by c2 or phi cannot be placed on the cylinder, so the printed table has
    v = 0 there; the fv terms below only matter for graphs that validate() rejects.
    """
    if col == "id":
        return nE + nV, 3 * nV, 2
    return {
        "cn": (0, 0, 2),
        "c2": (fe + fv, -fv, 2),
        "c2p": (fe + fv, -fv, -2),
        "sigma": (fe + fv, fv, 0),
        "sigma_p": (fe + fv, fv, 0),
        "sn": (0, 0, 0),
        "phi": (fe + fv, -3 * fv, 0),
    }[col]


def character_rows(graph: SymmetricGraph):
    """(chi(P_E + P_V), chi(tau x P_V), chi of trivial motions), each keyed by element label."""
    ext, tau, triv = {}, {}, {}
    nV, nE = len(graph.vertices), len(graph.edges)
    for el in graph.spec.elements:
        fv, fe = fixed_elements(graph, el.label)
        a = len(fe) + len(fv)
        tr = el.op.trace()
        b = round(tr * len(fv))
        c = _trivial_trace(el.diag)
        if (a, b, c) != _closed_form(el.op.column, nE, nV, len(fv), len(fe)):
            raise CharacterMismatch(f"{graph.group}/{el.label}: computed {(a, b, c)}")
        ext[el.label], tau[el.label], triv[el.label] = a, b, c
    return (CharacterRow("chi(P_E)", ext), CharacterRow("chi(tau x P_V)", tau),
            CharacterRow("chi_T", triv))


@dataclass
class NecessaryVerdict:
    passes: bool
    residuals: dict  # element label -> chi(tau x P_V) - chi_T - chi(P_E)
    table3: list  # failures of the fixed-count constraints
    count_ok: bool
    rows: tuple = field(default=())
    necessary_only: bool = True

    def as_dict(self):
        ext, tau, triv = self.rows
        return {"passes": self.passes, "residuals": dict(self.residuals),
                "table3_failures": list(self.table3), "count_ok": self.count_ok,
                "chi_PE": dict(ext.values), "chi_tauPV": dict(tau.values),
                "chi_T": dict(triv.values), "label": "necessary conditions only"}


def necessary_conditions(graph: SymmetricGraph) -> NecessaryVerdict:
    rows = character_rows(graph)
    ext, tau, triv = rows
    residuals = {k: tau[k] - triv[k] - ext[k] for k in ext.values}
    t3 = [r for r in table3_conditions(graph, symmetry_counts(graph))
          if not r.startswith("a half-turn about")]
    count_ok = len(graph.edges) == 2 * len(graph.vertices) - 2
    ok = count_ok and not t3 and all(v == 0 for v in residuals.values())
    return NecessaryVerdict(ok, residuals, t3, count_ok, rows)
