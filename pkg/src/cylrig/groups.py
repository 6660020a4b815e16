"""Symmetry operations of the cylinder x^2 + y^2 = 1 and the small groups built from them.

Every supported element acts on R^3 by a diagonal +-1 matrix, so images of rational
points stay rational and exact.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass


class UnknownGroupError(ValueError):
    pass


_KIND_RE = re.compile(r"^(rotation_z|improper_z)\((\d+)\)$")
_PLAIN_KINDS = ("identity", "inversion", "sigma_axial", "sigma_horizontal", "halfturn_perp")


@dataclass(frozen=True)
class SymOp:
    """An isometry class of the cylinder. `n` is only used by rotation_z / improper_z."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind in _PLAIN_KINDS:
            if self.n:
                raise ValueError(f"{self.kind} takes no order")
        elif self.kind in ("rotation_z", "improper_z"):
            if self.n < 2:
                raise ValueError("rotation order must be >= 2")
            if self.kind == "improper_z" and self.n == 2:
                raise ValueError("improper_z(2) is stored as inversion")
        else:
            raise ValueError(f"unknown symmetry kind {self.kind!r}")

    @classmethod
    def parse(cls, text) -> "SymOp":
        if isinstance(text, SymOp):
            return text
        m = _KIND_RE.match(text)
        if m:
            kind, n = m.group(1), int(m.group(2))
            if kind == "improper_z" and n == 2:
                return cls("inversion")
            return cls(kind, n)
        return cls(text)

    def __str__(self):
        return f"{self.kind}({self.n})" if self.n else self.kind

    @property
    def column(self) -> str:
        """Column label of the cylinder character table."""
        if self.kind == "identity":
            return "id"
        if self.kind == "rotation_z":
            return "c2" if self.n == 2 else "cn"
        if self.kind == "improper_z":
            return "sn"
        return {"inversion": "phi", "sigma_axial": "sigma",
                "sigma_horizontal": "sigma_p", "halfturn_perp": "c2p"}[self.kind]

    @property
    def exact(self) -> bool:
        return self.kind in _PLAIN_KINDS or (self.kind == "rotation_z" and self.n == 2)

    def trace(self) -> float:
        """Trace of the 3x3 orthogonal matrix (independent of which representative is used)."""
        if self.kind == "rotation_z":
            return 1 + 2 * math.cos(2 * math.pi / self.n)
        if self.kind == "improper_z":
            return -1 + 2 * math.cos(2 * math.pi / self.n)
        return {"identity": 3, "inversion": -3, "sigma_axial": 1,
                "sigma_horizontal": 1, "halfturn_perp": -1}[self.kind]


# canonical diagonal representatives
_CANON = {
    "identity": (1, 1, 1),
    "inversion": (-1, -1, -1),
    "sigma_axial": (1, -1, 1),  # xz-plane
    "sigma_horizontal": (1, 1, -1),
    "halfturn_perp": (1, -1, -1),  # x-axis
    "rotation_z(2)": (-1, -1, 1),
}


def canonical_matrix(op) -> tuple:
    op = SymOp.parse(op)
    if not op.exact:
        raise ValueError(f"{op} has no exact rational representative")
    return _CANON[str(op)]


@dataclass(frozen=True)
class Element:
    label: str
    op: SymOp
    diag: tuple  # diagonal of the concrete 3x3 matrix

    @property
    def is_identity(self):
        return self.op.kind == "identity"


@dataclass(frozen=True)
class GroupSpec:
    name: str
    elements: tuple  # of Element, identity first
    generators: tuple  # labels

    @property
    def order(self):
        return len(self.elements)

    def element(self, key) -> Element:
        """Look up by label ('c2p'), by kind string ('halfturn_perp') or by SymOp."""
        for e in self.elements:
            if e.label == key:
                return e
        try:
            op = SymOp.parse(key) if not isinstance(key, Element) else key.op
        except ValueError:
            op = None
        for e in self.elements:
            if op is not None and e.op == op:
                return e
        raise KeyError(f"{key!r} is not an element of {self.name}")

    def compose(self, a: str, b: str) -> str:
        """Label of a*b (all groups here are elementary abelian, products are coordinatewise)."""
        da, db = self.element(a).diag, self.element(b).diag
        d = tuple(x * y for x, y in zip(da, db))
        for e in self.elements:
            if e.diag == d:
                return e.label
        raise ValueError(f"{self.name} is not closed under composition")

    def nonidentity(self):
        return [e for e in self.elements if not e.is_identity]


def _el(label, kind, diag=None):
    op = SymOp.parse(kind)
    return Element(label, op, tuple(diag) if diag else canonical_matrix(op))


_ID = _el("id", "identity")

GROUPS = {
    "trivial": GroupSpec("trivial", (_ID,), ()),
    "Ci": GroupSpec("Ci", (_ID, _el("inv", "inversion")), ("inv",)),
    "Cs_axial": GroupSpec("Cs_axial", (_ID, _el("sigma", "sigma_axial")), ("sigma",)),
    "Cs_horizontal": GroupSpec("Cs_horizontal", (_ID, _el("sigma_p", "sigma_horizontal")), ("sigma_p",)),
    "C2": GroupSpec("C2", (_ID, _el("c2p", "halfturn_perp")), ("c2p",)),
    "C2v": GroupSpec("C2v", (_ID, _el("sigma", "sigma_axial"), _el("sigma_p", "sigma_horizontal"),
                             _el("c2p", "halfturn_perp")), ("sigma", "sigma_p")),
    # sigma * c2p must be the inversion, so the mirror here is the yz-plane
    "C2h": GroupSpec("C2h", (_ID, _el("sigma", "sigma_axial", (-1, 1, 1)), _el("c2p", "halfturn_perp"),
                             _el("inv", "inversion")), ("c2p", "sigma")),
    # half-turn about the cylinder axis; never isostatic, kept to exercise the c2 column
    "C2z": GroupSpec("C2z", (_ID, _el("c2", "rotation_z(2)")), ("c2",)),
}

ORDER_TWO = ("Ci", "Cs_axial", "Cs_horizontal", "C2", "C2z")
CERTIFIABLE = ("Ci", "Cs_axial", "Cs_horizontal", "C2")


def get_group(name) -> GroupSpec:
    if isinstance(name, GroupSpec):
        return name
    try:
        return GROUPS[name]
    except KeyError:
        raise UnknownGroupError(f"unknown group {name!r}; expected one of {sorted(GROUPS)}") from None


def family(name) -> str:
    """Catalog family: Cs_axial and Cs_horizontal share combinatorics."""
    name = get_group(name).name
    return "Cs" if name.startswith("Cs") else name


def _check_groups():
    for g in GROUPS.values():
        labels = [e.label for e in g.elements]
        assert g.elements[0].is_identity and len(set(labels)) == len(labels)
        for a in labels:
            for b in labels:
                g.compose(a, b)
        for e in g.elements:
            assert canonical_matrix(e.op) is not None
            # the concrete matrix must belong to the same isometry class
            assert sum(e.diag) == e.op.trace()


_check_groups()
