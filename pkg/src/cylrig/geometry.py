"""Symmetric frameworks on the cylinder and their rigidity matrices, in exact arithmetic."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import SymmetricGraph, edge_tuple
from .groups import Element, SymOp, canonical_matrix
from . import linalg


class RealizationError(RuntimeError):
    """No admissible symmetric placement was found."""


@dataclass(frozen=True)
class CylPoint:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for k in ("x", "y", "z"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.x * self.x + self.y * self.y != 1:
            raise ValueError(f"({self.x}, {self.y}, {self.z}) is not on the cylinder")

    def __iter__(self):
        return iter((self.x, self.y, self.z))


def _diag(op):
    if isinstance(op, Element):
        return op.diag
    if isinstance(op, tuple) and len(op) == 3:
        return op
    return canonical_matrix(SymOp.parse(op))


def apply_isometry(op, point) -> CylPoint:
    """op: kind string / SymOp (canonical representative), a group Element, or a diagonal triple."""
    d = _diag(op)
    x, y, z = point
    return CylPoint(d[0] * x, d[1] * y, d[2] * z)


@dataclass(frozen=True, eq=False)
class Framework:
    graph: SymmetricGraph
    placement: dict  # vertex -> CylPoint

    def point(self, v):
        return self.placement[v]


def half_angle_point(t, z) -> CylPoint:
    d = 1 + t * t
    return CylPoint(Fraction(1 - t * t, d), Fraction(2 * t, d), z)


def _draw_orbit_points(graph, rng, coord):
    spec = graph.spec
    placement = {}
    for v in graph.vertices:
        if v in placement:
            continue
        stab = [el for el in spec.elements if graph.perm(el.label)[v] == v]
        # coordinates negated by some stabilizer element must vanish
        zero = [any(el.diag[i] == -1 for el in stab) for i in range(3)]
        if zero[0] and zero[1]:
            raise RealizationError(f"vertex {v} is fixed by an operation with no fixed point on the cylinder")
        if zero[2]:
            z = Fraction(0)
        else:
            z = Fraction(rng.randint(1, coord), rng.randint(1, coord)) * rng.choice((1, -1))
        if zero[1]:
            # on the x-axis line: half-turn fixed points sit at (1, 0, 0); mirror points take either side
            if any(el.op.kind == "halfturn_perp" for el in stab):
                s = 1
            else:
                s = rng.choice((1, -1))
            p = CylPoint(s, 0, z)
        elif zero[0]:
            p = CylPoint(0, rng.choice((1, -1)), z)
        else:
            p = half_angle_point(rng.randint(-coord, coord), z)
        for el in spec.elements:
            w = graph.perm(el.label)[v]
            q = apply_isometry(el, p)
            if w in placement and placement[w] != q:
                raise RealizationError("inconsistent orbit placement")  # pragma: no cover
            placement[w] = q
    return placement


def random_symmetric_realization(graph: SymmetricGraph, seed=0, coordinate_range=10 ** 4,
                                 max_redraws=16, rng=None) -> Framework:
    """Random exact symmetric placement: one free point per vertex orbit, images by the isometries."""
    rng = rng if rng is not None else random.Random(seed)
    for _ in range(max_redraws + 1):
        placement = _draw_orbit_points(graph, rng, coordinate_range)
        clash = [e for e in graph.edges if len({placement[v] for v in e}) < 2]
        if not clash:
            return Framework(graph, placement)
        forced = all(all(_pinned(graph, v) for v in e) for e in clash)
        if forced:
            break
    raise RealizationError(f"adjacent vertices {list(edge_tuple(clash[0]))} coincide in every draw "
                           "(geometric degeneracy)")


def _pinned(graph, v):
    """True when the stabilizer leaves no freedom for the point of v."""
    stab = [el for el in graph.spec.elements if graph.perm(el.label)[v] == v]
    return any(el.op.kind == "halfturn_perp" for el in stab)


@dataclass
class RigidityMatrix:
    rows: list
    row_labels: list
    vertices: list

    @property
    def shape(self):
        return (len(self.rows), 3 * len(self.vertices))


def rigidity_matrix(fw: Framework) -> RigidityMatrix:
    verts = list(fw.graph.vertices)
    col = {v: 3 * i for i, v in enumerate(verts)}
    n = 3 * len(verts)
    rows, labels = [], []
    zero = Fraction(0)
    for e in fw.graph.edges:
        a, b = edge_tuple(e)
        pa, pb = fw.placement[a], fw.placement[b]
        row = [zero] * n
        for k, (s, t) in enumerate(zip(pa, pb)):
            row[col[a] + k] = s - t
            row[col[b] + k] = t - s
        rows.append(row)
        labels.append(("edge", a, b))
    for v in verts:
        p = fw.placement[v]
        row = [zero] * n
        row[col[v]], row[col[v] + 1] = p.x, p.y
        rows.append(row)
        labels.append(("normal", v))
    return RigidityMatrix(rows, labels, verts)


def normal(point) -> tuple:
    return (point.x, point.y, Fraction(0))


def act_on_motion(fw: Framework, label, u) -> list:
    """(tau x P_V)(gamma) u: the block of v moves to gamma v and is hit by tau(gamma)."""
    verts = list(fw.graph.vertices)
    col = {v: 3 * i for i, v in enumerate(verts)}
    el = fw.graph.spec.element(label)
    perm = fw.graph.perm(label)
    out = [Fraction(0)] * len(u)
    for v in verts:
        w = perm[v]
        for k in range(3):
            out[col[w] + k] = el.diag[k] * u[col[v] + k]
    return out


def act_on_rows(fw: Framework, label, z) -> list:
    """P~_E(gamma) z: edge rows permuted as edges, normal rows as vertices."""
    g = fw.graph
    perm = g.perm(label)
    index = {}
    for i, e in enumerate(g.edges):
        index[e] = i
    m = len(g.edges)
    vidx = {v: m + i for i, v in enumerate(g.vertices)}
    out = [Fraction(0)] * len(z)
    for i, e in enumerate(g.edges):
        out[index[g.edge_image(e, label)]] = z[i]
    for v in g.vertices:
        out[vidx[perm[v]]] = z[vidx[v]]
    return out


def equivariance_residual(fw: Framework, label, u) -> list:
    """R (tau x P_V)(gamma) u - P~_E(gamma) R u; identically zero for a symmetric framework."""
    R = rigidity_matrix(fw).rows
    lhs = linalg.matvec(R, act_on_motion(fw, label, u))
    rhs = act_on_rows(fw, label, linalg.matvec(R, u))
    return [a - b for a, b in zip(lhs, rhs)]


def exact_rank(M) -> int:
    return linalg.exact_rank(M)


def kernel_basis(M):
    return linalg.kernel_basis(M.rows if isinstance(M, RigidityMatrix) else M,
                               ncols=3 * len(M.vertices) if isinstance(M, RigidityMatrix) else None)


def trivial_motion_basis(fw: Framework):
    t, r = [], []
    for v in fw.graph.vertices:
        p = fw.placement[v]
        t += [Fraction(0), Fraction(0), Fraction(1)]
        r += [-p.y, p.x, Fraction(0)]
    return t, r


def _rank(fw):
    return exact_rank(rigidity_matrix(fw))


def is_infinitesimally_rigid(fw: Framework) -> bool:
    return _rank(fw) == 3 * len(fw.graph.vertices) - 2


def is_independent(fw: Framework) -> bool:
    return _rank(fw) == len(fw.graph.edges) + len(fw.graph.vertices)


def is_isostatic(fw: Framework) -> bool:
    n, m = len(fw.graph.vertices), len(fw.graph.edges)
    return m + n == 3 * n - 2 and _rank(fw) == 3 * n - 2


@dataclass
class IsostaticVerdict:
    isostatic: bool
    rank: int
    target: int
    rows: int
    draws: int
    seed: int
    notes: list = field(default_factory=list)

    @property
    def status(self):
        return "isostatic" if self.isostatic else "not isostatic (probabilistic)"

    def as_dict(self):
        return {"status": self.status, "isostatic": self.isostatic, "rank": self.rank,
                "target_rank": self.target, "rows": self.rows, "draws": self.draws,
                "seed": self.seed, "notes": list(self.notes)}


def graph_is_gamma_isostatic(graph: SymmetricGraph, seed=0, retries=3) -> IsostaticVerdict:
    """Up to `retries` random symmetric realizations; a single isostatic one decides."""
    n, m = len(graph.vertices), len(graph.edges)
    target = 3 * n - 2
    notes = []
    if n <= 2:
        notes.append("tiny framework: trivial-motion space taken as span(t, r)")
    rng = random.Random(seed)
    best, draws = -1, 0
    for _ in range(max(1, retries)):
        fw = random_symmetric_realization(graph, rng=rng)
        draws += 1
        r = _rank(fw)
        best = max(best, r)
        if r == target and m + n == target:
            return IsostaticVerdict(True, r, target, m + n, draws, seed, notes)
    return IsostaticVerdict(False, best, target, m + n, draws, seed, notes)
