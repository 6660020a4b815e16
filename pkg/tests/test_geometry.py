import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cylrig.geometry import (CylPoint, Framework, RealizationError, apply_isometry, equivariance_residual,
                             graph_is_gamma_isostatic, half_angle_point, is_independent,
                             is_infinitesimally_rigid, is_isostatic, kernel_basis, normal,
                             random_symmetric_realization, rigidity_matrix, exact_rank, trivial_motion_basis)
from cylrig.graph import make_graph
from cylrig.linalg import bareiss_rank, matvec, rank_mod_p
from helpers import base

K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def trivial(n, es):
    return make_graph("trivial", range(1, n + 1), es)


def test_cylpoint_checks_surface():
    with pytest.raises(ValueError):
        CylPoint(1, 1, 0)
    p = half_angle_point(7, Fraction(1, 3))
    assert p.x ** 2 + p.y ** 2 == 1


def test_isometries():
    p = CylPoint(Fraction(3, 5), Fraction(4, 5), 7)
    assert tuple(apply_isometry("inversion", p)) == (Fraction(-3, 5), Fraction(-4, 5), -7)
    assert tuple(apply_isometry("sigma_axial", CylPoint(1, 0, 2))) == (1, 0, 2)
    assert tuple(apply_isometry("halfturn_perp", CylPoint(1, 0, 0))) == (1, 0, 0)
    assert tuple(apply_isometry("sigma_horizontal", p)) == (Fraction(3, 5), Fraction(4, 5), -7)


@settings(max_examples=60)
@given(st.integers(-10 ** 4, 10 ** 4), st.fractions(max_denominator=50),
       st.sampled_from(["inversion", "sigma_axial", "sigma_horizontal", "halfturn_perp", "identity"]))
def test_normal_equivariance(t, z, op):
    p = half_angle_point(t, z)
    q = apply_isometry(op, p)
    assert normal(q) == tuple(apply_isometry(op, CylPoint(p.x, p.y, 0)))


def test_k4_shapes_and_rank():
    fw = random_symmetric_realization(trivial(4, K4), seed=3)
    R = rigidity_matrix(fw)
    assert R.shape == (10, 12)
    assert exact_rank(R.rows) == 10
    assert is_isostatic(fw)


def test_single_vertex_matrix():
    fw = random_symmetric_realization(trivial(1, []), seed=1)
    R = rigidity_matrix(fw)
    p = fw.point("1")
    assert R.rows == [[p.x, p.y, 0]]


def test_k4_minus_edge_and_k5():
    fw = random_symmetric_realization(trivial(4, K4[:-1]), seed=0)
    assert is_independent(fw) and not is_infinitesimally_rigid(fw)
    assert exact_rank(rigidity_matrix(fw).rows) == 9
    k5 = random_symmetric_realization(trivial(5, list(itertools.combinations(range(1, 6), 2))), seed=0)
    assert is_infinitesimally_rigid(k5) and not is_independent(k5)
    assert exact_rank(rigidity_matrix(k5).rows) == 13


def test_f1_ci_realization():
    g = base("Ci/F1")
    fw = random_symmetric_realization(g, seed=5)
    for v in g.vertices:
        w = g.involution[v]
        assert tuple(fw.point(w)) == tuple(-c for c in fw.point(v))
    assert len(set(fw.placement.values())) == 6
    R = rigidity_matrix(fw)
    assert R.shape == (16, 18) and exact_rank(R.rows) == 16


def test_w5_hub_on_axis():
    g = base("C2/W5")
    fw = random_symmetric_realization(g, seed=0)
    hub = [v for v in g.vertices if g.involution[v] == v]
    assert [tuple(fw.point(h)) for h in hub] == [(1, 0, 0)]


def test_trivial_motions_in_kernel():
    fw = random_symmetric_realization(base("Cs/K34"), seed=2)
    R = rigidity_matrix(fw).rows
    t, r = trivial_motion_basis(fw)
    assert not any(matvec(R, t)) and not any(matvec(R, r))
    p = CylPoint(Fraction(3, 5), Fraction(4, 5), 1)
    _, r1 = trivial_motion_basis(Framework(trivial(1, []), {"1": p}))
    assert r1 == [Fraction(-4, 5), Fraction(3, 5), 0]


def test_kernel_basis_dimension():
    fw = random_symmetric_realization(trivial(4, K4[:-1]), seed=4)
    R = rigidity_matrix(fw)
    ker = kernel_basis(R)
    assert len(ker) == 12 - 9
    for k in ker:
        assert not any(matvec(R.rows, k))


def test_rank_paths_agree():
    rng = random.Random(1)
    for _ in range(30):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-3, 3) if rng.random() < 0.6 else 0 for _ in range(n)] for _ in range(m)]
        assert rank_mod_p(A) <= bareiss_rank(A)
        assert exact_rank(A) == bareiss_rank(A)
    assert exact_rank([[0] * 3] * 3) == 0


def test_equivariance_residual_zero_and_detects_asymmetry():
    g = base("C2/Wd42")
    fw = random_symmetric_realization(g, seed=9)
    rng = random.Random(0)
    u = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3 * len(g.vertices))]
    assert not any(equivariance_residual(fw, "c2p", u))
    # move one free vertex off its symmetric position
    v = next(v for v in g.vertices if g.involution[v] != v)
    bad = dict(fw.placement)
    bad[v] = half_angle_point(123, 5)
    assert any(equivariance_residual(Framework(g, bad), "c2p", u))


def test_verdicts():
    assert graph_is_gamma_isostatic(base("Ci/F1")).isostatic
    k4 = make_graph("C2", range(1, 5), K4, {"c2p": {1: 2, 2: 1, 3: 4, 4: 3}})
    assert graph_is_gamma_isostatic(k4).isostatic
    v = graph_is_gamma_isostatic(base("C2/Wd42"), seed=0)
    assert v.rank == 19 and v.status == "isostatic"
    f1 = base("Ci/F1")
    rot = make_graph("C2z", f1.vertices, [tuple(e) for e in f1.edges], {"c2": f1.involution})
    v = graph_is_gamma_isostatic(rot)
    assert not v.isostatic and v.status == "not isostatic (probabilistic)"


def test_tiny_frameworks_flagged():
    v = graph_is_gamma_isostatic(trivial(2, [(1, 2)]))
    assert v.notes


def test_unplaceable_fixed_vertices():
    # two half-turn fixed vertices joined by an edge both sit at (1, 0, 0)
    g = make_graph("C2", range(1, 3), [(1, 2)], {"c2p": {1: 1, 2: 2}})
    with pytest.raises(RealizationError):
        random_symmetric_realization(g, seed=0)


def test_seed_determinism():
    g = base("Cs/W5", "Cs_horizontal")
    a = random_symmetric_realization(g, seed=11).placement
    b = random_symmetric_realization(g, seed=11).placement
    assert a == b
