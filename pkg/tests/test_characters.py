from hypothesis import given, settings

from cylrig.characters import character_rows, necessary_conditions
from cylrig.graph import make_graph
from helpers import base, tight_graphs

K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def rows(g):
    ext, tau, triv = character_rows(g)
    return ext.values, tau.values, triv.values


def test_f1_ci():
    ext, tau, triv = rows(base("Ci/F1"))
    assert (ext["id"], ext["inv"]) == (16, 0)
    assert (tau["id"], tau["inv"]) == (18, 0)
    assert (triv["id"], triv["inv"]) == (2, 0)
    assert necessary_conditions(base("Ci/F1")).passes


def test_k4_c2():
    g = make_graph("C2", range(1, 5), K4, {"c2p": {1: 2, 2: 1, 3: 4, 4: 3}})
    ext, tau, triv = rows(g)
    assert (ext["id"], ext["c2p"]) == (10, 2)
    assert (tau["id"], tau["c2p"]) == (12, 0)
    assert (triv["id"], triv["c2p"]) == (2, -2)


def test_axis_halfturn_fails():
    f1 = base("Ci/F1")
    g = make_graph("C2z", f1.vertices, [tuple(e) for e in f1.edges], {"c2": f1.involution})
    v = necessary_conditions(g)
    assert not v.passes and v.residuals["c2"] == -2


def test_c2h_with_fixed_vertex_fails():
    # W5-like hub fixed by the half-turn: v_2' = 1 is not allowed for C2h
    g = make_graph("C2h", range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (2, 5), (3, 5), (4, 5)],
                   {"c2p": {1: 3, 3: 1, 2: 4, 4: 2, 5: 5}, "sigma": {1: 2, 2: 1, 3: 4, 4: 3, 5: 5}})
    v = necessary_conditions(g)
    assert not v.passes
    assert any("v_c2p" in r for r in v.table3)


def test_c2v_label():
    g = make_graph("C2v", range(1, 5), K4, {"sigma": {1: 2, 2: 1, 3: 4, 4: 3},
                                             "sigma_p": {1: 2, 2: 1, 3: 4, 4: 3}})
    d = necessary_conditions(g).as_dict()
    assert d["label"] == "necessary conditions only"


@settings(max_examples=30, deadline=None)
@given(tight_graphs())
def test_identity_column_and_soundness(data):
    _, g = data
    ext, tau, triv = rows(g)
    assert (ext["id"], tau["id"], triv["id"]) == (len(g.edges) + len(g.vertices), 3 * len(g.vertices), 2)
    assert necessary_conditions(g).passes
