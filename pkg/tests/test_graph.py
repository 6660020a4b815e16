import random

import pytest
from hypothesis import given, settings

from cylrig.graph import (SymmetricGraph, edge, equivariant_isomorphisms, find_pattern, fixed_elements,
                          is_equivariantly_isomorphic, make_graph, orbits, validate)
from helpers import base, tight_graphs

K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def test_f2_ci_has_no_fixed_edges():
    g = base("Ci/F2")
    assert (len(g.vertices), len(g.edges)) == (8, 14)
    fv, fe = fixed_elements(g, "inv")
    assert not fv and not fe


def test_k4_c2_fixed_edges():
    g = make_graph("C2", range(1, 5), K4, {"c2p": {1: 2, 2: 1, 3: 4, 4: 3}})
    assert validate(g).ok
    fv, fe = fixed_elements(g, "c2p")
    assert fv == set() and fe == {edge("1", "2"), edge("3", "4")}


def test_non_automorphism_names_edge():
    g = make_graph("C2", range(1, 5), [e for e in K4 if e != (1, 3)], {"c2p": {1: 2, 2: 1, 3: 4, 4: 3}})
    rep = validate(g)
    assert not rep.ok
    assert any("automorphism" in v and "2" in v and "4" in v for v in rep.violations)


def test_inversion_fixed_vertex_rejected():
    g = make_graph("Ci", range(1, 5), K4, {"inv": {1: 1, 2: 2, 3: 4, 4: 3}})
    rep = validate(g)
    assert not rep.ok and any("fixed" in v for v in rep.violations)


def test_validate_collects_not_raises():
    g = SymmetricGraph("C2", ("1", "2"), (edge("1", "2"), edge("1", "2"), frozenset({"1"})),
                       {"c2p": {"1": "1", "2": "3"}})
    rep = validate(g)
    assert not rep.ok and len(rep.violations) >= 2


def test_unknown_group():
    g = SymmetricGraph("D7", ("1",), (), {})
    assert not validate(g).ok


def test_c2v_action_closed():
    g = make_graph("C2v", range(1, 5), [(1, 2), (3, 4), (1, 3), (2, 4)],
                   {"sigma": {1: 2, 2: 1, 3: 4, 4: 3}, "sigma_p": {1: 3, 3: 1, 2: 4, 4: 2}})
    assert set(g.action) == {"sigma", "sigma_p", "c2p"}
    assert g.action["c2p"]["1"] == "4"


def test_orbits_partition():
    g = base("C2/W5")
    vorb, eorb = orbits(g)
    assert sum(map(len, vorb)) == 5
    assert sum(map(len, eorb)) == len(g.edges)


def test_find_pattern_k4():
    g = make_graph("trivial", range(1, 5), K4)
    assert len(find_pattern(g, "K4")) == 1
    g2 = make_graph("trivial", range(1, 5), K4[:-1])
    assert find_pattern(g2, "K4") == []
    assert len(find_pattern(g2, "K4_minus_edge_through", "3", "4")) == 1


def test_find_pattern_catalog():
    g = base("C2/K4")
    emb = find_pattern(g, base("C2/K4"))
    # K4 with a half-turn: the centraliser of (12)(34) in S4 has order 8
    assert len(emb) == 8


@settings(max_examples=25, deadline=None)
@given(tight_graphs())
def test_relabel_gives_isomorphic(data):
    _, g = data
    rng = random.Random(len(g.vertices))
    names = list(g.vertices)
    shuffled = names[:]
    rng.shuffle(shuffled)
    h = g.relabel({a: f"x{b}" for a, b in zip(names, shuffled)})
    assert validate(h).ok
    assert is_equivariantly_isomorphic(g, h)


def test_non_isomorphic_across_catalog():
    assert next(equivariant_isomorphisms(base("Cs/F1"), base("Cs/F1fix2")), None) is None


@pytest.mark.parametrize("gen", ["sigma", "c2p"])
def test_missing_generator(gen):
    with pytest.raises(ValueError):
        make_graph("C2v", range(1, 3), [(1, 2)], {gen: {1: 2, 2: 1}})
