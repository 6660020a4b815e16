import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cylrig.graph import edge, make_graph
from cylrig.sparsity import (PebbleGame, addable, addable_pair, brute_force_sparse, check_22, gamma_tight,
                             halfturn_blocker, induced_count)
from helpers import base, tight_graphs

K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def plain(n, es):
    return [str(v) for v in range(1, n + 1)], [edge(str(a), str(b)) for a, b in es]


def test_k4_tight():
    r = check_22(plain(4, K4))
    assert r.sparse and r.tight and r.witness is None


def test_k5_witness():
    r = check_22(plain(5, itertools.combinations(range(1, 6), 2)))
    assert not r.sparse
    X = r.witness
    assert induced_count(plain(5, itertools.combinations(range(1, 6), 2))[1], X) > 2 * len(X) - 2


def test_f2_tight():
    assert check_22(base("Ci/F2")).tight


def test_single_edge():
    r = check_22(plain(2, [(1, 2)]))
    assert r.sparse and not r.tight


def test_addable():
    verts, es = plain(4, K4)
    missing = [e for e in es if e != edge("1", "2")]
    assert addable((verts, missing), "1", "2")
    with pytest.raises(ValueError):
        addable((verts, es), "1", "2")


def test_addable_pair():
    k4_minus = [e for e in K4 if e != (1, 2)]
    assert addable_pair(plain(5, k4_minus), ("1", "2"), ("1", "5"))
    # with 5 hanging off 3 and 4 there is room for a single edge only
    assert not addable_pair(plain(5, k4_minus + [(3, 5), (4, 5)]), ("1", "2"), ("1", "5"))
    with pytest.raises(ValueError):
        addable_pair(plain(5, k4_minus), ("1", "2"), ("2", "1"))


def test_closure_is_tight_set():
    verts, es = plain(5, K4 + [(4, 5)])
    game = PebbleGame(verts)
    for e in es:
        assert game.insert(*tuple(e))
    assert game.closure("1", "2") == frozenset({"1", "2", "3", "4"})


def _rand_graph(rng, n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    m = rng.randint(0, len(pairs))
    return plain(n, rng.sample(pairs, m))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10 ** 9))
def test_matches_brute_force(n, seed):
    g = _rand_graph(random.Random(seed), n)
    a, b = check_22(g), brute_force_sparse(g)
    assert (a.sparse, a.tight) == (b.sparse, b.tight)
    if not a.sparse:
        assert induced_count(g[1], a.witness) > 2 * len(a.witness) - 2


@settings(max_examples=20, deadline=None)
@given(tight_graphs())
def test_gamma_tight_invariant_under_relabel(data):
    _, g = data
    assert gamma_tight(g).ok
    h = g.relabel({v: "v" + v for v in g.vertices})
    assert gamma_tight(h).ok


def test_table3_rules():
    k4 = make_graph("C2", range(1, 5), K4, {"c2p": {1: 2, 2: 1, 3: 4, 4: 3}})
    assert gamma_tight(k4).ok
    # same graph, half-turn fixing 1 and 2: one fixed vertex pair -> fails
    bad = make_graph("C2", range(1, 5), K4, {"c2p": {1: 1, 2: 2, 3: 4, 4: 3}})
    v = gamma_tight(bad)
    assert not v.ok and any("v_c2p" in r for r in v.reasons)
    # F1 under a mirror with a fixed edge
    ci = gamma_tight(base("Ci/F1"))
    assert ci.ok and ci.counts["e_phi"] == 0


def test_c2v_is_necessary_only():
    g = make_graph("C2v", range(1, 5), K4, {"sigma": {1: 2, 2: 1, 3: 4, 4: 3},
                                             "sigma_p": {1: 2, 2: 1, 3: 4, 4: 3}})
    assert gamma_tight(g).necessary_only


def test_halfturn_blocker():
    # whole-graph counts are fine, but removing the degree-2 fixed vertex leaves a
    # tight symmetric graph with no fixed element
    es = [(1, 5), (1, 6), (1, 7), (1, 8), (4, 5), (4, 6), (4, 7), (4, 9), (6, 8), (6, 9), (7, 8), (7, 9)]
    g = make_graph("C2", [1, 4, 5, 6, 7, 8, 9], es,
                   {"c2p": {1: 4, 4: 1, 5: 5, 6: 7, 7: 6, 8: 9, 9: 8}})
    assert check_22(g).tight
    assert halfturn_blocker(g) == frozenset({"1", "4", "6", "7", "8", "9"})
    v = gamma_tight(g)
    assert not v.ok and v.report.witness


def test_base_graphs_have_no_blocker():
    for key in ("C2/K4", "C2/W5", "C2/Wd42", "C2/F2"):
        assert halfturn_blocker(base(key)) is None
