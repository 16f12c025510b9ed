import networkx as nx
import pytest
from hypothesis import given, strategies as st
from networkx.algorithms import isomorphism

from cplab import coloring as C
from cplab import graph as G
from cplab.containment import (Embedding, contains, contains_through, creates_copy, greedy_color_count,
                               is_free, pattern_for, search_order, twin_classes)
from cplab.params import decompose

from conftest import graphs, random_graph


def nx_contains(host, pattern):
    h = nx.Graph(host.edges())
    h.add_nodes_from(range(host.order))
    q = nx.Graph(pattern.edges())
    q.add_nodes_from(range(pattern.order))
    return isomorphism.GraphMatcher(h, q).subgraph_is_monomorphic()


def test_examples():
    emb = contains(G.complete(7), G.cycle_power(7, 2))
    assert emb is not None
    emb.validate(G.complete(7), G.cycle_power(7, 2))
    assert contains(G.turan(9, 3), G.cycle_power(7, 2)) is None
    assert contains(G.extremal_construction(12, 11, 2), G.cycle_power(11, 2)) is None
    assert is_free(G.turan(15, 3), 7, 2)
    for k in range(3, 9):
        for p in range(1, 4):
            assert not is_free(G.complete(k), k, p)
    assert is_free(G.complete(5), 6, 1)


def test_search_order_is_cycle_order():
    assert search_order(G.cycle_power(11, 2)) == list(range(11))


@given(graphs(min_n=3, max_n=9), graphs(min_n=1, max_n=5))
def test_contains_matches_networkx(host, pattern):
    emb = contains(host, pattern)
    assert (emb is not None) == nx_contains(host, pattern)
    if emb is not None:
        emb.validate(host, pattern)


@given(graphs(min_n=3, max_n=9), graphs(min_n=1, max_n=5))
def test_twin_pruning_does_not_change_answer(host, pattern):
    assert (contains(host, pattern) is None) == (contains(host, pattern, use_twins=False) is None)


@given(graphs(min_n=2, max_n=10))
def test_twin_classes_are_automorphisms(g):
    cls = twin_classes(g)
    for u in range(g.order):
        for v in range(u + 1, g.order):
            if cls[u] == cls[v]:
                perm = list(range(g.order))
                perm[u], perm[v] = v, u
                assert g.relabel(perm) == g


@pytest.mark.parametrize("k,p", [(5, 2), (6, 1), (7, 2), (8, 2), (9, 3), (7, 3)])
def test_freeness_against_networkx(k, p, rng):
    pat = pattern_for(k, p)
    for _ in range(25):
        host = random_graph(rng.randrange(k, k + 3), rng.uniform(0.5, 0.95), rng)
        assert is_free(host, k, p) == (not nx_contains(host, pat))


@pytest.mark.parametrize("k", range(3, 9))
def test_complete_regime_is_clique_freeness(k, rng):
    # for p >= floor(k/2) the pattern is K_k
    for _ in range(30):
        host = random_graph(rng.randrange(k, k + 4), rng.uniform(0.4, 0.95), rng)
        h = nx.Graph(host.edges())
        has_clique = any(len(c) >= k for c in nx.find_cliques(h)) if h.number_of_edges() else k <= 1
        assert is_free(host, k, k // 2) == (not has_clique)


@pytest.mark.parametrize("k,p", [(7, 2), (8, 2), (11, 2), (10, 3)])
def test_chromatic_prefilter_consistent(k, p, rng):
    chi_f = decompose(k, p).chi_predicted
    for _ in range(30):
        host = random_graph(rng.randrange(k, k + 4), rng.uniform(0.5, 0.95), rng)
        fast = is_free(host, k, p)
        slow = contains(host, pattern_for(k, p)) is None
        assert fast == slow
        if C.chromatic_number(host) <= chi_f - 1:
            assert slow


@given(graphs(min_n=1, max_n=12))
def test_greedy_color_count_is_upper_bound(g):
    assert greedy_color_count(g) >= C.chromatic_number(g)


@given(graphs(min_n=5, max_n=9), st.data())
def test_monotone_under_edge_addition(host, data):
    if is_free(host, 5, 1):
        return
    non = host.non_edges()
    if non:
        extra = data.draw(st.lists(st.sampled_from(non), max_size=4))
        assert not is_free(host.with_edges(extra), 5, 1)


@given(graphs(min_n=4, max_n=9), st.data())
def test_contains_through_uses_edge(host, data):
    if not host.num_edges:
        return
    u, v = data.draw(st.sampled_from(host.edges()))
    pat = G.cycle(4)
    emb = contains_through(host, pat, u, v)
    if emb is not None:
        emb.validate(host, pat)
        assert (u, v) in emb.image_edges(pat)
    # oracle: enumerate every embedding
    expected = any(
        (u, v) in e.image_edges(pat) for e in _all_embeddings(host, pat)
    )
    assert (emb is not None) == expected


def _all_embeddings(host, pattern):
    h = nx.Graph(host.edges())
    h.add_nodes_from(range(host.order))
    q = nx.Graph(pattern.edges())
    q.add_nodes_from(range(pattern.order))
    for m in isomorphism.GraphMatcher(h, q).subgraph_monomorphisms_iter():
        inv = {b: a for a, b in m.items()}
        yield Embedding(tuple(inv[i] for i in range(pattern.order)))


def test_creates_copy():
    t = G.turan(9, 3)
    u, v = t.non_edges()[0]
    emb = creates_copy(t, 7, 2, u, v)
    assert emb is not None
    emb.validate(t.with_edges([(u, v)]), pattern_for(7, 2))


def test_contains_through_rejects_non_edge():
    with pytest.raises(ValueError):
        contains_through(G.empty(3), G.complete(2), 0, 1)


def test_embedding_validate_rejects_bad_maps():
    with pytest.raises(AssertionError):
        Embedding((0, 0)).validate(G.complete(3), G.complete(2))
    with pytest.raises(AssertionError):
        Embedding((0, 2)).validate(G.cycle(4), G.complete(2))
