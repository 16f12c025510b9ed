import json
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cplab import graph as G
from cplab import spectral as S
from cplab.errors import MalformedParameter, NonEquitablePartition
from cplab.graph import VertexPartition

from conftest import graphs, random_connected


def eig_oracle(g):
    if g.order == 0:
        return 0.0
    return float(np.linalg.eigvalsh(g.to_numpy().astype(float))[-1])


def test_examples():
    assert S.spectral_radius(G.complete(5)).lam == pytest.approx(4, abs=1e-10)
    assert S.spectral_radius(G.turan(6, 3)).lam == pytest.approx(4, abs=1e-10)
    # lambda^2 = 4 lambda + 6 for T_{7,4}
    assert S.spectral_radius(G.turan(7, 4)).lam == pytest.approx(2 + sqrt(10), abs=1e-10)


@given(graphs(min_n=1, max_n=12))
def test_matches_eigvalsh(g):
    res = S.spectral_radius(g)
    assert res.converged
    assert abs(res.lam - eig_oracle(g)) <= 1e-9
    assert np.max(res.perron) == 1.0
    assert np.all(res.perron >= 0)
    assert res.residual <= S.DEFAULT_TOL * max(1, res.lam)
    assert res.lam >= S.rayleigh_lower_bound(g) - 1e-12


def test_bipartite_needs_shift():
    for a, b in [(1, 1), (2, 3), (1, 7), (4, 4)]:
        assert S.spectral_radius(G.complete_multipartite([a, b])).lam == pytest.approx(sqrt(a * b), abs=1e-10)


def test_disconnected_takes_max_component():
    g = G.disjoint_union(G.cycle(5), G.complete(4))
    res = S.spectral_radius(g)
    assert res.lam == pytest.approx(3, abs=1e-10)
    assert np.all(res.perron[:5] == 0)
    assert S.spectral_radius(G.empty(3)).lam == 0


def test_errors():
    with pytest.raises(MalformedParameter):
        S.spectral_radius(G.empty(0))
    with pytest.raises(MalformedParameter):
        S.spectral_radius(G.complete(3), tol=0)
    with pytest.raises(MalformedParameter):
        S.matrix_spectral_radius([[0, 1, 2], [1, 0, 1]])
    with pytest.raises(MalformedParameter):
        S.matrix_spectral_radius([[0, -1], [1, 0]])
    with pytest.raises(MalformedParameter):
        S.joined_quotient(0, [2, 2])
    with pytest.raises(MalformedParameter):
        S.joined_quotient(2, [2, 0])


def test_iteration_cap_reports_failure():
    res = S.spectral_radius(G.turan(7, 4), tol=1e-15, max_iter=3)
    assert not res.converged and res.iterations == 3


def test_rayleigh_examples():
    assert S.rayleigh_lower_bound(G.complete(5)) == 4
    assert S.rayleigh_lower_bound(G.empty(4)) == 0
    assert S.rayleigh_lower_bound(G.extremal_construction(60, 7, 2)) >= 40


# ---------------------------------------------------------------- equitable partitions


def is_equitable(g, part):
    try:
        S.quotient_matrix(g, part)
        return True
    except NonEquitablePartition:
        return False


def test_refinement_examples():
    assert len(S.equitable_refinement(G.cycle(6), VertexPartition.trivial(6))) == 1
    p = S.equitable_refinement(G.turan(7, 4), VertexPartition.trivial(7))
    assert sorted(p.sizes) == [1, 6]
    g = G.join(G.complete(1), G.complete_multipartite([3, 3, 3]))
    p = S.equitable_refinement(g, VertexPartition.trivial(10))
    assert sorted(p.sizes) == [1, 9]


@given(graphs(min_n=1, max_n=10))
def test_refinement_is_equitable_and_refines(g):
    start = VertexPartition.from_labels([g.degree(v) % 2 for v in range(g.order)])
    p = S.equitable_refinement(g, start)
    assert is_equitable(g, p)
    lab0, lab1 = start.labels(), p.labels()
    for u in range(g.order):
        for v in range(g.order):
            if lab1[u] == lab1[v]:
                assert lab0[u] == lab0[v]


def test_quotient_examples():
    g = G.turan(6, 3)
    q = S.quotient_matrix(g, VertexPartition([[0, 1], [2, 3], [4, 5]]))
    assert q.entries == ((0, 2, 2), (2, 0, 2), (2, 2, 0))
    j = G.join(G.complete(1), G.complete_multipartite([3, 3, 3]))
    q = S.quotient_matrix(j, VertexPartition([[0], [1, 2, 3], [4, 5, 6], [7, 8, 9]]))
    assert q.entries[0] == (0, 3, 3, 3)
    assert q.entries[1] == (1, 0, 3, 3)
    q = S.quotient_matrix(G.cycle(7), VertexPartition.trivial(7))
    assert q.entries == ((2,),)
    assert json.loads(json.dumps(q.to_json())) == {"entries": [[2]], "blockSizes": [7]}


def test_quotient_rejects_non_equitable():
    with pytest.raises(NonEquitablePartition) as info:
        S.quotient_matrix(G.turan(7, 4), VertexPartition.trivial(7))
    assert info.value.u is not None


@given(graphs(min_n=1, max_n=10))
def test_quotient_symmetry(g):
    p = S.equitable_refinement(g, VertexPartition.trivial(g.order))
    q = S.quotient_matrix(g, p)
    for i, si in enumerate(q.block_sizes):
        for j, sj in enumerate(q.block_sizes):
            assert q.entries[i][j] * si == q.entries[j][i] * sj


def test_matrix_examples():
    assert S.matrix_spectral_radius([[0, 2, 2], [2, 0, 2], [2, 2, 0]]) == pytest.approx(4)
    assert S.matrix_spectral_radius([[0, 9], [1, 6]]) == pytest.approx(3 + 3 * sqrt(2), abs=1e-10)
    assert S.matrix_spectral_radius([[5]]) == pytest.approx(5)


def connected_family():
    yield from (G.turan(n, r) for n in range(4, 16) for r in range(2, 6) if n >= r)
    yield from (G.cycle_power(k, p) for p in range(1, 4) for k in range(2 * p + 1, 15))
    for k, p in [(7, 2), (8, 2), (11, 2), (13, 3), (17, 3)]:
        for n in (12, 20, 33):
            yield G.extremal_construction(n, k, p)


def test_quotient_agreement_family():
    for g in connected_family():
        p = S.equitable_refinement(g, VertexPartition.trivial(g.order))
        lam_q = S.matrix_spectral_radius(S.quotient_matrix(g, p))
        assert abs(lam_q - S.spectral_radius(g).lam) <= 10 * S.DEFAULT_TOL * max(1, lam_q)


@given(st.randoms(use_true_random=False), st.integers(2, 12))
def test_quotient_agreement_random(r, n):
    g = random_connected(n, 0.3, r)
    p = S.equitable_refinement(g, VertexPartition.trivial(n))
    assert abs(S.matrix_spectral_radius(S.quotient_matrix(g, p)) - eig_oracle(g)) <= 1e-9


# ---------------------------------------------------------------- joined multipartite


def test_joined_examples():
    js = S.joined_multipartite_spectrum(2, (3, 3, 3))
    lam = 3 + 3 * sqrt(2)
    assert js.lam == pytest.approx(lam, abs=1e-10)
    assert js.apex == 1.0
    assert js.parts[0] == pytest.approx((lam + 1) / (lam + 3), abs=1e-10)
    # collapsed 2x2: lambda x = 6x + 1
    assert lam * js.parts[0] == pytest.approx(6 * js.parts[0] + 1, abs=1e-9)
    js = S.joined_multipartite_spectrum(1, (2, 2, 2))
    assert js.lam == pytest.approx(4) and js.apex is None and set(js.parts) == {1.0}
    bal = S.matrix_spectral_radius(S.joined_quotient(2, (3, 3, 3)))
    unb = S.matrix_spectral_radius(S.joined_quotient(2, (4, 3, 2)))
    assert bal > unb


@pytest.mark.parametrize("t", range(1, 5))
def test_joined_matches_graph(t, rng):
    for _ in range(10):
        parts = [rng.randrange(1, 6) for _ in range(rng.randrange(1, 5))]
        js = S.joined_multipartite_spectrum(t, parts)
        g = G.joined_multipartite(t - 1, parts)
        assert abs(js.lam - eig_oracle(g)) <= 1e-9
        assert js.eigensystem_residual() <= 1e-9


def test_closed_form_grid():
    worst = 0.0
    for t in range(1, 5):
        for q in range(1, 6):
            for base in range(1, 13):
                parts = [max(1, (base + 3 * i) % 13) for i in range(q)]
                js = S.joined_multipartite_spectrum(t, parts)
                worst = max(worst, js.closed_form_residual())
                if t >= 2:
                    for x, c in zip(js.parts, js.closed_form_entries()):
                        assert abs(x - c) <= 1e-9
    assert worst <= 1e-9


def test_profiles():
    profs = list(S.part_profiles(7, 3))
    assert profs == [(5, 1, 1), (4, 2, 1), (3, 3, 1), (3, 2, 2)]
    assert S.balanced_profile(7, 3) == (3, 2, 2)
    assert S.exchange_step((5, 1, 1)) == (4, 2, 1)
    assert S.exchange_step((3, 2, 2)) == (3, 2, 2)


@given(st.integers(2, 20), st.integers(1, 5))
def test_profiles_complete(total, count):
    profs = list(S.part_profiles(total, count))
    assert len(set(profs)) == len(profs)
    assert all(sum(p) == total and list(p) == sorted(p, reverse=True) and min(p) >= 1 for p in profs)
    if total >= count:
        assert S.balanced_profile(total, count) in profs


@pytest.mark.parametrize("t", [1, 2, 3])
def test_exchange_increases_lambda(t):
    for total in range(4, 19):
        for count in range(2, 5):
            for prof in S.part_profiles(total, count):
                nxt = S.exchange_step(prof)
                if nxt == prof:
                    continue
                a = S.matrix_spectral_radius(S.joined_quotient(t, prof))
                b = S.matrix_spectral_radius(S.joined_quotient(t, nxt))
                assert b - a > 1e-9


@given(st.randoms(use_true_random=False), st.integers(3, 20))
def test_edge_monotonicity(r, n):
    g = random_connected(n, r.uniform(0.05, 0.6), r)
    non = g.non_edges()
    if not non:
        return
    e = non[r.randrange(len(non))]
    assert S.spectral_radius(g.with_edges([e])).lam - S.spectral_radius(g).lam > 1e-9


def test_result_json():
    d = S.spectral_radius(G.cycle(4)).to_json()
    assert json.loads(json.dumps(d))["lambda"] == pytest.approx(2)


def test_turan_radius_at_most_bound():
    # lambda(T_{n,r}) <= (1 - 1/r) n, with equality exactly when r divides n
    for n in range(2, 41):
        for r in range(2, min(n, 9) + 1):
            diff = S.spectral_radius(G.turan(n, r)).lam - (1 - 1 / r) * n
            if n % r == 0:
                assert abs(diff) <= 1e-9
            else:
                assert diff < -1e-9


def test_rayleigh_bound_strict_with_apex():
    from cplab.params import decompose

    for n in (30, 60):
        for p in range(1, 5):
            for k in range(2 * p + 1, 21):
                prm = decompose(k, p)
                if not prm.r or prm.t < 2:
                    continue
                lam = S.spectral_radius(G.extremal_construction(n, k, p)).lam
                assert lam - (1 - 1 / prm.p_prime) * n > 1e-9
