"""The compiled kernels and the pure-Python fallback must agree exactly."""
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from cplab import _backend
from cplab import graph as G
from cplab.containment import _edge_orbit_orders, pattern_for, search_order, twin_classes

from conftest import graphs

native = pytest.mark.skipif("native" not in _backend.available_backends(), reason="extension not built")


@native
@given(graphs(min_n=1, max_n=11), graphs(min_n=1, max_n=5), st.booleans())
def test_embed_agrees(host, pattern, twins):
    classes = twin_classes(host) if twins else None
    order = search_order(pattern)
    a = _backend.embed(host.rows, pattern.rows, order, classes, (), backend="native")
    b = _backend.embed(host.rows, pattern.rows, order, classes, (), backend="python")
    assert a == b


@native
@given(graphs(min_n=2, max_n=10), st.data())
def test_embed_through_agrees(host, data):
    if not host.num_edges:
        return
    u, v = data.draw(st.sampled_from(host.edges()))
    pat = data.draw(st.sampled_from([G.cycle(4), G.complete(3), G.cycle_power(6, 2), G.cycle(5)]))
    orders = _edge_orbit_orders(pat)
    cls = twin_classes(host)
    a = _backend.embed_through(host.rows, pat.rows, orders, u, v, cls, backend="native")
    b = _backend.embed_through(host.rows, pat.rows, orders, u, v, cls, backend="python")
    assert a == b


@native
@given(graphs(min_n=1, max_n=14), st.integers(1, 6))
def test_k_coloring_agrees(g, k):
    assert _backend.k_coloring(g.rows, k, backend="native") == _backend.k_coloring(g.rows, k, backend="python")


@native
@pytest.mark.parametrize("n,k,p", [(5, 3, 1), (6, 4, 1), (6, 5, 2), (6, 7, 2), (5, 5, 1)])
def test_sweeps_agree(n, k, p):
    pat = pattern_for(k, p)
    orders = _edge_orbit_orders(pat)
    assert _backend.sweep_max(n, pat.rows, orders, backend="native") == \
        _backend.sweep_max(n, pat.rows, orders, backend="python")
    assert _backend.sweep_maximal(n, pat.rows, orders, backend="native") == \
        _backend.sweep_maximal(n, pat.rows, orders, backend="python")


def test_large_orders_fall_back():
    g = G.cycle(70)
    assert _backend._pick(70, _backend.NATIVE_CAP, None).__name__.endswith("_purepy")
    assert _backend.k_coloring(g.rows, 2) is not None


def test_env_forces_fallback():
    out = subprocess.run(
        [sys.executable, "-c", "from cplab._backend import BACKEND; print(BACKEND)"],
        env=dict(os.environ, CPL_PURE_PYTHON="1"), capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_unknown_native_request():
    if "native" in _backend.available_backends():
        pytest.skip("extension present")
    with pytest.raises(RuntimeError):
        _backend.k_coloring([0], 1, backend="native")
