import random

import pytest
from hypothesis import settings, strategies as st

from cplab.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    slots = n * (n - 1) // 2
    mask = draw(st.integers(0, (1 << slots) - 1)) if slots else 0
    return Graph.from_edge_mask(n, mask)


def random_graph(n, density, rng):
    return Graph.from_edges(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < density])


def random_connected(n, density, rng):
    """Random spanning tree plus extra random edges."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    edges |= {(u, v) for v in range(n) for u in range(v) if rng.random() < density}
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("CPL_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
