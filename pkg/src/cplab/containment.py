"""Subgraph (not induced) containment of small patterns, and C_k^p-freeness."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from . import _backend
from .graph import Graph, cycle_power, iter_bits
from .params import chi_of_cycle_power


@dataclass(frozen=True)
class Embedding:
    """``mapping[i]`` is the host vertex receiving pattern vertex ``i``."""

    mapping: tuple[int, ...]

    def validate(self, host: Graph, pattern: Graph) -> None:
        if len(self.mapping) != pattern.order:
            raise AssertionError("embedding does not cover the pattern")
        if len(set(self.mapping)) != len(self.mapping):
            raise AssertionError("embedding is not injective")
        for a, b in pattern.edges():
            if not host.has_edge(self.mapping[a], self.mapping[b]):
                raise AssertionError(f"pattern edge {a}-{b} not mapped to a host edge")

    def image_edges(self, pattern: Graph) -> list[tuple[int, int]]:
        out = []
        for a, b in pattern.edges():
            x, y = self.mapping[a], self.mapping[b]
            out.append((min(x, y), max(x, y)))
        return out


def search_order(pattern: Graph, first: Sequence[int] = ()) -> list[int]:
    """Descending degree, then most already-placed neighbours, then index.

    On a cycle power this is the cycle order v_0, v_1, ...
    """
    order = list(first)
    placed = 0
    for v in order:
        placed |= 1 << v
    deg = pattern.degrees()
    rest = set(range(pattern.order)) - set(order)
    while rest:
        v = max(rest, key=lambda w: ((pattern.rows[w] & placed).bit_count(), deg[w], -w))
        order.append(v)
        placed |= 1 << v
        rest.discard(v)
    return order


def twin_classes(g: Graph) -> list[int]:
    """Class id per vertex; vertices with equal open or equal closed
    neighbourhoods share a class (swapping two of them is an automorphism)."""
    cls = list(range(g.order))
    open_groups: dict[int, list[int]] = {}
    closed_groups: dict[int, list[int]] = {}
    for v, row in enumerate(g.rows):
        open_groups.setdefault(row, []).append(v)
        closed_groups.setdefault(row | (1 << v), []).append(v)
    for groups in (open_groups, closed_groups):
        for members in groups.values():
            if len(members) > 1:
                for v in members:
                    cls[v] = members[0]
    return cls


@lru_cache(maxsize=256)
def _edge_orbit_orders(pattern: Graph) -> tuple[tuple[int, ...], ...]:
    """Search orders starting at one representative per orbit of oriented
    pattern edges under Aut(pattern)."""
    reps: list[tuple[int, int]] = []
    orders: list[tuple[int, ...]] = []
    for a, b in pattern.edges():
        for x, y in ((a, b), (b, a)):
            covered = False
            for (ra, rb), order in zip(reps, orders):
                if _backend.embed(pattern.rows, pattern.rows, order, None, (x, y)) is not None:
                    covered = True
                    break
            if not covered:
                reps.append((x, y))
                orders.append(tuple(search_order(pattern, (x, y))))
    return tuple(orders)


@lru_cache(maxsize=64)
def _cached_pattern(k: int, p: int) -> Graph:
    return cycle_power(k, p)


def pattern_for(k: int, p: int) -> Graph:
    """C_k^p, memoised."""
    return _cached_pattern(k, p)


def contains(host: Graph, pattern: Graph, *, use_twins: bool = True, backend=None) -> Optional[Embedding]:
    """An embedding of ``pattern`` into ``host`` as a subgraph, or None."""
    if pattern.order > host.order or pattern.num_edges > host.num_edges:
        return None
    hd = sorted(host.degrees(), reverse=True)
    if any(d > hd[i] for i, d in enumerate(sorted(pattern.degrees(), reverse=True))):
        return None
    classes = twin_classes(host) if use_twins else None
    found = _backend.embed(host.rows, pattern.rows, search_order(pattern), classes, (), backend=backend)
    return None if found is None else Embedding(tuple(found))


def contains_through(host: Graph, pattern: Graph, u: int, v: int, *, use_twins: bool = True,
                     backend=None) -> Optional[Embedding]:
    """An embedding whose image uses the host edge uv, or None."""
    if not host.has_edge(u, v):
        raise ValueError(f"{u}-{v} is not an edge of the host")
    if pattern.order > host.order or pattern.num_edges == 0:
        return None
    classes = twin_classes(host) if use_twins else None
    found = _backend.embed_through(host.rows, pattern.rows, _edge_orbit_orders(pattern), u, v,
                                   classes, backend=backend)
    return None if found is None else Embedding(tuple(found))


def greedy_color_count(g: Graph) -> int:
    """Colours used by greedy DSATUR (an upper bound on the chromatic number)."""
    n = g.order
    color = [-1] * n
    deg = g.degrees()
    sat = [0] * n
    seen = [0] * n
    used = 0
    for _ in range(n):
        v = max((w for w in range(n) if color[w] < 0), key=lambda w: (sat[w], deg[w], -w))
        c = 0
        while seen[v] >> c & 1:
            c += 1
        color[v] = c
        used = max(used, c + 1)
        for w in iter_bits(g.rows[v]):
            if not seen[w] >> c & 1:
                seen[w] |= 1 << c
                sat[w] += 1
    return used


def is_free(host: Graph, k: int, p: int, *, prefilter: bool = True, backend=None) -> bool:
    """True iff ``host`` has no subgraph isomorphic to C_k^p."""
    if k < 3:
        raise ValueError(f"cycle length must be >= 3, got {k}")
    if host.order < k:
        return True
    if prefilter and greedy_color_count(host) < chi_of_cycle_power(k, p):
        # a graph coloured with fewer than chi(C_k^p) colours cannot contain it
        return True
    return contains(host, pattern_for(k, p), backend=backend) is None


def creates_copy(host: Graph, k: int, p: int, u: int, v: int, backend=None) -> Optional[Embedding]:
    """For an F-free ``host`` and non-edge uv: a copy of C_k^p in host + uv, if any."""
    return contains_through(host.with_edges([(u, v)]), pattern_for(k, p), u, v, backend=backend)
