"""Exact chromatic numbers, the explicit colourings of C_k^p, and
colour-t-criticality certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from . import _backend
from .errors import BudgetExceeded, NotApplicable, SolverCapExceeded
from .graph import Graph, iter_bits
from .params import decompose

EXACT_CAP = 40


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        if any(c < 0 or c >= self.palette_size for c in self.assignment):
            raise ValueError(f"colour outside palette of size {self.palette_size}")

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.palette_size)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def to_json(self) -> list[int]:
        return list(self.assignment)


def monochromatic_edges(g: Graph, c: Coloring) -> list[tuple[int, int]]:
    if len(c.assignment) != g.order:
        raise ValueError("colouring is not total on the vertex set")
    return [(u, v) for u, v in g.edges() if c.assignment[u] == c.assignment[v]]


def is_proper(g: Graph, c: Coloring) -> bool:
    return not monochromatic_edges(g, c)


def greedy_clique(g: Graph) -> list[int]:
    """A maximal clique grown greedily by degree inside the candidate set."""
    deg = g.degrees()
    clique: list[int] = []
    cand = (1 << g.order) - 1
    while cand:
        v = max(iter_bits(cand), key=lambda w: ((g.rows[w] & cand).bit_count(), deg[w], -w))
        clique.append(v)
        cand &= g.rows[v]
    return clique


def k_coloring(g: Graph, k: int, backend=None) -> Optional[Coloring]:
    found = _backend.k_coloring(g.rows, k, backend=backend)
    if found is None:
        return None
    return Coloring(tuple(found), k)


def is_k_colorable(g: Graph, k: int, backend=None) -> bool:
    return _backend.k_coloring(g.rows, k, backend=backend) is not None


def chromatic_number(g: Graph, cap: int = EXACT_CAP, backend=None) -> int:
    """Exact chromatic number: clique lower bound, then the smallest k for
    which the DSATUR branch-and-bound finds a k-colouring."""
    if g.order > cap:
        raise SolverCapExceeded(f"exact solver out of range: order {g.order} > cap {cap}")
    if g.order == 0:
        return 0
    if g.num_edges == 0:
        return 1
    k = len(greedy_clique(g))
    while not is_k_colorable(g, k, backend=backend):
        k += 1
    return k


def optimal_coloring(g: Graph, cap: int = EXACT_CAP) -> Coloring:
    chi = chromatic_number(g, cap)
    return k_coloring(g, chi)


# ---------------------------------------------------------------- C_k^p colourings


def _require_r_nonzero(k: int, p: int):
    prm = decompose(k, p)
    if prm.r == 0:
        raise NotApplicable(f"r = 0 for (k={k}, p={p}); use paper_coloring_r0 (colour i mod p+1)")
    return prm


def paper_coloring_r0(k: int, p: int) -> Coloring:
    """v_i gets colour i mod (p+1); proper when p+1 divides k."""
    prm = decompose(k, p)
    if prm.r != 0:
        raise NotApplicable(f"r = {prm.r} != 0 for (k={k}, p={p})")
    return Coloring(tuple(i % (p + 1) for i in range(k)), p + 1)


def paper_coloring_f(k: int, p: int) -> Coloring:
    """(p+m+2)-colouring: the first t(p+m+2) vertices cycle through p+m+2
    colours, the remaining (s-t)(p+m+1) through p+m+1 colours."""
    prm = _require_r_nonzero(k, p)
    big = p + prm.m + 2
    head = prm.t * big
    colors = [i % big if i < head else (i - head) % (big - 1) for i in range(k)]
    return Coloring(tuple(colors), big)


def critical_edge_set_B(k: int, p: int) -> list[tuple[int, int]]:
    """The t edges v_{j(p+m+2)+p+m} v_{(j+1)(p+m+2)-1}, j < t."""
    prm = _require_r_nonzero(k, p)
    big = p + prm.m + 2
    return [(j * big + big - 2, (j + 1) * big - 1) for j in range(prm.t)]


def paper_coloring_g(k: int, p: int) -> Coloring:
    """Recolour f with p+m+1 colours: in the head, colour p+m+1 becomes p+m.
    Proper on C_k^p minus the edges of :func:`critical_edge_set_B`."""
    prm = _require_r_nonzero(k, p)
    big = p + prm.m + 2
    head = prm.t * big
    f = paper_coloring_f(k, p).assignment
    colors = [big - 2 if i < head and i % big == big - 1 else f[i] for i in range(k)]
    return Coloring(tuple(colors), big - 1)


# ---------------------------------------------------------------- criticality


def _edge_text(e: tuple[int, int]) -> str:
    return f"{e[0]}-{e[1]}"


@dataclass
class CriticalityReport:
    target: int
    chi: int
    edge_set_b: Optional[list[tuple[int, int]]]
    edge_removal_drops_chi: bool
    worst_vertex_subset: Optional[list[int]]
    verdict: bool
    matchings_checked: int = 0
    subsets_checked: int = 0
    complete: bool = True
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "chi": self.chi,
            "edgeSetB": None if self.edge_set_b is None else [_edge_text(e) for e in self.edge_set_b],
            "edgeRemovalDropsChi": self.edge_removal_drops_chi,
            "worstVertexSubset": self.worst_vertex_subset,
            "verdict": self.verdict,
            "matchingsChecked": self.matchings_checked,
            "subsetsChecked": self.subsets_checked,
            "complete": self.complete,
        }


def _matchings(edges: Sequence[tuple[int, int]], size: int, start: int = 0, used: int = 0):
    if size == 0:
        yield []
        return
    for i in range(start, len(edges) - size + 1):
        u, v = edges[i]
        if used >> u & 1 or used >> v & 1:
            continue
        for rest in _matchings(edges, size - 1, i + 1, used | (1 << u) | (1 << v)):
            yield [edges[i]] + rest


def is_color_k_critical(g: Graph, target: int, budget: int = 200_000,
                        chi: Optional[int] = None) -> CriticalityReport:
    """Decide colour-``target``-criticality of ``g``.

    Searches matchings of size ``target`` (any edge set whose removal lowers
    chi must be a matching) for one whose removal makes g (chi-1)-colourable,
    then checks that no deletion of ``target-1`` vertices lowers chi.
    ``budget`` bounds the total number of solver calls.
    """
    if target < 1:
        raise ValueError(f"target must be >= 1, got {target}")
    if chi is None:
        chi = chromatic_number(g)
    report = CriticalityReport(target, chi, None, False, None, False)
    calls = 0

    for m in _matchings(g.edges(), target):
        calls += 1
        report.matchings_checked += 1
        if calls > budget:
            report.complete = False
            raise BudgetExceeded(f"matching search exceeded budget {budget}", report)
        if is_k_colorable(g.without_edges(m), chi - 1):
            report.edge_set_b = m
            report.edge_removal_drops_chi = True
            break

    holds = True
    for s in combinations(range(g.order), target - 1):
        calls += 1
        report.subsets_checked += 1
        if calls > budget:
            report.complete = False
            raise BudgetExceeded(f"vertex-deletion sweep exceeded budget {budget}", report)
        if is_k_colorable(g.delete_vertices(s), chi - 1):
            report.worst_vertex_subset = list(s)
            holds = False
            break

    report.verdict = report.edge_removal_drops_chi and holds
    return report
