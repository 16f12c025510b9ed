"""Immutable simple graphs on bitset rows, the graph families used throughout,
and graph6 / DOT interchange.

Row ``u`` of a graph is a Python int with bit ``v`` set iff ``u ~ v``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DegenerateConstruction, Graph6Error, MalformedParameter, NotApplicable
from .params import decompose, turan_parts

INF = math.inf

# orders up to this size go through the native kernels
WORD_CAP = 64


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """A simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_rows", "_m")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise MalformedParameter(f"order must be >= 0, got {n}")
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for u, row in enumerate(rows):
            if row & ~full:
                raise ValueError(f"row {u} references a vertex >= {n}")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in iter_bits(row):
                if not rows[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        self._n = n
        self._rows = rows
        self._m = sum(r.bit_count() for r in rows) // 2

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]) -> "Graph":
        g = object.__new__(cls)
        g._n = n
        g._rows = rows
        g._m = sum(r.bit_count() for r in rows) // 2
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for order {n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Inverse of :meth:`edge_mask` (slots in graph6 column order)."""
        rows = [0] * n
        s = 0
        for j in range(1, n):
            for i in range(j):
                if mask >> s & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                s += 1
        return cls._trusted(n, tuple(rows))

    @property
    def order(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def num_edges(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self._rows[u]))

    def degree(self, u: int) -> int:
        return self._rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in iter_bits(self._rows[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self._n), 2) if not self._rows[u] >> v & 1]

    def edge_mask(self) -> int:
        mask = 0
        s = 0
        for j in range(1, self._n):
            for i in range(j):
                if self._rows[i] >> j & 1:
                    mask |= 1 << s
                s += 1
        return mask

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self._rows)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph._trusted(self._n, tuple(rows))

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self._rows)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph._trusted(self._n, tuple(rows))

    def delete_vertices(self, removed: Iterable[int]) -> "Graph":
        """Induced subgraph on the remaining vertices, relabelled in order."""
        gone = set(removed)
        keep = [v for v in range(self._n) if v not in gone]
        return self.induced(keep)

    def induced(self, keep: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for w in iter_bits(self._rows[v]):
                i = index.get(w)
                if i is not None:
                    r |= 1 << i
            rows.append(r)
        return Graph._trusted(len(keep), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is old vertex ``perm[i]``."""
        return self.induced(perm)

    def complement(self) -> "Graph":
        full = (1 << self._n) - 1
        return Graph._trusted(self._n, tuple(full & ~r & ~(1 << u) for u, r in enumerate(self._rows)))

    def components(self) -> list[list[int]]:
        seen = 0
        out = []
        for s in range(self._n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for u in iter_bits(frontier):
                    nxt |= self._rows[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(list(iter_bits(comp)))
        return out

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    def to_numpy(self):
        import numpy as np

        a = np.zeros((self._n, self._n), dtype=float)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a


@dataclass(frozen=True)
class VertexPartition:
    """Ordered blocks of a vertex set; validated to be disjoint, nonempty and covering."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]], order: int | None = None):
        bl = tuple(tuple(sorted(b)) for b in blocks)
        seen: set[int] = set()
        for i, b in enumerate(bl):
            if not b:
                raise ValueError(f"block {i} is empty")
            for v in b:
                if v in seen:
                    raise ValueError(f"vertex {v} appears in more than one block")
                seen.add(v)
        n = len(seen) if order is None else order
        if seen != set(range(n)):
            raise ValueError(f"blocks do not cover exactly the vertices 0..{n - 1}")
        object.__setattr__(self, "blocks", bl)

    @classmethod
    def trivial(cls, n: int) -> "VertexPartition":
        return cls([range(n)] if n else [], n)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "VertexPartition":
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(labels):
            groups.setdefault(c, []).append(v)
        return cls(groups.values(), len(labels))

    @property
    def order(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def labels(self) -> list[int]:
        lab = [0] * self.order
        for i, b in enumerate(self.blocks):
            for v in b:
                lab[v] = i
        return lab

    def __len__(self) -> int:
        return len(self.blocks)


# ---------------------------------------------------------------- families


def empty(n: int) -> Graph:
    return Graph._trusted(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full ^ (1 << u) for u in range(n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise MalformedParameter(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_multipartite(parts: Sequence[int]) -> Graph:
    """Complement of the disjoint union of cliques K_{n_1}, ..., K_{n_r}."""
    if not parts:
        raise MalformedParameter("complete_multipartite needs at least one part")
    if any(x < 1 for x in parts):
        raise MalformedParameter(f"part sizes must be >= 1, got {list(parts)}")
    n = sum(parts)
    full = (1 << n) - 1
    rows = []
    start = 0
    for size in parts:
        block = ((1 << size) - 1) << start
        rows.extend([full & ~block] * size)
        start += size
    return Graph._trusted(n, tuple(rows))


def turan(n: int, r: int) -> Graph:
    """T_{n,r}; parts are laid out largest first on consecutive vertices."""
    if r < 1:
        raise MalformedParameter(f"turan needs r >= 1, got {r}")
    sizes = [x for x in turan_parts(n, r) if x > 0]
    if not sizes:
        return empty(0)
    return complete_multipartite(sizes)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.order
    return Graph._trusted(g.order + h.order, g.rows + tuple(r << shift for r in h.rows))


def join(g: Graph, h: Graph) -> Graph:
    a, b = g.order, h.order
    gmask = (1 << a) - 1
    hmask = ((1 << b) - 1) << a
    rows = tuple(r | hmask for r in g.rows) + tuple((r << a) | gmask for r in h.rows)
    return Graph._trusted(a + b, rows)


def distances_from(g: Graph, u: int) -> list[float]:
    if not 0 <= u < g.order:
        raise IndexError(f"vertex {u} out of range for order {g.order}")
    dist: list[float] = [INF] * g.order
    dist[u] = 0
    seen = 1 << u
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for w in iter_bits(frontier):
            nxt |= g.rows[w]
        frontier = nxt & ~seen
        seen |= frontier
        for w in iter_bits(frontier):
            dist[w] = d
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    """BFS distance; ``math.inf`` when u and v lie in different components."""
    if not 0 <= v < g.order:
        raise IndexError(f"vertex {v} out of range for order {g.order}")
    return distances_from(g, u)[v]


def power(g: Graph, p: int) -> Graph:
    """Join every pair at distance 1..p."""
    if p < 1:
        raise MalformedParameter(f"power needs p >= 1, got {p}")
    rows = []
    for u in range(g.order):
        seen = (1 << u) | g.rows[u]
        frontier = g.rows[u]
        for _ in range(p - 1):
            if not frontier:
                break
            nxt = 0
            for w in iter_bits(frontier):
                nxt |= g.rows[w]
            frontier = nxt & ~seen
            seen |= frontier
        rows.append(seen & ~(1 << u))
    return Graph._trusted(g.order, tuple(rows))


def cycle_power(k: int, p: int) -> Graph:
    return power(cycle(k), p)


def extremal_construction(n: int, k: int, p: int) -> Graph:
    """K_{t-1} v T_{n-t+1,p'}; the apex clique occupies vertices 0..t-2."""
    prm = decompose(k, p)
    if prm.r == 0:
        raise NotApplicable(f"r = 0 for (k={k}, p={p}); the joined Turan construction is not defined")
    if n < prm.min_order():
        raise DegenerateConstruction(
            f"n={n} too small: need n >= t-1+p' = {prm.min_order()} for (k={k}, p={p})"
        )
    return join(complete(prm.t - 1), turan(n - prm.t + 1, prm.p_prime))


def joined_multipartite(apex: int, parts: Sequence[int]) -> Graph:
    """K_apex v K_{parts}."""
    return join(complete(apex), complete_multipartite(parts))


# ---------------------------------------------------------------- graph6


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def graph6_encode(g: Graph) -> str:
    n = g.order
    nbits = n * (n - 1) // 2
    mask = g.edge_mask()
    out = [_encode_n(n)]
    for start in range(0, nbits, 6):
        group = 0
        for b in range(6):
            s = start + b
            group = (group << 1) | (mask >> s & 1 if s < nbits else 0)
        out.append(chr(63 + group))
    return "".join(out)


def graph6_decode(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    base = 0
    if text.startswith(">>graph6<<"):
        base = 10
        text = text[10:]
    if not text:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 character {ch!r}", base + i)

    def val(i: int) -> int:
        return ord(text[i]) - 63

    if text[0] != "~":
        n, pos = val(0), 1
    elif len(text) >= 2 and text[1] == "~":
        if len(text) < 8:
            raise Graph6Error("truncated 8-byte order header", base + len(text))
        n = 0
        for i in range(2, 8):
            n = (n << 6) | val(i)
        pos = 8
    else:
        if len(text) < 4:
            raise Graph6Error("truncated 4-byte order header", base + len(text))
        n = (val(1) << 12) | (val(2) << 6) | val(3)
        pos = 4
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = text[pos:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, found {len(body)}", base + pos + min(len(body), need))
    mask = 0
    s = 0
    for i, ch in enumerate(body):
        group = ord(ch) - 63
        for b in range(5, -1, -1):
            bit = group >> b & 1
            if s < nbits:
                mask |= bit << s
            elif bit:
                raise Graph6Error("nonzero padding bits", base + pos + i)
            s += 1
    return Graph.from_edge_mask(n, mask)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.order)]
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
