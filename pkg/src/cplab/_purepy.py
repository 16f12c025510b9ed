"""Pure-Python search kernels on int bitsets.

Reference implementation of the routines in ``_native.pyx``.  Both must visit
the search tree in the same order so that results are identical.  No order cap
applies here; the native module handles orders up to 64.
"""
from __future__ import annotations

from typing import Optional, Sequence


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Prepared:
    """A pattern compiled for one vertex order."""

    __slots__ = ("k", "order", "back", "fwd", "pdeg")

    def __init__(self, pattern: Sequence[int], order: Sequence[int]):
        k = len(pattern)
        pos = [0] * k
        for i, v in enumerate(order):
            pos[v] = i
        self.k = k
        self.order = list(order)
        self.back = [[w for w in _bits(pattern[v]) if pos[w] < pos[v]] for v in range(k)]
        self.fwd = [[w for w in _bits(pattern[v]) if pos[w] > pos[v]] for v in range(k)]
        self.pdeg = [pattern[v].bit_count() for v in range(k)]


def _search(host: Sequence[int], prep: _Prepared, classes, fixed: Sequence[int]):
    n = len(host)
    k = prep.k
    if k > n:
        return None
    hdeg = [r.bit_count() for r in host]
    degok = []
    for v in range(k):
        m = 0
        d = prep.pdeg[v]
        for h in range(n):
            if hdeg[h] >= d:
                m |= 1 << h
        degok.append(m)
    cmask = None
    if classes is not None:
        cmask = {}
        for h, c in enumerate(classes):
            cmask[c] = cmask.get(c, 0) | (1 << h)
    order, back, fwd = prep.order, prep.back, prep.fwd
    mp = [-1] * k
    used = 0
    for i, h in enumerate(fixed):
        v = order[i]
        if not degok[v] >> h & 1 or used >> h & 1:
            return None
        for w in back[v]:
            if not host[mp[w]] >> h & 1:
                return None
        mp[v] = h
        used |= 1 << h

    def forward_ok(v: int) -> bool:
        for q in fwd[v]:
            c = degok[q] & ~used
            for w in back[q]:
                hw = mp[w]
                if hw >= 0:
                    c &= host[hw]
            if not c:
                return False
        return True

    def rec(d: int) -> bool:
        nonlocal used
        if d == k:
            return True
        v = order[d]
        c = degok[v] & ~used
        for w in back[v]:
            c &= host[mp[w]]
        while c:
            low = c & -c
            c ^= low
            h = low.bit_length() - 1
            if cmask is not None and cmask[classes[h]] & ~used & (low - 1):
                continue
            mp[v] = h
            used |= low
            if forward_ok(v) and rec(d + 1):
                return True
            mp[v] = -1
            used ^= low
        return False

    if fixed and not all(forward_ok(order[i]) for i in range(len(fixed))):
        return None
    if rec(len(fixed)):
        return list(mp)
    return None


def embed(host, pattern, order, classes, fixed):
    """Map pattern vertices injectively onto host vertices preserving edges.

    ``order`` lists pattern vertices in search order; the first
    ``len(fixed)`` of them are pinned to the hosts in ``fixed``.  ``classes``
    (or None) assigns each host vertex a twin class; only the lowest unused
    member of a class is tried.
    """
    return _search(host, _Prepared(pattern, order), classes, fixed)


def embed_through(host, pattern, edge_orders, classes, x, y):
    """Embedding that sends some pattern edge onto the host edge (x, y)."""
    for order in edge_orders:
        found = _search(host, _Prepared(pattern, order), classes, (x, y))
        if found is not None:
            return found
    return None


def k_coloring(rows: Sequence[int], k: int) -> Optional[list[int]]:
    """Proper colouring with at most k colours (DSATUR backtracking), or None."""
    n = len(rows)
    if n == 0:
        return []
    if k <= 0:
        return None
    deg = [r.bit_count() for r in rows]
    color = [-1] * n
    cls = [0] * k

    def pick(ncol: int) -> int:
        best = -1
        bs = bd = -1
        for v in range(n):
            if color[v] >= 0:
                continue
            r = rows[v]
            sat = 0
            for c in range(ncol):
                if cls[c] & r:
                    sat += 1
            if sat > bs or (sat == bs and deg[v] > bd):
                best, bs, bd = v, sat, deg[v]
        return best

    def rec(done: int, ncol: int) -> bool:
        if done == n:
            return True
        v = pick(ncol)
        r = rows[v]
        top = ncol + 1 if ncol < k else k
        for c in range(top):
            if cls[c] & r:
                continue
            color[v] = c
            cls[c] |= 1 << v
            if rec(done + 1, ncol + 1 if c == ncol else ncol):
                return True
            cls[c] ^= 1 << v
            color[v] = -1
        return False

    return list(color) if rec(0, 0) else None


def _slots(n: int):
    return [(i, j) for j in range(1, n) for i in range(j)]


def sweep_max(n: int, pattern, edge_orders, lower: int = 0):
    """All labelled pattern-free graphs on n vertices with the most edges.

    Returns (best, masks) with masks in edge-slot order.  Branches that cannot
    reach ``max(best, lower)`` edges are cut.
    """
    slots = _slots(n)
    total = len(slots)
    preps = [_Prepared(pattern, o) for o in edge_orders]
    big = len(pattern) > n
    rows = [0] * n
    best = lower
    found: list[int] = []

    def creates(u: int, v: int) -> bool:
        if big:
            return False
        for prep in preps:
            if _search(rows, prep, None, (u, v)) is not None:
                return True
        return False

    def rec(s: int, edges: int, mask: int) -> None:
        nonlocal best, found
        if edges + (total - s) < best:
            return
        if s == total:
            if edges > best:
                best = edges
                found = []
            found.append(mask)
            return
        u, v = slots[s]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        if not creates(u, v):
            rec(s + 1, edges + 1, mask | (1 << s))
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        rec(s + 1, edges, mask)

    rec(0, 0, 0)
    return best, found


def sweep_maximal(n: int, pattern, edge_orders):
    """All labelled edge-maximal pattern-free graphs on n vertices (edge masks)."""
    slots = _slots(n)
    total = len(slots)
    preps = [_Prepared(pattern, o) for o in edge_orders]
    big = len(pattern) > n
    rows = [0] * n
    pending: list[int] = []
    found: list[int] = []

    def creates(u: int, v: int) -> bool:
        if big:
            return False
        for prep in preps:
            if _search(rows, prep, None, (u, v)) is not None:
                return True
        return False

    def rec(s: int, mask: int) -> None:
        if s == total:
            for q in pending:
                u, v = slots[q]
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                blocked = creates(u, v)
                rows[u] &= ~(1 << v)
                rows[v] &= ~(1 << u)
                if not blocked:
                    return
            found.append(mask)
            return
        u, v = slots[s]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        if creates(u, v):
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            rec(s + 1, mask)
            return
        rec(s + 1, mask | (1 << s))
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        pending.append(s)
        rec(s + 1, mask)
        pending.pop()

    rec(0, 0)
    return found
