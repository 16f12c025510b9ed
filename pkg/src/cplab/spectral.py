"""Spectral radius by shifted power iteration, equitable partitions and
quotient matrices, and the joined complete multipartite eigensystem."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import MalformedParameter, NonEquitablePartition
from .graph import Graph, VertexPartition, iter_bits

DEFAULT_TOL = 1e-12
MAX_ITER = 100_000


@dataclass
class SpectralResult:
    """``perron`` is normalised to maximum entry exactly 1."""

    lam: float
    perron: np.ndarray
    iterations: int
    residual: float
    converged: bool = True

    def to_json(self) -> dict:
        return {
            "lambda": float(self.lam),
            "perron": [float(x) for x in self.perron],
            "iterations": self.iterations,
            "residual": float(self.residual),
            "converged": self.converged,
        }


def _power_iterate(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, int, float, bool]:
    """Dominant eigenpair of a nonnegative matrix by iterating on A + I.

    The shift removes the period-2 oscillation of bipartite (or otherwise
    imprimitive) matrices without moving the eigenvector.  Stops once the
    eigenvalue estimate moves by at most ``tol`` and the max-norm residual of
    ``Ax - lam x`` is at most ``tol * max(1, lam)``.
    """
    n = a.shape[0]
    x = np.ones(n)
    lam_prev = None
    lam = 0.0
    res = np.inf
    for it in range(1, max_iter + 1):
        ax = a @ x
        lam = float(x @ ax / (x @ x))
        res = float(np.max(np.abs(ax - lam * x)))
        if lam_prev is not None and abs(lam - lam_prev) <= tol and res <= tol * max(1.0, abs(lam)):
            return lam, x, it, res, True
        lam_prev = lam
        y = ax + x
        x = y / np.max(y)
    return lam, x, max_iter, res, False


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralResult:
    """Largest adjacency eigenvalue, taken over components."""
    if g.order < 1:
        raise MalformedParameter("spectral radius needs at least one vertex")
    if tol <= 0:
        raise MalformedParameter(f"tol must be > 0, got {tol}")
    a = g.to_numpy()
    best: Optional[tuple] = None
    total_iter = 0
    for comp in g.components():
        if len(comp) == 1:
            cand = (0.0, np.ones(1), 0, 0.0, True)
        else:
            sub = a[np.ix_(comp, comp)]
            cand = _power_iterate(sub, tol, max_iter)
        total_iter += cand[2]
        if best is None or cand[0] > best[1][0]:
            best = (comp, cand)
    comp, (lam, x, _, res, ok) = best
    perron = np.zeros(g.order)
    perron[comp] = x
    return SpectralResult(lam, perron, total_iter, res, ok)


def rayleigh_lower_bound(g: Graph) -> float:
    """1^T A 1 / 1^T 1 = 2e/n."""
    if g.order < 1:
        raise MalformedParameter("Rayleigh bound needs at least one vertex")
    return 2 * g.num_edges / g.order


# ---------------------------------------------------------------- equitable partitions


def equitable_refinement(g: Graph, initial: VertexPartition) -> VertexPartition:
    """Coarsest equitable partition refining ``initial`` (colour refinement).

    Blocks come out ordered by their smallest vertex.
    """
    if initial.order != g.order:
        raise ValueError("partition order does not match graph order")
    labels = initial.labels()
    nblocks = len(initial)
    while True:
        sigs = []
        for u in range(g.order):
            counts = [0] * nblocks
            for w in iter_bits(g.rows[u]):
                counts[labels[w]] += 1
            sigs.append((labels[u], tuple(counts)))
        index: dict = {}
        new = []
        for u in range(g.order):
            new.append(index.setdefault(sigs[u], len(index)))
        if len(index) == nblocks:
            break
        labels, nblocks = new, len(index)
    return VertexPartition.from_labels(labels)


@dataclass(frozen=True)
class QuotientMatrix:
    entries: tuple[tuple[int, ...], ...]
    block_sizes: tuple[int, ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    def to_json(self) -> dict:
        return {"entries": [list(r) for r in self.entries], "blockSizes": list(self.block_sizes)}


def quotient_matrix(g: Graph, part: VertexPartition) -> QuotientMatrix:
    """b_ij = neighbours in block j of any vertex of block i."""
    masks = []
    for b in part.blocks:
        m = 0
        for v in b:
            m |= 1 << v
        masks.append(m)
    rows = []
    for i, b in enumerate(part.blocks):
        first = [(g.rows[b[0]] & m).bit_count() for m in masks]
        for v in b[1:]:
            for j, m in enumerate(masks):
                if (g.rows[v] & m).bit_count() != first[j]:
                    raise NonEquitablePartition(b[0], v, j)
        rows.append(tuple(first))
    return QuotientMatrix(tuple(rows), tuple(len(b) for b in part.blocks))


def matrix_perron(q, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> tuple[float, np.ndarray, float, bool]:
    """(lambda, vector with max entry 1, residual, converged) for a square nonnegative matrix."""
    a = q.as_array() if isinstance(q, QuotientMatrix) else np.asarray(q, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MalformedParameter("matrix must be square")
    if np.any(a < 0):
        raise MalformedParameter("matrix must be nonnegative")
    lam, x, _, res, ok = _power_iterate(a, tol, max_iter)
    return lam, x, res, ok


def matrix_spectral_radius(q, tol: float = DEFAULT_TOL) -> float:
    return matrix_perron(q, tol)[0]


# ---------------------------------------------------------------- K_{t-1} v K_{n_1..n_p'}


@dataclass
class JoinedSpectrum:
    """Perron data of K_{t-1} v K_{n_1,...,n_p'} on the natural blocks.

    ``parts`` are the per-part entries; ``apex`` is the apex entry (1 by
    normalisation) or None when t = 1, in which case max(parts) = 1.
    """

    t: int
    sizes: tuple[int, ...]
    lam: float
    parts: tuple[float, ...]
    apex: Optional[float]
    residual: float
    converged: bool

    def eigensystem_residual(self) -> float:
        """Max over rows of |lam x_i - (sum_j n_j x_j - n_i x_i + (t-1) x_apex)|."""
        xa = self.apex or 0.0
        s = sum(n * x for n, x in zip(self.sizes, self.parts))
        res = max(abs(self.lam * x - (s - n * x + (self.t - 1) * xa)) for n, x in zip(self.sizes, self.parts))
        if self.apex is not None:
            res = max(res, abs(self.lam * xa - (s + (self.t - 2) * xa)))
        return res

    def closed_form_residual(self) -> float:
        """Max over parts of |x_i (lam + n_i) - (lam + 1) x_apex|.

        With no apex (t = 1) the rows give x_i (lam + n_i) = sum_j n_j x_j
        instead, and that common value is used.
        """
        if self.apex is not None:
            rhs = (self.lam + 1) * self.apex
        else:
            rhs = sum(n * x for n, x in zip(self.sizes, self.parts))
        return max(abs(x * (self.lam + n) - rhs) for n, x in zip(self.sizes, self.parts))

    def closed_form_entries(self) -> tuple[float, ...]:
        """(lam+1)/(lam+n_i), valid when an apex exists."""
        return tuple((self.lam + 1) / (self.lam + n) for n in self.sizes)


def joined_quotient(t: int, parts: Sequence[int]) -> QuotientMatrix:
    if t < 1:
        raise MalformedParameter(f"t must be >= 1, got {t}")
    if not parts or any(n < 1 for n in parts):
        raise MalformedParameter(f"parts must be nonempty and positive, got {list(parts)}")
    q = len(parts)
    rows = []
    for i in range(q):
        row = [0 if j == i else parts[j] for j in range(q)]
        if t >= 2:
            row.append(t - 1)
        rows.append(tuple(row))
    sizes = list(parts)
    if t >= 2:
        rows.append(tuple(parts) + (t - 2,))
        sizes.append(t - 1)
    return QuotientMatrix(tuple(rows), tuple(sizes))


def joined_multipartite_spectrum(t: int, parts: Sequence[int], tol: float = DEFAULT_TOL) -> JoinedSpectrum:
    qm = joined_quotient(t, parts)
    lam, x, res, ok = matrix_perron(qm, tol)
    if t >= 2:
        x = x / x[-1]
        return JoinedSpectrum(t, tuple(parts), lam, tuple(float(v) for v in x[:-1]), float(x[-1]), res, ok)
    x = x / np.max(x)
    return JoinedSpectrum(t, tuple(parts), lam, tuple(float(v) for v in x), None, res, ok)


def part_profiles(total: int, count: int, minimum: int = 1) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples of ``count`` parts >= ``minimum`` summing to ``total``."""

    def rec(left: int, slots: int, cap: int):
        if slots == 0:
            if left == 0:
                yield ()
            return
        lo = minimum
        hi = min(cap, left - minimum * (slots - 1))
        for first in range(hi, lo - 1, -1):
            if first * slots < left:
                break
            for rest in rec(left - first, slots - 1, first):
                yield (first,) + rest

    yield from rec(total, count, total)


def balanced_profile(total: int, count: int) -> tuple[int, ...]:
    q, extra = divmod(total, count)
    return tuple([q + 1] * extra + [q] * (count - extra))


def exchange_step(parts: Sequence[int]) -> tuple[int, ...]:
    """Move one vertex from a largest part to a smallest part."""
    s = sorted(parts, reverse=True)
    if s[0] - s[-1] < 2:
        return tuple(s)
    s[0] -= 1
    s[-1] += 1
    return tuple(sorted(s, reverse=True))
