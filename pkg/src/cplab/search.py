"""Exhaustive and heuristic searches for ex(n, C_k^p) and spex(n, C_k^p),
with a JSON-lines result cache."""
from __future__ import annotations

import json
import logging
import os
import random
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Optional

import numpy as np

from . import _backend
from .containment import _edge_orbit_orders, contains, contains_through, is_free, pattern_for
from .errors import CorruptRecord, MalformedParameter, NotApplicable, DegenerateConstruction
from .graph import Graph, complete, complete_multipartite, extremal_construction, graph6_decode, graph6_encode
from .params import chi_of_cycle_power, decompose
from .spectral import DEFAULT_TOL, spectral_radius

log = logging.getLogger(__name__)

EX_CAP = 8
SPEX_CAP = 7
CANON_CAP = 8
HEURISTIC_CAP = 60
SPEX_TIE = 1e-9


@dataclass
class SearchRecord:
    n: int
    k: int
    p: int
    mode: str
    value: float
    witnesses: list[str]
    exhaustive: bool
    method: str
    wallTime: float = 0.0
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        if not d["extras"]:
            del d["extras"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "SearchRecord":
        return cls(
            n=int(d["n"]), k=int(d["k"]), p=int(d["p"]), mode=str(d["mode"]),
            value=d["value"], witnesses=list(d["witnesses"]), exhaustive=bool(d["exhaustive"]),
            method=str(d["method"]), wallTime=float(d["wallTime"]), extras=dict(d.get("extras", {})),
        )

    def key(self) -> tuple:
        return (self.n, self.k, self.p, self.mode)


# ---------------------------------------------------------------- canonical forms


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)


def canonical_form(g: Graph) -> Graph:
    """Relabelling whose graph6 upper-triangle bit string is lexicographically
    smallest over all n! permutations."""
    n = g.order
    if n > CANON_CAP:
        raise MalformedParameter(f"canonical form limited to n <= {CANON_CAP}, got {n}")
    if n <= 1:
        return g
    a = g.to_numpy().astype(bool)
    perms = _perm_table(n)
    iu = [(i, j) for j in range(1, n) for i in range(j)]
    ii = np.array([i for i, _ in iu])
    jj = np.array([j for _, j in iu])
    bits = a[perms[:, ii], perms[:, jj]]
    weights = (1 << np.arange(len(iu) - 1, -1, -1, dtype=np.int64))
    score = bits.astype(np.int64) @ weights
    best = perms[int(np.argmin(score))]
    return g.relabel([int(v) for v in best])


def canonical_graph6(g: Graph) -> str:
    return graph6_encode(canonical_form(g))


def _invariant(g: Graph) -> tuple:
    return (g.num_edges, tuple(sorted(g.degrees())))


def isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or _invariant(g) != _invariant(h):
        return False
    return contains(g, h) is not None


def distinct_up_to_iso(graphs: list[Graph]) -> list[Graph]:
    reps: list[Graph] = []
    for g in graphs:
        if not any(isomorphic(g, r) for r in reps):
            reps.append(g)
    return reps


def _witness_strings(graphs: list[Graph]) -> list[str]:
    return sorted({canonical_graph6(g) for g in distinct_up_to_iso(graphs)})


# ---------------------------------------------------------------- exhaustive


def _pattern_args(k: int, p: int):
    pat = pattern_for(k, p)
    return pat, _edge_orbit_orders(pat)


def ex_bruteforce(n: int, k: int, p: int, backend=None) -> SearchRecord:
    """ex(n, C_k^p) and its extremal graphs up to isomorphism, by a labelled
    sweep over edge slots that cuts branches unable to reach the best count."""
    if n > EX_CAP:
        raise MalformedParameter(f"n={n} exceeds the exhaustive cap {EX_CAP}; use heuristic mode")
    if n < 1:
        raise MalformedParameter("n must be >= 1")
    start = time.perf_counter()
    pat, orders = _pattern_args(k, p)
    best, masks = _backend.sweep_max(n, pat.rows, orders, 0, backend=backend)
    graphs = [Graph.from_edge_mask(n, m) for m in masks]
    return SearchRecord(
        n=n, k=k, p=p, mode="ex", value=best, witnesses=_witness_strings(graphs),
        exhaustive=True, method="labeled-sweep edge-bound",
        wallTime=time.perf_counter() - start,
        extras={"labeledWitnesses": len(masks)},
    )


def _batch_lambda(n: int, masks: list[int]) -> np.ndarray:
    iu = [(i, j) for j in range(1, n) for i in range(j)]
    m = np.array(masks, dtype=np.int64)
    a = np.zeros((len(masks), n, n))
    for s, (i, j) in enumerate(iu):
        b = (m >> s) & 1
        a[:, i, j] = b
        a[:, j, i] = b
    return np.linalg.eigvalsh(a)[:, -1]


def spex_bruteforce(n: int, k: int, p: int, tol: float = DEFAULT_TOL, backend=None) -> SearchRecord:
    """spex(n, C_k^p) over edge-maximal C_k^p-free graphs.

    Adding an edge inside a component strictly raises that component's
    spectral radius, so some maximiser is edge-maximal.
    """
    if n > SPEX_CAP:
        raise MalformedParameter(f"n={n} exceeds the exhaustive cap {SPEX_CAP}; use heuristic mode")
    if n < 1:
        raise MalformedParameter("n must be >= 1")
    start = time.perf_counter()
    pat, orders = _pattern_args(k, p)
    masks = _backend.sweep_maximal(n, pat.rows, orders, backend=backend)
    # numpy screens the labelled candidates; the reported value is power iteration
    screen = _batch_lambda(n, masks)
    top = float(np.max(screen))
    near = [m for m, lam in zip(masks, screen) if lam >= top - 1e-6 * max(1.0, top)]
    graphs = [Graph.from_edge_mask(n, m) for m in near]
    reps = distinct_up_to_iso(graphs)
    lams = [spectral_radius(g, tol).lam for g in reps]
    value = max(lams)
    winners = [g for g, lam in zip(reps, lams) if lam >= value - SPEX_TIE]
    return SearchRecord(
        n=n, k=k, p=p, mode="spex", value=value,
        witnesses=sorted(canonical_graph6(g) for g in winners),
        exhaustive=True, method="maximal-sweep power-iteration",
        wallTime=time.perf_counter() - start,
        extras={"maximalLabeled": len(masks)},
    )


# ---------------------------------------------------------------- heuristic


def _repair(g: Graph, k: int, p: int, u: int, v: int) -> Graph:
    """Remove edges of copies of C_k^p through uv (never uv itself), highest-degree endpoint first."""
    pat = pattern_for(k, p)
    while True:
        emb = contains_through(g, pat, u, v)
        if emb is None:
            return g
        deg = g.degrees()
        cands = [e for e in emb.image_edges(pat) if e != (min(u, v), max(u, v))]
        e = max(cands, key=lambda e: (max(deg[e[0]], deg[e[1]]), deg[e[0]] + deg[e[1]], -e[0], -e[1]))
        g = g.without_edges([e])


def random_maximal_free(n: int, k: int, p: int, rng: random.Random) -> Graph:
    """Random complete p'-partite start (free by colour count), saturated in random edge order."""
    parts_count = max(1, chi_of_cycle_power(k, p) - 1)
    labels = [rng.randrange(parts_count) for _ in range(n)]
    order = sorted(range(n), key=lambda v: labels[v])
    sizes = [labels.count(c) for c in range(parts_count) if labels.count(c)]
    g = complete_multipartite(sizes).relabel([order.index(v) for v in range(n)])
    non = g.non_edges()
    rng.shuffle(non)
    pat = pattern_for(k, p)
    for u, v in non:
        h = g.with_edges([(u, v)])
        if contains_through(h, pat, u, v) is None:
            g = h
    return g


def hillclimb_spex(n: int, k: int, p: int, seed_count: int = 2, step_budget: int = 200,
                   seed: int = 0, tol: float = DEFAULT_TOL) -> SearchRecord:
    """Local search for large spectral radius among C_k^p-free graphs.

    Starts from the joined Turan construction (when defined) and from random
    edge-maximal free graphs.  A move adds a random non-edge, repairs, and is
    kept only if the spectral radius rises.  Never claims optimality.
    """
    if n > HEURISTIC_CAP:
        raise MalformedParameter(f"n={n} exceeds heuristic cap {HEURISTIC_CAP}")
    start = time.perf_counter()
    rng = random.Random(seed)
    starts: list[Graph] = []
    try:
        starts.append(extremal_construction(n, k, p))
    except (NotApplicable, DegenerateConstruction):
        pass
    for _ in range(seed_count):
        starts.append(random_maximal_free(n, k, p, rng))
    best_g, best_lam = None, -1.0
    start_lams = []
    for g in starts:
        lam = spectral_radius(g, tol).lam
        start_lams.append(lam)
        for _ in range(step_budget):
            non = g.non_edges()
            if not non:
                break
            u, v = non[rng.randrange(len(non))]
            h = _repair(g.with_edges([(u, v)]), k, p, u, v)
            lam_h = spectral_radius(h, tol).lam
            if lam_h > lam + tol:
                g, lam = h, lam_h
        if lam > best_lam:
            best_g, best_lam = g, lam
    return SearchRecord(
        n=n, k=k, p=p, mode="spex", value=best_lam, witnesses=[graph6_encode(best_g)],
        exhaustive=False,
        method=f"hillclimb seed={seed} seeds={seed_count} steps={step_budget}",
        wallTime=time.perf_counter() - start,
        extras={"startLambdas": start_lams},
    )


# ---------------------------------------------------------------- sandwich


def sandwich_check(rec: SearchRecord) -> dict:
    """Compare an exhaustive ex record with the joined Turan edge count."""
    from .params import extremal_edge_count

    prm = decompose(rec.k, rec.p)
    if rec.mode != "ex" or prm.r == 0 or rec.n < prm.min_order():
        return {"applicable": False}
    target = extremal_edge_count(rec.n, rec.k, rec.p)
    construction_free = is_free(extremal_construction(rec.n, rec.k, rec.p), rec.k, rec.p)
    return {
        "applicable": True,
        "ex": rec.value,
        "construction": target,
        "holds": rec.value >= target and construction_free,
        "constructionFree": construction_free,
        "excess": rec.value - target,
        "finding": rec.value > target,
    }


# ---------------------------------------------------------------- cache


def default_cache_dir() -> Path:
    return Path(os.environ.get("CPL_CACHE_DIR", Path.home() / ".cache" / "cplab"))


def _records_path(cache_dir) -> Path:
    return Path(cache_dir) / "records.jsonl"


def cache_store(rec: SearchRecord, cache_dir=None) -> None:
    path = _records_path(cache_dir or default_cache_dir())
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        fh.write(rec.to_json() + "\n")


def validate_record(rec: SearchRecord, tol: float = DEFAULT_TOL) -> None:
    """Raise ValueError unless every witness is an n-vertex free graph attaining the value."""
    if not rec.witnesses:
        raise ValueError("record has no witnesses")
    for w in rec.witnesses:
        g = graph6_decode(w)
        if g.order != rec.n:
            raise ValueError(f"witness {w!r} has order {g.order}, expected {rec.n}")
        if not is_free(g, rec.k, rec.p):
            raise ValueError(f"witness {w!r} contains C_{rec.k}^{rec.p}")
        if rec.mode == "ex":
            if g.num_edges != rec.value:
                raise ValueError(f"witness {w!r} has {g.num_edges} edges, record says {rec.value}")
        else:
            lam = spectral_radius(g, tol).lam
            if abs(lam - rec.value) > SPEX_TIE * max(1.0, abs(rec.value)):
                raise ValueError(f"witness {w!r} has lambda {lam}, record says {rec.value}")


def _quarantine(cache_dir: Path, line: str, reason: str) -> None:
    path = _records_path(cache_dir)
    lines = path.read_text(encoding="utf-8").splitlines()
    kept = [ln for ln in lines if ln != line]
    path.write_text("".join(ln + "\n" for ln in kept), encoding="utf-8")
    with (cache_dir / "quarantine.jsonl").open("a", encoding="utf-8") as fh:
        fh.write(json.dumps({"reason": reason, "line": line}) + "\n")
    log.warning("quarantined cache entry: %s", reason)


def cache_load(n: int, k: int, p: int, mode: str, cache_dir=None) -> Optional[SearchRecord]:
    """Latest record for the key, preferring exhaustive ones; re-validated before return."""
    cache_dir = Path(cache_dir or default_cache_dir())
    path = _records_path(cache_dir)
    if not path.exists():
        return None
    chosen = None
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            d = json.loads(line)
            key = (int(d["n"]), int(d["k"]), int(d["p"]), d["mode"])
        except (ValueError, KeyError, TypeError) as exc:
            _quarantine(cache_dir, line, f"unparseable: {exc}")
            continue
        if key != (n, k, p, mode):
            continue
        if chosen is None or d.get("exhaustive") or not chosen[1].get("exhaustive"):
            chosen = (line, d)
    if chosen is None:
        return None
    line, d = chosen
    try:
        rec = SearchRecord.from_dict(d)
        validate_record(rec)
    except (ValueError, KeyError, TypeError) as exc:
        _quarantine(cache_dir, line, str(exc))
        raise CorruptRecord(f"cached record for {(n, k, p, mode)} failed validation: {exc}") from exc
    return rec

