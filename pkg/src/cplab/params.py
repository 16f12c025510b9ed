"""Integer arithmetic for cycle powers C_k^p.

Writes k = s(p+1) + r with 0 <= r < p+1 and, when r != 0, r = m*s + t with
1 <= t <= s.  Everything downstream (chromatic number, extremal graph,
closed-form edge counts) is a function of these numbers.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .errors import CompleteGraphRegime, DegenerateConstruction, MalformedParameter, NotApplicable


@dataclass(frozen=True)
class PowerCycleParams:
    k: int
    p: int
    s: int
    r: int
    m: Optional[int] = None
    t: Optional[int] = None

    @property
    def p_prime(self) -> Optional[int]:
        return None if self.r == 0 else self.p + self.m + 1

    @property
    def chi_predicted(self) -> int:
        return self.p + 1 if self.r == 0 else self.p + self.m + 2

    @property
    def turan_applicable(self) -> bool:
        return self.r != 0

    @property
    def spectral_applicable(self) -> bool:
        return self.r != 0 and self.t != self.s

    def min_order(self) -> int:
        """Smallest n for which K_{t-1} v T_{n-t+1,p'} has p' nonempty parts."""
        if self.r == 0:
            raise NotApplicable(f"r = 0 for (k={self.k}, p={self.p}); no joined Turan construction")
        return self.t - 1 + self.p_prime

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "s": self.s,
            "r": self.r,
            "m": self.m,
            "t": self.t,
            "pPrime": self.p_prime,
            "chi": self.chi_predicted,
            "chiPredicted": self.chi_predicted,
            "turanApplicable": self.turan_applicable,
            "spectralApplicable": self.spectral_applicable,
        }


def decompose(k: int, p: int) -> PowerCycleParams:
    if p < 1:
        raise MalformedParameter(f"power p must be >= 1, got {p}")
    if k < 3:
        raise MalformedParameter(f"cycle length k must be >= 3, got {k}")
    if k < 2 * p + 1:
        raise CompleteGraphRegime(k, p)
    s, r = divmod(k, p + 1)
    if r == 0:
        return PowerCycleParams(k, p, s, 0)
    # t ranges over 1..s, so t = s when s divides r (plain mod would give 0)
    m = -(-r // s) - 1
    t = r - m * s
    return PowerCycleParams(k, p, s, r, m, t)


def chi_of_cycle_power(k: int, p: int) -> int:
    """Predicted chromatic number, including the complete-graph regime."""
    try:
        return decompose(k, p).chi_predicted
    except CompleteGraphRegime:
        return k


def turan_parts(n: int, r: int) -> list[int]:
    """Balanced part sizes of T_{n,r}, largest first."""
    if r < 1:
        raise MalformedParameter(f"number of parts must be >= 1, got {r}")
    if n < 0:
        raise MalformedParameter(f"order must be >= 0, got {n}")
    q, extra = divmod(n, r)
    return [q + 1] * extra + [q] * (r - extra)


def turan_edge_count(n: int, r: int) -> int:
    return comb(n, 2) - sum(comb(x, 2) for x in turan_parts(n, r))


def extremal_edge_count(n: int, k: int, p: int) -> int:
    """e(K_{t-1} v T_{n-t+1,p'})."""
    prm = decompose(k, p)
    if prm.r == 0:
        raise NotApplicable(f"r = 0 for (k={k}, p={p}): joined Turan construction not defined")
    if n < prm.min_order():
        raise DegenerateConstruction(f"n={n} < t-1+p'={prm.min_order()}")
    a = prm.t - 1
    return comb(a, 2) + a * (n - a) + turan_edge_count(n - a, prm.p_prime)
