"""Exception types shared across the package."""
from __future__ import annotations


class CplError(Exception):
    """Base class for all errors raised by cplab."""


class MalformedParameter(CplError, ValueError):
    """A family or search parameter is outside its domain."""


class CompleteGraphRegime(CplError):
    """k < 2p+1: the cycle power is the complete graph K_k."""

    def __init__(self, k: int, p: int):
        self.k = k
        self.p = p
        super().__init__(
            f"complete-graph regime: C_{k}^{p} is K_{k} since k < 2p+1 "
            f"(k={k}, p={p}); the decomposition assumes k >= 2p+1"
        )


class NotApplicable(CplError):
    """The requested object is undefined for these parameters (r = 0)."""


class DegenerateConstruction(CplError):
    """n is too small for the joined Turan construction."""


class Graph6Error(CplError, ValueError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class SolverCapExceeded(CplError):
    """Graph order exceeds the exact solver's cap."""


class BudgetExceeded(CplError):
    """A combinatorial sweep hit its budget; ``partial`` holds what was established."""

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class NonEquitablePartition(CplError, ValueError):
    def __init__(self, u: int, v: int, block: int):
        self.u, self.v, self.block = u, v, block
        super().__init__(
            f"partition is not equitable: vertices {u} and {v} share a block "
            f"but differ in neighbour count into block {block}"
        )


class CorruptRecord(CplError):
    """A cached search record failed re-validation and was quarantined."""
