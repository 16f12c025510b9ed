"""Kernel dispatch: the compiled module when importable, else pure Python.

Set ``CPL_PURE_PYTHON=1`` to force the fallback.  Orders beyond the native
word caps always run on the fallback.
"""
from __future__ import annotations

import os

from . import _purepy

NATIVE_CAP = 64
NATIVE_SWEEP_CAP = 11

_native = None
if not os.environ.get("CPL_PURE_PYTHON"):
    try:
        from . import _native  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _native = None

BACKEND = "native" if _native is not None else "python"


def _pick(n: int, cap: int, backend: str | None):
    if backend == "python":
        return _purepy
    if backend == "native":
        if _native is None:
            raise RuntimeError("native kernels are not built")
        return _native
    if _native is not None and n <= cap:
        return _native
    return _purepy


def available_backends() -> list[str]:
    return ["python"] + (["native"] if _native is not None else [])


def embed(host, pattern, order, classes=None, fixed=(), backend=None):
    mod = _pick(max(len(host), len(pattern)), NATIVE_CAP, backend)
    return mod.embed(list(host), list(pattern), list(order), classes, list(fixed))


def embed_through(host, pattern, edge_orders, x, y, classes=None, backend=None):
    mod = _pick(max(len(host), len(pattern)), NATIVE_CAP, backend)
    return mod.embed_through(list(host), list(pattern), [list(o) for o in edge_orders], classes, x, y)


def k_coloring(rows, k, backend=None):
    mod = _pick(len(rows), NATIVE_CAP, backend)
    return mod.k_coloring(list(rows), k)


def sweep_max(n, pattern, edge_orders, lower=0, backend=None):
    mod = _pick(max(n, len(pattern)) if n <= NATIVE_SWEEP_CAP else 10**9, NATIVE_CAP, backend)
    return mod.sweep_max(n, list(pattern), [list(o) for o in edge_orders], lower)


def sweep_maximal(n, pattern, edge_orders, backend=None):
    mod = _pick(max(n, len(pattern)) if n <= NATIVE_SWEEP_CAP else 10**9, NATIVE_CAP, backend)
    return mod.sweep_maximal(n, list(pattern), [list(o) for o in edge_orders])
