"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]

Each case runs once per available backend; results must agree, and the
table reports best-of-repeat wall time and the speedup.
"""
from __future__ import annotations

import argparse
import json
import time

from cplab import _backend, graph
from cplab.params import chi_of_cycle_power
from cplab.containment import _edge_orbit_orders, pattern_for, search_order, twin_classes


def _cases():
    # embedding: C_11^2 into the free construction (a full refutation) and into K_12
    for host_name, host in (("extremal(30,11,2)", graph.extremal_construction(30, 11, 2)),
                            ("K_12", graph.complete(12))):
        pat = pattern_for(11, 2)
        order = search_order(pat)
        cls = twin_classes(host)
        yield (f"embed C_11^2 -> {host_name}",
               lambda b, h=host, q=pat, o=order, c=cls: _backend.embed(h.rows, q.rows, o, c, (), backend=b))

    # colouring: chi - 1 refutation is the hard direction
    for k, p in ((13, 3), (17, 4), (19, 2)):
        cp = graph.cycle_power(k, p)
        chi = chi_of_cycle_power(k, p)
        yield (f"{chi - 1}-colour C_{k}^{p} (refute)",
               lambda b, g=cp, c=chi: _backend.k_coloring(g.rows, c - 1, backend=b))

    # exhaustive sweeps
    for n, k, p in ((7, 3, 1), (7, 5, 2), (8, 7, 2)):
        pat = pattern_for(k, p)
        orders = _edge_orbit_orders(pat)
        yield (f"sweep_max n={n} C_{k}^{p}",
               lambda b, n=n, q=pat, o=orders: _backend.sweep_max(n, q.rows, o, 0, backend=b)[0])


def _best_time(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    backends = _backend.available_backends()
    rows = []
    for name, fn in _cases():
        times, outs = {}, {}
        for b in backends:
            times[b], outs[b] = _best_time(lambda: fn(b), args.repeat if b == "native" else 1)
        agree = len({repr(o) for o in outs.values()}) == 1
        rows.append({"case": name, "times": times, "agree": agree,
                     "speedup": times["python"] / times["native"] if "native" in times and times["native"] else None})

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':36} {'python s':>10} {'native s':>10} {'speedup':>9}  agree")
        for r in rows:
            nat = r["times"].get("native")
            nat_s = f"{nat:10.4f}" if nat is not None else f"{'n/a':>10}"
            sp_s = f"{r['speedup']:8.1f}x" if r["speedup"] else f"{'n/a':>9}"
            print(f"{r['case']:36} {r['times']['python']:10.4f} {nat_s} {sp_s}  {r['agree']}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
