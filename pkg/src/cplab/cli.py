"""cplab: Turan and spectral Turan tools for powers of cycles C_k^p.

Exit codes: 0 pass, 1 verification failure, 2 usage error (including the
complete-graph regime k < 2p+1), 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import coloring, containment, graph, params, search, spectral
from ._backend import BACKEND
from .errors import (BudgetExceeded, CompleteGraphRegime, CorruptRecord, DegenerateConstruction,
                     Graph6Error, MalformedParameter, NotApplicable, SolverCapExceeded)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _resolve_config(args) -> dict:
    """Flags beat environment (CPL_TOL, CPL_CACHE_DIR), which beats defaults."""
    cfg = {}
    if getattr(args, "tol", None) is not None:
        cfg["tol"], cfg["tolSource"] = args.tol, "flag"
    elif os.environ.get("CPL_TOL"):
        cfg["tol"], cfg["tolSource"] = float(os.environ["CPL_TOL"]), "env"
    else:
        cfg["tol"], cfg["tolSource"] = spectral.DEFAULT_TOL, "default"
    if getattr(args, "cache_dir", None):
        cfg["cacheDir"], cfg["cacheDirSource"] = str(args.cache_dir), "flag"
    elif os.environ.get("CPL_CACHE_DIR"):
        cfg["cacheDir"], cfg["cacheDirSource"] = os.environ["CPL_CACHE_DIR"], "env"
    else:
        cfg["cacheDir"], cfg["cacheDirSource"] = str(search.default_cache_dir()), "default"
    cfg["backend"] = BACKEND
    return cfg


def _emit(obj: dict, as_json: bool, table: str, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write(table)


def _fmt_table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- params


def cmd_params(args) -> int:
    prm = params.decompose(args.k, args.p)
    d = dict(prm.to_dict(), schema=f"cplab/params/{SCHEMA_VERSION}")
    table = "".join(f"{key:>18}: {val}\n" for key, val in prm.to_dict().items())
    _emit(d, args.json, table)
    return EXIT_OK


# ---------------------------------------------------------------- verify-coloring


def coloring_row(k: int, p: int, corrupt_b: bool = False, crit_kmax: Optional[int] = None) -> dict:
    prm = params.decompose(k, p)
    cp = graph.cycle_power(k, p)
    chi = coloring.chromatic_number(cp)
    row = {
        "k": k, "p": p, "s": prm.s, "r": prm.r, "m": prm.m, "t": prm.t,
        "chiPredicted": prm.chi_predicted, "chiComputed": chi,
        "chiMatch": chi == prm.chi_predicted,
    }
    ok = row["chiMatch"]
    if prm.r == 0:
        c0 = coloring.paper_coloring_r0(k, p)
        row["r0ColoringProper"] = coloring.is_proper(cp, c0)
        row["criticality"] = "skipped (r = 0)"
        ok = ok and row["r0ColoringProper"]
    else:
        f = coloring.paper_coloring_f(k, p)
        g = coloring.paper_coloring_g(k, p)
        b = coloring.critical_edge_set_B(k, p)
        if corrupt_b:
            b = [tuple(sorted(((u + 1) % k, (v + 1) % k))) for u, v in b]
        reduced = cp.without_edges(b)
        bad = coloring.monochromatic_edges(reduced, g)
        row["fProper"] = coloring.is_proper(cp, f) and f.palette_size == prm.chi_predicted
        row["edgeSetB"] = [f"{u}-{v}" for u, v in b]
        row["gProperOnReduced"] = not bad and g.palette_size == prm.chi_predicted - 1
        if bad:
            row["gWitness"] = [f"{u}-{v}" for u, v in bad]
        ok = ok and row["fProper"] and row["gProperOnReduced"]
        if crit_kmax is None or k <= crit_kmax:
            rep = coloring.is_color_k_critical(cp, prm.t, chi=chi)
            row["criticality"] = rep.to_json()
            ok = ok and rep.verdict
        else:
            row["criticality"] = f"skipped (k > {crit_kmax})"
    row["pass"] = bool(ok)
    return row


def verify_coloring(kmax: int, pmax: int, corrupt_b: bool = False, crit_kmax: Optional[int] = None,
                    kmin: int = 3) -> dict:
    rows = []
    for p in range(1, pmax + 1):
        for k in range(max(kmin, 2 * p + 1), kmax + 1):
            rows.append(coloring_row(k, p, corrupt_b, crit_kmax))
    return {
        "schema": f"cplab/verify-coloring/{SCHEMA_VERSION}",
        "grid": {"kmin": kmin, "kmax": kmax, "pmax": pmax},
        "rows": rows,
        "pass": all(r["pass"] for r in rows),
    }


def cmd_verify_coloring(args) -> int:
    if args.kmax > coloring.EXACT_CAP:
        raise SolverCapExceeded(f"kmax {args.kmax} exceeds exact solver cap {coloring.EXACT_CAP}")
    report = verify_coloring(args.kmax, args.pmax, args.corrupt_b, args.crit_kmax, args.kmin)
    report["config"] = _resolve_config(args)
    table_rows = []
    for r in report["rows"]:
        crit = r["criticality"]
        crit_s = crit if isinstance(crit, str) else ("ok" if crit["verdict"] else "FAIL")
        table_rows.append([r["k"], r["p"], r["s"], r["r"], r["m"], r["t"], r["chiPredicted"], r["chiComputed"],
                           r.get("fProper", r.get("r0ColoringProper")), r.get("gProperOnReduced", "-"), crit_s,
                           "pass" if r["pass"] else "FAIL"])
    table = _fmt_table(["k", "p", "s", "r", "m", "t", "chi*", "chi", "f", "g", "critical", "row"], table_rows)
    table += f"overall: {'PASS' if report['pass'] else 'FAIL'}\n"
    _emit(report, args.json, table)
    return EXIT_OK if report["pass"] else EXIT_FAIL


# ---------------------------------------------------------------- verify-spectral


def verify_spectral(n: int, k: int, p: int, tol: float, profile_limit: int = 500) -> dict:
    prm = params.decompose(k, p)
    g = graph.extremal_construction(n, k, p)
    t, pp = prm.t, prm.p_prime
    checks = {}
    notes = []
    if not prm.spectral_applicable:
        notes.append("spectral extremality not applicable (t = s); numerics reported without an extremality claim")

    free = containment.contains(g, containment.pattern_for(k, p)) is None
    checks["free"] = {"pass": free}

    res = spectral.spectral_radius(g, tol)
    bound = (1 - 1 / pp) * n
    checks["rayleighBound"] = {
        "lambda": res.lam, "bound": bound, "rayleigh": spectral.rayleigh_lower_bound(g),
        "strict": res.lam - bound > 1e-9, "pass": res.lam >= bound - 1e-9,
    }

    part = spectral.equitable_refinement(g, graph.VertexPartition.trivial(n))
    qm = spectral.quotient_matrix(g, part)
    lam_q = spectral.matrix_spectral_radius(qm, tol)
    delta = abs(lam_q - res.lam)
    checks["quotientAgreement"] = {"lambdaQuotient": lam_q, "lambdaPower": res.lam, "delta": delta,
                                   "quotient": qm.to_json(), "pass": delta <= 1e-9}

    sizes = params.turan_parts(n - t + 1, pp)
    js = spectral.joined_multipartite_spectrum(t, sizes, tol)
    cf = js.closed_form_residual()
    checks["closedForm"] = {"lambda": js.lam, "parts": list(js.parts), "apex": js.apex,
                            "closedFormEntries": list(js.closed_form_entries()) if js.apex is not None else None,
                            "residual": cf, "eigensystemResidual": js.eigensystem_residual(),
                            "pass": cf <= 1e-8 and abs(js.lam - res.lam) <= 1e-9}

    balanced = tuple(sizes)
    lam_bal = js.lam
    worst_margin = None
    compared = 0
    failures = []
    for prof in spectral.part_profiles(n - t + 1, pp):
        if prof == balanced:
            continue
        if compared >= profile_limit:
            notes.append(f"profile comparison truncated at {profile_limit}")
            break
        compared += 1
        lam_u = spectral.matrix_spectral_radius(spectral.joined_quotient(t, prof), tol)
        margin = lam_bal - lam_u
        worst_margin = margin if worst_margin is None else min(worst_margin, margin)
        if margin <= 1e-9:
            failures.append(list(prof))
    checks["balancing"] = {"compared": compared, "minMargin": worst_margin, "failures": failures,
                           "pass": not failures}
    return {
        "schema": f"cplab/verify-spectral/{SCHEMA_VERSION}",
        "n": n, "k": k, "p": p, "params": prm.to_dict(),
        "checks": checks, "notes": notes,
        "pass": all(c["pass"] for c in checks.values()),
    }


def cmd_verify_spectral(args) -> int:
    cfg = _resolve_config(args)
    report = verify_spectral(args.n, args.k, args.p, cfg["tol"])
    report["config"] = cfg
    lines = [f"K_{{t-1}} v T_{{n-t+1,p'}} with n={args.n}, k={args.k}, p={args.p}"]
    for note in report["notes"]:
        lines.append(f"note: {note}")
    for name, c in report["checks"].items():
        detail = {kk: vv for kk, vv in c.items() if kk not in ("pass", "quotient")}
        lines.append(f"{name:>18}: {'pass' if c['pass'] else 'FAIL'}  {json.dumps(detail)}")
    lines.append(f"overall: {'PASS' if report['pass'] else 'FAIL'}")
    _emit(report, args.json, "\n".join(lines) + "\n")
    return EXIT_OK if report["pass"] else EXIT_FAIL


# ---------------------------------------------------------------- search


def cmd_search(args) -> int:
    cfg = _resolve_config(args)
    cache_dir = Path(cfg["cacheDir"])
    rec = None
    cached = False
    if args.heuristic:
        if args.mode != "spex":
            raise UsageError("--heuristic is only available for spex")
        rec = search.hillclimb_spex(args.n, args.k, args.p, seed_count=args.seeds,
                                    step_budget=args.steps, seed=args.seed, tol=cfg["tol"])
    else:
        cap = search.EX_CAP if args.mode == "ex" else search.SPEX_CAP
        if args.n > cap:
            raise SolverCapExceeded(f"n={args.n} exceeds exhaustive cap {cap} for {args.mode}; pass --heuristic")
        if not args.no_cache:
            try:
                rec = search.cache_load(args.n, args.k, args.p, args.mode, cache_dir)
            except CorruptRecord as exc:
                sys.stderr.write(f"warning: {exc}; recomputing\n")
                rec = None
            if rec is not None and not rec.exhaustive:
                rec = None
            cached = rec is not None
        if rec is None:
            if args.mode == "ex":
                rec = search.ex_bruteforce(args.n, args.k, args.p)
            else:
                rec = search.spex_bruteforce(args.n, args.k, args.p, cfg["tol"])
    if not args.no_cache and not cached:
        search.cache_store(rec, cache_dir)
    out = dict(rec.to_dict(), schema=f"cplab/search/{SCHEMA_VERSION}", config=cfg, fromCache=cached)
    if rec.mode == "ex" and rec.exhaustive:
        try:
            out["sandwich"] = search.sandwich_check(rec)
        except CompleteGraphRegime:
            out["sandwich"] = {"applicable": False}
    table = (f"{rec.mode}(n={rec.n}, C_{rec.k}^{rec.p}) = {rec.value}\n"
             f"  exhaustive: {rec.exhaustive}\n  method: {rec.method}\n"
             f"  witnesses: {' '.join(rec.witnesses)}\n")
    if out.get("sandwich", {}).get("finding"):
        table += f"  finding: ex exceeds the joined Turan count {out['sandwich']['construction']}\n"
    _emit(out, args.json, table)
    return EXIT_OK


# ---------------------------------------------------------------- export


def parse_graph_spec(spec: str) -> graph.Graph:
    """``cycle:N``, ``cycle-power:K:P``, ``complete:N``, ``turan:N:R``,
    ``multipartite:A,B,...``, ``extremal:N:K:P``, ``graph6:STRING``."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "graph6":
            return graph.graph6_decode(rest)
        nums = [int(x) for x in rest.replace(",", ":").split(":") if x]
        if kind == "cycle":
            return graph.cycle(*nums)
        if kind == "cycle-power":
            return graph.cycle_power(*nums)
        if kind == "complete":
            return graph.complete(*nums)
        if kind == "turan":
            return graph.turan(*nums)
        if kind == "multipartite":
            return graph.complete_multipartite(nums)
        if kind == "extremal":
            return graph.extremal_construction(*nums)
    except TypeError as exc:
        raise UsageError(f"bad arguments in graph spec {spec!r}: {exc}") from exc
    except ValueError as exc:
        raise UsageError(f"bad graph spec {spec!r}: {exc}") from exc
    raise UsageError(f"unknown graph kind {kind!r} in {spec!r}")


def export_payload(what: str, fmt: str) -> str:
    if what.startswith("report:"):
        _, kind, *nums = what.split(":")
        vals = [int(x) for x in nums]
        if kind == "coloring":
            rep = verify_coloring(*vals)
        elif kind == "spectral":
            rep = verify_spectral(*vals, tol=spectral.DEFAULT_TOL)
        else:
            raise UsageError(f"unknown report {kind!r}")
        if fmt != "json":
            raise UsageError("reports export only as json")
        return json.dumps(rep, indent=2, sort_keys=True) + "\n"
    g = parse_graph_spec(what)
    if fmt == "graph6":
        return graph.graph6_encode(g) + "\n"
    if fmt == "dot":
        return graph.to_dot(g)
    if fmt == "json":
        return json.dumps({"schema": f"cplab/graph/{SCHEMA_VERSION}", "n": g.order,
                           "edges": [list(e) for e in g.edges()], "graph6": graph.graph6_encode(g)}) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def cmd_export(args) -> int:
    payload = export_payload(args.what, args.format)
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cplab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", help="decompose k = s(p+1)+r, r = ms+t")
    sp.add_argument("k", type=int)
    sp.add_argument("p", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("verify-coloring", aliases=["verify-lemma2"], help="chromatic number, colourings and criticality of C_k^p")
    sp.add_argument("--kmin", type=int, default=3)
    sp.add_argument("--kmax", type=int, default=14)
    sp.add_argument("--pmax", type=int, default=3)
    sp.add_argument("--crit-kmax", type=int, default=None, help="skip criticality sweeps above this k")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--corrupt-b", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify_coloring)

    sp = sub.add_parser("verify-spectral", help="spectral checks on K_{t-1} v T_{n-t+1,p'}")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("p", type=int)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify_spectral)

    sp = sub.add_parser("search", help="exhaustive or heuristic ex / spex search")
    sp.add_argument("mode", choices=["ex", "spex"])
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("p", type=int)
    sp.add_argument("--heuristic", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--seeds", type=int, default=2, help="random starting graphs")
    sp.add_argument("--steps", type=int, default=200, help="moves per start")
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--cache-dir", default=None)
    sp.add_argument("--no-cache", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("export", help="emit a graph or report as graph6 / DOT / JSON")
    sp.add_argument("what", help="graph spec (e.g. cycle-power:7:2) or report:coloring:KMAX:PMAX / report:spectral:N:K:P")
    sp.add_argument("--format", choices=["graph6", "dot", "json"], default="graph6")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_export)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CompleteGraphRegime as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (UsageError, MalformedParameter, NotApplicable, DegenerateConstruction, Graph6Error) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (SolverCapExceeded, BudgetExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
