"""Command-line front end.

Exit codes: 0 success, 1 verification failed (witness printed), 2 invalid
input or configuration (nothing on stdout), 3 budget exhausted (the non-exact
result is still printed).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from math import comb
from pathlib import Path

from fairquads import caen, exact, gk
from fairquads import io as fio
from fairquads.errors import FairquadsError
from fairquads.rng import DEFAULT_SEED
from fairquads.zk import (ProfileSet, family_k2, local_search_minimize, parse_profiles,
                          quads_from_matrix, random_matrix, verify_profiles)
from fairquads.zk import scans

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CHECKPOINT_ENV = "FAIRQUADS_CHECKPOINT_DIR"
LONG_RUNNING_K = 9

log = logging.getLogger("fairquads")


class UsageError(FairquadsError):
    pass


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--profiles", help='profile list such as "2,5;5,2"')
    common.add_argument("--family", help="named family k2:<k> or k3:<k>")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--seeds", type=_int_list, help="comma-separated seeds")
    common.add_argument("--budget-ms", type=float)
    common.add_argument("--budget-nodes", type=int)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output file (directory for construct)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="fairquads",
                                description="Covering quadruple systems from matrices over Z_k.")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct", parents=[common],
                       help="random (optionally optimized) matrix and its quad system")
    c.add_argument("--optimize", action="store_true",
                   help="local search towards fewer fair submatrices")

    v = sub.add_parser("verify", parents=[common], help="check a quad system file covers profiles")
    v.add_argument("quads", help="quad system JSON file")

    sub.add_parser("exact", parents=[common], help="exact minimum system for tiny n, m")
    sub.add_parser("bounds", parents=[common], help="lower bound, constructions, exact value")

    q = sub.add_parser("clique", parents=[common], help="clique number of G_k")
    q.add_argument("--long-running", action="store_true",
                   help=f"required for k >= {LONG_RUNNING_K}; enables checkpointing")
    q.add_argument("--checkpoint", help=f"checkpoint file (default under ${CHECKPOINT_ENV})")
    q.add_argument("--checkpoint-interval", type=float, default=60.0)

    sub.add_parser("triangles", parents=[common], help="exact triangle count of G_k")

    cg = sub.add_parser("caen", parents=[common], help="parity 4-graph summary")
    cg.add_argument("--matrix", help="binary matrix JSON file instead of a random one")

    b = sub.add_parser("bench", parents=[common], help="time the exhaustive suites (CSV)")
    b.add_argument("--suite", choices=("lemma1", "lemma2", "clique", "all"), default="all")
    return p


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.cmd} needs {', '.join(missing)}")


def _profiles(args, default: ProfileSet | None = None) -> ProfileSet:
    if args.profiles and args.family:
        raise UsageError("give --profiles or --family, not both")
    text = args.profiles or args.family
    if text is None:
        if default is None:
            raise UsageError(f"{args.cmd} needs --profiles or --family")
        return default
    return parse_profiles(text)


def _emit(args, payload: dict, rows: list[list] | None = None, header=None):
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = fio.dumps({"schema_version": fio.SCHEMA_VERSION, **payload})
    if args.out and args.cmd != "construct":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _reference(n, m, k) -> dict:
    num, den = comb(n, 2) * comb(m, 2), k
    return {"num": num, "den": den, "value": num / den}


def cmd_construct(args) -> int:
    _need(args, "n", "m", "k")
    n, m, k = args.n, args.m, args.k
    if args.optimize:
        P = _profiles(args, family_k2(k))
        M, Q = local_search_minimize(n, m, k, P, args.seed, args.budget_nodes)
    else:
        M = random_matrix(n, m, k, args.seed)
        Q = quads_from_matrix(M)
    payload = {"n": n, "m": m, "k": k, "seed": args.seed, "optimized": args.optimize,
               "size": len(Q), "reference": _reference(n, m, k)}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        fio.write_json(out / "matrix.json", fio.matrix_to_dict(M))
        fio.write_json(out / "quads.json", fio.quads_to_dict(Q))
        payload["files"] = {"matrix": str(out / "matrix.json"), "quads": str(out / "quads.json")}
    else:
        payload["matrix"] = fio.matrix_to_dict(M)
        payload["quads"] = fio.quads_to_dict(Q)
    _emit(args, payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    Q = fio.load_quads(args.quads)
    P = _profiles(args)
    P.check_feasible(Q.n, Q.m)
    report = verify_profiles(Q, P)
    _emit(args, {"n": Q.n, "m": Q.m, **report.to_dict()})
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_exact(args) -> int:
    _need(args, "n", "m")
    P = _profiles(args)
    P.check_feasible(args.n, args.m)
    if not exact.exact_feasible(args.n, args.m, P):
        raise UsageError(f"instance too large for exact search (limits: "
                         f"{exact.MAX_CANDIDATES} candidates, {exact.MAX_BAD_SETS} bad sets)")
    inst = exact.CoverInstance.build(args.n, args.m, P)
    res = exact.exact_min_cover(inst, args.budget_nodes, args.budget_ms)
    _emit(args, {"n": args.n, "m": args.m, "profiles": str(P), "size": res.size,
                 "exact": res.exact, "lower_bound": exact.lower_bound_pairs(args.n, args.m, P),
                 "quads": fio.quads_to_dict(res.system)["quads"]})
    return EXIT_OK if res.exact else EXIT_BUDGET


def _family_arg(args) -> tuple[int, str]:
    if not args.family:
        raise UsageError("bounds needs --family k2:<k> or k3:<k>")
    tag, _, k = args.family.partition(":")
    try:
        return int(k), tag
    except ValueError:
        raise UsageError(f"bad family {args.family!r}") from None


def cmd_bounds(args) -> int:
    _need(args, "n", "m")
    k, tag = _family_arg(args)
    seeds = args.seeds if args.seeds else [args.seed]
    rep = exact.bounds_report(args.n, args.m, k, tag, seeds, args.budget_nodes)
    _emit(args, rep.to_dict(), [rep.csv_row()], exact.BoundsReport.CSV_COLUMNS)
    return EXIT_OK


def cmd_clique(args) -> int:
    _need(args, "k")
    k = args.k
    if k >= LONG_RUNNING_K and not args.long_running:
        raise UsageError(f"k={k} requires --long-running")
    ck = None
    if args.long_running:
        ck = args.checkpoint or str(Path(os.environ.get(CHECKPOINT_ENV, "checkpoints"))
                                    / f"clique-k{k}.json")
        Path(ck).parent.mkdir(parents=True, exist_ok=True)
    elif args.checkpoint:
        ck = args.checkpoint
    res = gk.max_clique(k, args.budget_nodes, args.budget_ms, max(args.workers, 1), ck,
                        args.checkpoint_interval)
    _emit(args, res.to_dict())
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_triangles(args) -> int:
    _need(args, "k")
    _emit(args, {"k": args.k, "triangles": gk.count_triangles(args.k)})
    return EXIT_OK


def cmd_caen(args) -> int:
    if args.matrix:
        M = fio.load_matrix(args.matrix)
    else:
        _need(args, "n", "m")
        M = random_matrix(args.n, args.m, 2, args.seed)
    H = caen.build_caen(M)
    out = caen.summary(H)
    _emit(args, out)
    return EXIT_OK if out["covered"] else EXIT_FAIL


BENCH_COLUMNS = ("schema_version", "suite", "instance", "cases", "wall_time_s", "workers",
                 "result")


def cmd_bench(args) -> int:
    rows = []
    w = max(args.workers, 1)

    def timed(suite, instance, fn):
        t = time.perf_counter()
        cases, result = fn()
        rows.append([fio.SCHEMA_VERSION, suite, instance, cases,
                     f"{time.perf_counter() - t:.4f}", w, result])

    def scan(fn, k):
        r = fn(k, w)
        return r.cases, "ok" if r.ok else f"{r.failures} failures"

    if args.suite in ("lemma1", "all"):
        for k in (2, 3, 4):
            timed("lemma1", f"2x{k + 1} over Z_{k}", lambda k=k: scan(scans.lemma1, k))
    if args.suite in ("lemma2", "all"):
        for k in (2, 4):
            timed("lemma2", f"3x{k} over Z_{k}", lambda k=k: scan(scans.lemma2, k))
    if args.suite in ("clique", "all"):
        for k in (2, 3, 4, 5, 6, 7):
            def run(k=k):
                r = gk.max_clique(k, workers=w)
                return r.candidates, f"size={r.size} exact={r.exact}"
            timed("clique", f"G_{k}", run)
    _emit(args, {"rows": [dict(zip(BENCH_COLUMNS, r)) for r in rows]}, rows, BENCH_COLUMNS)
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct, "verify": cmd_verify, "exact": cmd_exact,
    "bounds": cmd_bounds, "clique": cmd_clique, "triangles": cmd_triangles,
    "caen": cmd_caen, "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.cmd](args)
    except (FairquadsError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
