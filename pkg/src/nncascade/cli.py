"""Command line: run workloads, verify them, benchmark, and draw levels.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence, Tuple

from .bench import DISTRIBUTIONS, generate_workload, rows_csv, run_sweep
from .counters import QueryCounters
from .geom import ExactPoint, GeometryError
from .io import CounterRecord, Op, ParseError, format_answers, read_points, read_workload, write_counters
from .levels import Config, Structure
from .oracle import (OracleSet, validate_cell_complexity, validate_divisions, validate_hull_complement,
                     validate_hull_soundness, validate_level_sets)
from .query import nearest_lattice
from .voronoi import DomainError

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class VerificationError(RuntimeError):
    pass


def run_workload(ops: Sequence[Op], config: Config, verify: bool = False
                 ) -> Tuple[Structure, List[ExactPoint], List[CounterRecord]]:
    """Execute a workload; with verify, every answer is checked against a linear scan."""
    S = Structure(config)
    oracle = OracleSet() if verify else None
    answers: List[ExactPoint] = []
    records: List[CounterRecord] = []
    for k, op in enumerate(ops):
        if op.kind == "I":
            work = S.insert(op.point)
            if oracle is not None:
                oracle.insert(S.to_lattice(op.point))
            records.append(CounterRecord(k, "I", str(op.point.x), str(op.point.y), len(S), work))
            continue
        if len(S) == 0:
            raise GeometryError(f"query {op.point} before any insert")
        qh = S.query_h(op.point)
        qc = QueryCounters()
        got = nearest_lattice(S, qh, qc)
        if oracle is not None:
            want = oracle.brute_nn(qh)
            if got != want:
                raise VerificationError(f"op {k}: query {op.point} answered {S.from_lattice(got)}, "
                                        f"nearest is {S.from_lattice(want)}")
        answers.append(S.from_lattice(got))
        records.append(CounterRecord.for_query(k, op.point, len(S), qc))
    return S, answers, records


def _config(args) -> Config:
    return Config(d=args.d, seed=args.seed, domain=args.domain, scale=args.scale,
                  piece_scale=args.piece_scale, debug=getattr(args, "debug_invariants", False))


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, default=2, help="level growth factor (default 2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--domain", type=int, default=1 << 13, metavar="B",
                   help="sites and queries lie in [-B, B]^2 in lattice units")
    p.add_argument("--scale", type=int, default=1, help="lattice units per input unit")
    p.add_argument("--piece-scale", type=int, default=32, help="pieces target piece_scale * d^(4k) sites")


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _validators(S: Structure, probes: int, seed: int) -> List[str]:
    lines = []
    failed = False
    for name, rep in (("sets", validate_level_sets(S, probes=min(probes, 2000), seed=seed)),
                      ("divisions", validate_divisions(S)),
                      ("cells", validate_cell_complexity(S)),
                      ("hulls", validate_hull_soundness(S, probes=probes, seed=seed)),
                      ("complement", validate_hull_complement(S, probes=max(1, probes // 10), seed=seed))):
        failed |= not rep.ok
        lines.append(f"{name}: {'ok' if rep.ok else 'FAILED'}")
        lines += [f"  {line}" for line in rep.lines()]
    return lines + (["validators FAILED"] if failed else [])


def cmd_run(args) -> int:
    ops = read_workload(args.workload)
    try:
        S, answers, records = run_workload(ops, _config(args), verify=args.verify)
    except VerificationError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    _write(args.out, format_answers(answers))
    if args.csv:
        with open(args.csv, "w") as fh:
            write_counters(records, fh)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    if args.workload:
        ops = read_workload(args.workload)
    else:
        ops = generate_workload(args.ops, args.dist, args.seed, cfg.domain)
    try:
        S, answers, _ = run_workload(ops, cfg, verify=True)
    except VerificationError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    print(f"{len(answers)} queries over {len(S)} points: all answers match")
    if args.validators and len(S):
        lines = _validators(S, args.probes, args.seed)
        print("\n".join(lines))
        if lines[-1] == "validators FAILED":
            return EXIT_VERIFY
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else [args.n]
    rows = run_sweep(sizes, args.dist, args.seed, _config(args), queries=args.queries,
                     baseline=not args.no_baseline)
    _write(args.csv, rows_csv(rows))
    return EXIT_VERIFY if any(r.mismatches for r in rows) else EXIT_OK


def cmd_svg(args) -> int:
    from .svg import emit_svg
    S = Structure(_config(args))
    for p in read_points(args.points):
        S.insert(p)
    site = upper = None
    if args.site:
        site = S.to_lattice(ExactPoint.parse(*args.site))
        upper = args.upper
    emit_svg(S, args.level, args.layers.split(","), args.out, k=args.k, site=site, upper=upper)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nncascade", description="Dynamic exact nearest-neighbor search.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a workload file, print one answer per query")
    p.add_argument("workload")
    p.add_argument("-o", "--out", help="answers file (default stdout)")
    p.add_argument("--csv", help="write per-operation counters here")
    p.add_argument("--verify", action="store_true", help="check every answer by linear scan")
    p.add_argument("--debug-invariants", action="store_true", help="run set checks after every rebuild")
    _add_common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="verify a workload (or a generated one) against brute force")
    p.add_argument("workload", nargs="?")
    p.add_argument("--ops", type=int, default=20000)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--validators", action="store_true", help="also run the structural validators")
    p.add_argument("--probes", type=int, default=10000)
    p.add_argument("--debug-invariants", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="counter aggregates of the structure and the baseline")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--sizes", help="comma-separated sizes, measured along one insertion sequence")
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--queries", type=int, default=500)
    p.add_argument("--no-baseline", action="store_true")
    p.add_argument("--csv", help="output file (default stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("svg", help="draw one level of the structure built from a points file")
    p.add_argument("points")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--layers", default="cells,sites")
    p.add_argument("--k", type=int, help="division to draw for the pieces and fringe layers")
    p.add_argument("--site", nargs=2, metavar=("X", "Y"), help="site whose hull certificate is drawn")
    p.add_argument("--upper", type=int, help="upper level of the hull certificate")
    p.add_argument("-o", "--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_svg)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except AssertionError as e:
        print(f"invariant violated: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParseError, DomainError, GeometryError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
