"""Command line front end.

Exit status: 0 clean, 1 mathematical finding, 2 usage or parse error,
3 precondition not met (or resource bound refused).
"""
from __future__ import annotations

import argparse
import itertools
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .descent import roundtrip_applicable
from .errors import StructureError
from .inertial import DomainError, ExponentVector, is_all_p_minus_one, residue, string_decompose
from .report import ParseError, analyze_problem, dumps_json, parse_problem, render_table
from .sweep import descent_findings, oracle_findings, shape_findings, transfer_findings
from .weights import PlaceStructure

EXIT_CLEAN, EXIT_FINDING, EXIT_USAGE, EXIT_INAPPLICABLE = 0, 1, 2, 3

MAX_WEIGHTS = 2_000_000
MAX_ORACLE_VECTORS = 5_000_000


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def cmd_analyze(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        prob = parse_problem(text)
    except ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    report, status = analyze_problem(prob)
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 6)
    out = dumps_json(report) if args.json else render_table(report)
    sys.stdout.write(out)
    return status


def _shard(job):
    p, places, ks, seed = job
    ps = PlaceStructure(p, places)
    rng = random.Random(seed)
    n_round = n_shape = 0
    findings = []
    for k in ks:
        findings += transfer_findings(ps, k)
        try:
            found = descent_findings(ps, k, rng)
        except Exception as exc:  # a crash inside the descent is itself a finding
            found = [f"k={k}: {type(exc).__name__}: {exc}"]
        findings += found
        if roundtrip_applicable(ps, k) is None:
            n_round += 1
        checked, bad = shape_findings(ps, k)
        n_shape += checked
        findings += bad
    return len(ks), n_round, n_shape, findings


def cmd_enumerate(args) -> int:
    f_values = args.f
    if len(f_values) == 1:
        f_values = f_values * args.places
    if len(f_values) != args.places:
        print(f"error: --f lists {len(f_values)} degrees for {args.places} places", file=sys.stderr)
        return EXIT_USAGE
    if args.k_min < 1 or args.k_max < args.k_min:
        print("error: need 1 <= --k-min <= --k-max", file=sys.stderr)
        return EXIT_USAGE
    try:
        ps = PlaceStructure(args.p, f_values)
    except StructureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    width = args.k_max - args.k_min + 1
    n_weights = width ** ps.n
    n_vectors = sum((2 * args.p + 1) ** f for f in set(f_values))
    if n_weights > MAX_WEIGHTS or n_vectors > MAX_ORACLE_VECTORS:
        print(f"refusing: {n_weights} weights and {n_vectors} oracle vectors exceed the limits "
              f"({MAX_WEIGHTS}, {MAX_ORACLE_VECTORS})", file=sys.stderr)
        return EXIT_INAPPLICABLE

    weights = list(itertools.product(range(args.k_min, args.k_max + 1), repeat=ps.n))
    n_shards = max(1, args.jobs) * 4
    size = -(-len(weights) // n_shards)
    jobs = [(args.p, tuple(f_values), weights[i:i + size], i) for i in range(0, len(weights), size)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_shard, jobs))
    else:
        results = [_shard(j) for j in jobs]

    processed = sum(r[0] for r in results)
    n_round = sum(r[1] for r in results)
    n_shape = sum(r[2] for r in results)
    findings = [f for r in results for f in r[3]]
    n_oracle = 0
    for f in sorted(set(f_values)):
        n, bad = oracle_findings(args.p, f)
        n_oracle += n
        findings += bad

    print(f"p = {args.p}  places = {list(f_values)}  k in [{args.k_min}, {args.k_max}]^{ps.n}")
    print(f"  weights processed        {processed}")
    print(f"  roundtrips checked       {n_round}")
    print(f"  shape exclusions checked {n_shape}")
    print(f"  oracle vectors compared  {n_oracle}")
    print(f"  findings                 {len(findings)}")
    for line in findings:
        print(f"  ! {line}")
    return EXIT_FINDING if findings else EXIT_CLEAN


def cmd_decompose(args) -> int:
    d = [x for chunk in args.d for x in chunk]
    if args.f is not None and args.f != len(d):
        print(f"error: --f {args.f} but {len(d)} entries given", file=sys.stderr)
        return EXIT_USAGE
    v = ExponentVector(args.p, d)
    try:
        blocks = string_decompose(v)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    r = residue(v)
    print(f"p = {args.p}  f = {v.f}  d = {list(d)}")
    print(f"  residue mod p^f-1   {r}")
    if blocks is None:
        print("  decomposition       none")
    else:
        desc = ", ".join(f"{b.kind}[{b.start}:{b.start + b.length}]" for b in blocks)
        print(f"  decomposition       {desc}")
    if is_all_p_minus_one(v):
        verdict = "exception (all entries +-(p-1))"
    elif (r == 0) == (blocks is not None):
        verdict = "consistent"
    else:
        print("  verdict             INCONSISTENT")
        return EXIT_FINDING
    print(f"  verdict             {verdict}")
    return EXIT_CLEAN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hmfweights", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run every task on a problem document")
    a.add_argument("file")
    a.add_argument("--json", action="store_true", help="machine-readable report")
    a.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", help="exhaustive property sweep over a box of weights")
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--places", type=int, default=1, help="number of places")
    e.add_argument("--f", type=_int_list, default=[1],
                   help="residue degree of every place, or a comma list with one per place")
    e.add_argument("--k-min", type=int, default=1)
    e.add_argument("--k-max", type=int, required=True)
    e.add_argument("--jobs", type=int, default=1, help="worker processes")
    e.set_defaults(func=cmd_enumerate)

    d = sub.add_parser("decompose", help="residue and string decomposition of an exponent vector")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--f", type=int)
    d.add_argument("--d", type=_int_list, nargs="+", required=True,
                   help="entries, space or comma separated (use --d=-1,2,3 for a comma list starting with -)")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("version")
    v.set_defaults(func=lambda args: print(f"hmfweights {__version__}") or EXIT_CLEAN)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_CLEAN
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
