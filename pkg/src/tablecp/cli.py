"""Command-line front end: solve, bench, gen, verify."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as _bench
from .instances import (
    ParseError,
    generate_latin,
    generate_pigeonhole,
    generate_random,
    load,
    save,
)
from .oracle import gac_fixpoint
from .solver import PROPAGATORS, SearchStatus, build_solver

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_TIMEOUT = 2
EXIT_ERROR = 3

_STATUS_EXIT = {
    SearchStatus.SATISFIABLE: EXIT_SAT,
    SearchStatus.UNSATISFIABLE: EXIT_UNSAT,
    SearchStatus.TIMEOUT: EXIT_TIMEOUT,
    SearchStatus.LIMIT_REACHED: EXIT_ERROR,
}


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = load(args.file)
    solver = build_solver(instance, args.algo)
    result = solver.search(
        max_solutions=None if args.all_solutions else 1, timeout=args.timeout
    )
    print(f"status {result.status.value}")
    if args.all_solutions:
        for sol in result.solutions:
            print("solution " + " ".join(str(v) for v in sol))
    elif result.solutions:
        print("solution " + " ".join(str(v) for v in result.solutions[0]))
    print(f"nodes {result.stats.nodes}")
    print(f"failures {result.stats.failures}")
    print(f"time {result.stats.time_s:.6f}")
    if args.stats:
        print(f"solutions {len(result.solutions)}")
        calls = sum(
            getattr(c, "intersect_index_calls", 0) for c in solver.constraints
        )
        print(f"support_scans {calls}")
    return _STATUS_EXIT[result.status]


def _cmd_bench(args: argparse.Namespace) -> int:
    algorithms = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algorithms:
        if a not in PROPAGATORS:
            raise ValueError(f"unknown algorithm {a!r}")
    paths = sorted(Path(args.dir).glob("*.csp"))
    if not paths:
        raise ValueError(f"no *.csp files under {args.dir}")
    instances = [load(p) for p in paths]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    def progress(record: _bench.RunRecord) -> None:
        print(
            f"{record.instance} {record.algorithm}: {record.status} "
            f"{record.time_s:.3f}s nodes={record.nodes} failures={record.failures}"
        )

    records = _bench.run_suite(instances, algorithms, timeout=args.timeout, progress=progress)
    _bench.write_runs_csv(records, out_dir / "runs.csv")
    try:
        curves = _bench.profiles(
            records, min_time=args.min_time, min_backtracks=args.min_backtracks
        )
    except ValueError as exc:
        print(f"profile skipped: {exc}", file=sys.stderr)
        _bench.write_profile_csv([], out_dir / "profile.csv")
        return EXIT_SAT
    _bench.write_profile_csv(curves, out_dir / "profile.csv")
    print(f"wrote {out_dir / 'runs.csv'} and {out_dir / 'profile.csv'}")
    return EXIT_SAT


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "random":
        instance = generate_random(
            n_vars=args.vars,
            dom_size=args.dom,
            n_constraints=args.constraints,
            arity=args.arity,
            n_tuples=args.tuples,
            seed=args.seed,
        )
    elif args.kind == "latin":
        instance = generate_latin(args.size)
    else:
        instance = generate_pigeonhole(args.size, args.holes)
    save(instance, args.out)
    print(f"wrote {args.out} ({instance.n_variables} variables, {instance.n_constraints} constraints)")
    return EXIT_SAT


def _cmd_verify(args: argparse.Namespace) -> int:
    instance = load(args.file)

    # Propagation fixpoint against the brute-force reference.
    solver = build_solver(instance, "ct")
    ct_ok = solver.propagate_all()
    reference = gac_fixpoint(instance)
    if reference is None:
        if ct_ok:
            print("MISMATCH: reference fails, bit-set propagation does not")
            return 1
        print("fixpoint: both report failure")
    else:
        if not ct_ok:
            print("MISMATCH: bit-set propagation fails, reference does not")
            return 1
        domains = solver.current_domains()
        if domains != reference:
            print("MISMATCH: propagation fixpoints differ")
            for (name, _), got, want in zip(instance.variables, domains, reference):
                if got != want:
                    print(f"  {name}: {sorted(got)} != {sorted(want)}")
            return 1
        print("fixpoint: domains agree with the brute-force reference")

    # Full search-tree equivalence.
    runs = {}
    for algorithm in ("ct", "cti", "ctr", "str2", "oracle"):
        s = build_solver(instance, algorithm)
        res = s.search(max_solutions=None, timeout=args.timeout)
        if res.status is SearchStatus.TIMEOUT:
            print(f"timeout during {algorithm} search; verification inconclusive")
            return EXIT_TIMEOUT
        runs[algorithm] = res
        print(
            f"{algorithm}: {len(res.solutions)} solutions, "
            f"nodes={res.stats.nodes} failures={res.stats.failures}"
        )

    base = runs["ct"]
    ok = True
    for algorithm in ("cti", "ctr", "str2"):
        res = runs[algorithm]
        if set(res.solutions) != set(base.solutions) or (
            res.stats.nodes,
            res.stats.failures,
        ) != (base.stats.nodes, base.stats.failures):
            print(f"MISMATCH: {algorithm} search tree differs from ct")
            ok = False
    if set(runs["oracle"].solutions) != set(base.solutions):
        print("MISMATCH: oracle solution set differs from ct")
        ok = False
    if ok:
        print("search trees and solution sets agree")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tablecp",
        description="Table-constraint solving, generation and benchmarking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("file")
    p.add_argument("--algo", default="ct", choices=PROPAGATORS)
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.add_argument("--all-solutions", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bench", help="run algorithms over a directory of *.csp files")
    p.add_argument("dir")
    p.add_argument("--algos", default="ct,cti,ctr,str2")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--min-time", type=float, default=0.0)
    p.add_argument("--min-backtracks", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("gen", help="generate an instance file")
    gen_sub = p.add_subparsers(dest="kind", required=True)

    g = gen_sub.add_parser("random")
    g.add_argument("--vars", type=int, required=True)
    g.add_argument("--dom", type=int, required=True)
    g.add_argument("--constraints", type=int, required=True)
    g.add_argument("--arity", type=int, required=True)
    g.add_argument("--tuples", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    g = gen_sub.add_parser("latin")
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    g = gen_sub.add_parser("pigeonhole")
    g.add_argument("--size", type=int, required=True, help="number of pigeons")
    g.add_argument("--holes", type=int, default=None, help="default: size - 1")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="cross-check all propagators on one instance")
    p.add_argument("file")
    p.add_argument("--timeout", type=float, default=None, help="seconds per search")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
