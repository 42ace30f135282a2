"""``ovkit`` command line.

Exit codes: ``solve`` returns 0 for YES and 1 for NO; every command returns
2 on any error (bad flags, unreadable input, arity mismatch, budget overrun).
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator, Sequence, TextIO

from . import bench
from .core import MAX_DIM, Instance, gen_planted, gen_random
from .folklore import count_kov_folklore, decide_kov_folklore
from .io import dumps_instance, read_instance, read_setcover, write_instance, write_witness
from .kov import KovConfig, reduce_setcover, solve_kov
from .mitm import solve_2ov_mitm
from .oracle import BudgetExceeded, count_brute, find_brute
from .params import (OPTIMIZER_TOL, analytic_argmax, landscape, landscape_argmax,
                     refine_argmax, write_landscape_csv)
from .representation import ReprConfig, solve_2ov_repr

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

log = logging.getLogger("ovkit")


class UsageError(Exception):
    """Flag combination the parser cannot reject on its own."""


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _weights(text: str) -> list[float]:
    try:
        return [float(w) for w in text.split(",") if w.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}") from exc


def cmd_gen(args: argparse.Namespace) -> int:
    if not 1 <= args.d <= MAX_DIM:
        raise UsageError(f"--d must lie in 1..{MAX_DIM}, got {args.d}")
    if args.planted:
        if args.density is not None:
            raise UsageError("--density cannot be combined with --planted")
        if not args.weights:
            raise UsageError("--planted needs --weights")
        if args.k is not None and args.k != len(args.weights):
            raise UsageError(f"--k {args.k} disagrees with {len(args.weights)} weights")
        if args.out is None:
            raise UsageError("--planted needs --out so the witness has somewhere to go")
        planted = gen_planted(args.d, len(args.weights), args.weights, args.n, args.seed)
        write_instance(planted.instance, args.out)
        write_witness(planted.witness, args.out + ".witness")
        return 0
    if args.weights:
        raise UsageError("--weights only applies with --planted")
    k = 2 if args.k is None else args.k
    density = 0.5 if args.density is None else args.density
    inst = gen_random(args.d, k, [args.n] * k, density, args.seed)
    if args.out is None:
        sys.stdout.write(dumps_instance(inst))
    else:
        write_instance(inst, args.out)
    return 0


def _repr_config(args: argparse.Namespace) -> ReprConfig:
    return ReprConfig(ell=args.ell, rep_factor=args.rep_factor, repetitions=args.repetitions,
                      seed=args.seed, lambda_mode=args.lambda_mode,
                      candidates=args.candidates, caps=not args.no_caps)


def _solve(inst: Instance, args: argparse.Namespace):
    """Return ``(decision, witness or None)``."""
    algo = args.algo
    if algo in ("mitm", "repr") and inst.k != 2:
        raise UsageError(f"--algo {algo} needs exactly 2 families, file has {inst.k}")
    if algo == "brute":
        witness = find_brute(inst)
        return witness is not None, witness
    if algo == "folklore":
        return decide_kov_folklore(inst), None
    if algo == "mitm":
        witness = solve_2ov_mitm(*inst.families)
        return witness is not None, witness
    if algo == "repr":
        witness = solve_2ov_repr(*inst.families, _repr_config(args))
        return witness is not None, witness
    config = KovConfig(epsilon_scale=args.epsilon_scale, base2_solver=args.base2,
                       repr_config=_repr_config(args))
    return solve_kov(inst, config), None


def cmd_solve(args: argparse.Namespace) -> int:
    inst = read_instance(args.input)
    start = time.perf_counter()
    yes, witness = _solve(inst, args)
    millis = (time.perf_counter() - start) * 1000
    print("YES" if yes else "NO")
    for v in witness or ():
        print(f"witness {v.to_bitstring()}")
    print(f"time_ms {millis:.3f}")
    return EXIT_YES if yes else EXIT_NO


def cmd_count(args: argparse.Namespace) -> int:
    inst = read_instance(args.input)
    count = count_brute(inst) if args.algo == "brute" else count_kov_folklore(inst)
    print(count)
    return 0


def cmd_landscape(args: argparse.Namespace) -> int:
    cells = landscape(args.step, args.tol)
    with _output(args.out) as fh:
        write_landscape_csv(cells, fh)
    grid_best = landscape_argmax(cells)
    best = refine_argmax(grid_best, args.step / 2, min(args.tol, 1e-4))
    print(f"grid_argmax alpha={grid_best.alpha:.6f} beta={grid_best.beta:.6f} "
          f"lambda={grid_best.lambda_star:.6f} base={grid_best.base:.6f}")
    print(f"argmax alpha={best.alpha:.6f} beta={best.beta:.6f} "
          f"lambda={best.lambda_star:.6f} base={best.base:.6f}")
    alpha, beta, value = analytic_argmax()
    print(f"analytic alpha={alpha:.6f} beta={beta:.6f} bound_base={2 ** value:.6f}")
    return 0


def cmd_reduce_setcover(args: argparse.Namespace) -> int:
    d, family, t = read_setcover(args.input)
    inst = reduce_setcover(d, family, t)
    if args.out is None:
        sys.stdout.write(dumps_instance(inst))
    else:
        write_instance(inst, args.out)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    rows = bench.run_suite(args.suite, args.seed)
    with _output(args.out) as fh:
        bench.write_csv(rows, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ovkit", description="Orthogonal Vectors toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a random or planted instance")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int, default=16, help="members per family")
    p.add_argument("--density", type=float, help="coordinate probability (random mode)")
    p.add_argument("--planted", action="store_true")
    p.add_argument("--weights", type=_weights, help="comma-separated witness size fractions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("--algo", choices=("brute", "folklore", "mitm", "repr", "kov"), default="kov")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ell", type=int, help="repr: number of blocks")
    p.add_argument("--rep-factor", type=int, default=1, help="repr: rounds per d^2")
    p.add_argument("--repetitions", type=int, help="repr: exact round count")
    p.add_argument("--lambda-mode", choices=("analytic", "optimized"), default="optimized")
    p.add_argument("--candidates", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--no-caps", action="store_true", help="repr: disable enumeration caps")
    p.add_argument("--base2", choices=("mitm", "repr", "folklore"), default="mitm",
                   help="kov: solver for two-family subproblems")
    p.add_argument("--epsilon-scale", type=float, default=0.99, help="kov: threshold shrink factor")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("count", help="count orthogonal tuples exactly")
    p.add_argument("--algo", choices=("brute", "folklore"), default="folklore")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("landscape", help="optimal exponent over the (alpha, beta) grid")
    p.add_argument("--step", type=float, default=0.02)
    p.add_argument("--tol", type=float, default=OPTIMIZER_TOL)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser("reduce-setcover", help="turn a set cover instance into k-OV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce_setcover)

    p = sub.add_parser("bench", help="time every solver on planted instances")
    p.add_argument("--suite", choices=tuple(bench.SUITES), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; keep --help at 0
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
