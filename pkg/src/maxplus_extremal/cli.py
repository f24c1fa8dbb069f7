"""Command-line front end.

Exit codes: 0 when a decision was made (either verdict), 2 for input errors,
3 when an internal invariant fails.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time
from pathlib import Path

from . import oracle as _oracle
from .core import MaxPlusMatrix, MaxPlusVector, NotASolutionError, require_solution
from .extremality import InvariantError, check
from .instance import (
    InstanceFormatError,
    parse_instance,
    parse_vector,
    random_instance,
    verdict_to_json,
    write_instance,
    write_vector,
)
from .tangent import build, node_classes, to_dot
from .witness import WitnessError, find_witness

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class InputError(Exception):
    pass


def load(matrix_path: str, vector_path: str | None) -> tuple[MaxPlusMatrix, MaxPlusVector]:
    try:
        A, x = parse_instance(Path(matrix_path).read_text())
        if vector_path is not None:
            x = parse_vector(Path(vector_path).read_text(), A.n)
    except (OSError, InstanceFormatError) as exc:
        raise InputError(str(exc)) from None
    if x is None:
        raise InputError("no vector given: append it to the matrix file or pass a vector file")
    try:
        require_solution(A, x)
    except NotASolutionError as exc:
        raise InputError(f"x is not a solution: {exc}") from None
    return A, x


def run_check(A, x, witness: bool = False) -> dict:
    verdict = check(A, x)
    pair = None
    if witness and not verdict.is_extremal:
        pair = find_witness(A, x, verdict)
    return verdict_to_json(verdict, pair, x.support())


def classify_table(A, x) -> list[dict]:
    g = build(A, x)
    classes = node_classes(g)
    return [
        {
            "node": v + 1,
            "class": classes[v].value,
            "in_degree": g.in_degree[v],
            "out_degree": g.out_degree[v],
            "loop": g.has_loop[v],
        }
        for v in g.nodes
    ]


def run_oracle(A, x) -> dict:
    res = _oracle.extremal_bruteforce(A, x)
    fast = check(A, x)
    doc = {
        "extremal": res.is_extremal,
        "witness": None,
        "feasible_equality_sets": res.feasible_sets,
        "check_extremal": fast.is_extremal,
        "agree": res.is_extremal == fast.is_extremal,
    }
    if res.witness is not None:
        doc["witness"] = {"x1": res.witness.x1.tokens(), "x2": res.witness.x2.tokens(), "provenance": "oracle"}
    return doc


def bench(sizes, seed: int = 0, repeats: int = 5, density: float = 1.0) -> list[dict]:
    """Median wall time of ``check`` on fresh dense instances per size."""
    rows = []
    for k, n in enumerate(sorted(set(sizes))):
        if n < 2:
            raise ValueError("bench sizes must be at least 2")
        times = []
        for r in range(max(repeats, 5)):
            A, x = random_instance(n, density, (-5, 5), seed + 1000 * k + r)
            t0 = time.perf_counter()
            check(A, x)
            times.append(time.perf_counter() - t0)
        rows.append({"n": n, "median_s": statistics.median(times), "slope": None})
    for prev, cur in zip(rows, rows[1:]):
        cur["slope"] = math.log(cur["median_s"] / prev["median_s"]) / math.log(cur["n"] / prev["n"])
    return rows


def _format_bench(rows) -> str:
    lines = [f"{'n':>6}  {'median [s]':>12}  {'slope':>6}"]
    for r in rows:
        slope = "" if r["slope"] is None else f"{r['slope']:.2f}"
        lines.append(f"{r['n']:>6}  {r['median_s']:>12.6f}  {slope:>6}")
    return "\n".join(lines) + "\n"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxplus-extremal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def instance_args(sp):
        sp.add_argument("matrix", help="instance file (matrix, optionally followed by x)")
        sp.add_argument("vector", nargs="?", help="vector file, overrides a vector in the instance")

    sp = sub.add_parser("check", help="decide extremality of x")
    instance_args(sp)
    sp.add_argument("--witness", action="store_true", help="attach a verified decomposition")
    sp.add_argument("--witness-out", metavar="PREFIX", help="also write PREFIX.x1 and PREFIX.x2")
    sp.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")

    sp = sub.add_parser("witness", help="alias of check --witness")
    instance_args(sp)
    sp.add_argument("--witness-out", metavar="PREFIX")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("classify", help="node classes of the tangent digraph")
    instance_args(sp)
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of a table")
    sp.add_argument("--json", action="store_true", help="emit the table as JSON")

    sp = sub.add_parser("oracle", help="brute-force extremality (integer data, support <= 12)")
    instance_args(sp)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("gen", help="print a seeded random instance")
    sp.add_argument("n", type=int)
    sp.add_argument("--density", type=float, default=0.6)
    sp.add_argument("--range", nargs=2, type=int, default=(-5, 5), metavar=("LO", "HI"))
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("bench", help="time check on dense instances")
    sp.add_argument("sizes", nargs="+", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--repeats", type=int, default=5)
    sp.add_argument("--json", action="store_true")
    return p


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command in ("check", "witness"):
            A, x = load(args.matrix, args.vector)
            want = args.command == "witness" or args.witness or bool(args.witness_out)
            doc = run_check(A, x, witness=want)
            if args.witness_out and doc["witness"] is not None:
                for key in ("x1", "x2"):
                    Path(f"{args.witness_out}.{key}").write_text(write_vector(MaxPlusVector(doc["witness"][key])))
            _emit(doc)
        elif args.command == "classify":
            A, x = load(args.matrix, args.vector)
            if args.dot:
                sys.stdout.write(to_dot(build(A, x)))
            elif args.json:
                _emit(classify_table(A, x))
            else:
                sys.stdout.write(f"{'node':>5}  {'class':<12} {'in':>3} {'out':>4}  loop\n")
                for r in classify_table(A, x):
                    sys.stdout.write(
                        f"{r['node']:>5}  {r['class']:<12} {r['in_degree']:>3} {r['out_degree']:>4}  "
                        f"{'yes' if r['loop'] else 'no'}\n"
                    )
        elif args.command == "oracle":
            A, x = load(args.matrix, args.vector)
            if not (A.is_integer() and x.is_integer()):
                raise InputError("the oracle accepts integer data only")
            if len(x.support()) > _oracle.MAX_SUPPORT:
                raise InputError(f"support of x exceeds the oracle cap of {_oracle.MAX_SUPPORT}")
            _emit(run_oracle(A, x))
        elif args.command == "gen":
            try:
                A, x = random_instance(args.n, args.density, tuple(args.range), args.seed)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            sys.stdout.write(write_instance(A, x))
        elif args.command == "bench":
            try:
                rows = bench(args.sizes, args.seed, args.repeats)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            if args.json:
                _emit(rows)
            else:
                sys.stdout.write(_format_bench(rows))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantError, WitnessError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
