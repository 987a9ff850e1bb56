import argparse
import logging
import sys
from typing import List, Optional

from .baselines import METHODS, create_sketcher
from .bench import accuracy_from_stream, run_bench, write_results
from .config import BenchConfig, load_config
from .datagen import GenSpec, generate
from .matrix_io import read_matrix, stream_rows, write_matrix

logger = logging.getLogger("frequent_directions")


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(n=args.n, m=args.m, d=args.d, zeta=args.zeta, seed=args.seed)
    write_matrix(generate(spec), args.out)
    return 0


def _cmd_sketch(args: argparse.Namespace) -> int:
    rows = stream_rows(args.input)
    first = next(rows)
    sketcher = create_sketcher(
        args.method, args.ell, first.shape[0], seed=args.seed, c=args.c, solver=args.solver
    )
    sketcher.append(first)
    for row in rows:
        sketcher.append(row)
    write_matrix(sketcher.finalize(), args.out)
    logger.info("sketched %d rows with %s (ell=%d)", sketcher.rows_seen, args.method, args.ell)
    return 0


def _cmd_accuracy(args: argparse.Namespace) -> int:
    sketch = read_matrix(args.sketch)
    accuracy, frob = accuracy_from_stream(stream_rows(args.input), sketch)
    print(f"accuracy={accuracy:.12g}")
    print(f"frob_sq={frob:.12g}")
    print(f"relative={accuracy / frob if frob else 0.0:.12g}")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    config = load_config(args.grid) if args.grid else BenchConfig()
    overrides = {}
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.solver is not None:
        overrides["solver"] = args.solver
    if overrides:
        config = BenchConfig.model_validate({**config.model_dump(), **overrides})
    result = run_bench(config)
    write_results(result, args.out)
    if result.failures:
        logger.error("%d cell(s) failed", len(result.failures))
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdsketch", description="Frequent-Directions matrix sketching toolkit"
    )
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="logging verbosity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic signal-plus-noise matrix")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--zeta", type=float, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output path (.csv for CSV)")
    gen.set_defaults(func=_cmd_gen)

    sketch = sub.add_parser("sketch", help="stream a matrix file through a sketcher")
    sketch.add_argument("--method", choices=METHODS, default="fd")
    sketch.add_argument("--ell", type=int, required=True)
    sketch.add_argument("--c", type=float, default=1.0 / 3.0)
    sketch.add_argument("--seed", type=int, default=0)
    sketch.add_argument("--solver", choices=["jacobi", "lapack"], default="jacobi")
    sketch.add_argument("--in", dest="input", required=True)
    sketch.add_argument("--out", required=True)
    sketch.set_defaults(func=_cmd_sketch)

    accuracy = sub.add_parser("accuracy", help="measure ||A^T A - B^T B||")
    accuracy.add_argument("--in", dest="input", required=True)
    accuracy.add_argument("--sketch", required=True)
    accuracy.set_defaults(func=_cmd_accuracy)

    bench = sub.add_parser("bench", help="run the experiment grid")
    bench.add_argument("--grid", help="key=value config file (defaults to the desk grid)")
    bench.add_argument("--out", default="results.csv")
    bench.add_argument("--workers", type=int)
    bench.add_argument("--solver", choices=["jacobi", "lapack"])
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"fdsketch {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
