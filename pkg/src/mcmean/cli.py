"""Command line entry point: ``mcmean solve | generate | bench``."""
import argparse
import json
import logging
import sys
from fractions import Fraction

from mcmean import kernels
from mcmean.bench import compare_amp_kernels, compare_backends, run_benchmark
from mcmean.engine import MODES, Guards, solve
from mcmean.io import dumps_result, emit_graph, generate_graph, parse_graph, plain_result, result_document

log = logging.getLogger("mcmean")


def _epsilon(text):
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational or decimal: {text!r}") from None
    if not 0 < eps <= 1:
        raise argparse.ArgumentTypeError(f"epsilon must lie in (0, 1], got {text}")
    return eps


def build_parser():
    parser = argparse.ArgumentParser(prog="mcmean", description="Minimum cycle mean of weighted digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="compute the minimum cycle mean of a graph file")
    s.add_argument("--mode", choices=MODES, default="karp")
    s.add_argument("--epsilon", type=_epsilon, default=None,
                   help="approximation factor for --mode approx (default 0.1)")
    s.add_argument("--input", default="-", help="graph file, '-' for stdin")
    s.add_argument("--output", choices=("json", "plain"), default="json")
    s.add_argument("--brute-max-n", type=int, default=Guards.brute_max_n)
    s.add_argument("--power-max-n", type=int, default=Guards.power_max_n)
    s.add_argument("--power-max-w", type=int, default=Guards.power_max_w)

    g = sub.add_parser("generate", help="write a random graph file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--W", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("bench", help="time engines from a JSON suite config, CSV on stdout")
    b.add_argument("--config", help="JSON file: {\"repetitions\": k, \"seed\": s, \"cases\": [...]}")
    b.add_argument("--kernels", action="store_true",
                   help="compare compiled and Python backends instead")
    return parser


def _solve(args, out):
    if args.epsilon is not None and args.mode != "approx":
        log.warning("--epsilon is ignored in exact mode %s", args.mode)
    graph = parse_graph(args.input)
    guards = Guards(args.brute_max_n, args.power_max_n, args.power_max_w)
    eps = args.epsilon if args.epsilon is not None else Fraction(1, 10)
    result = solve(graph, args.mode, eps, guards)
    if args.output == "json":
        out.write(dumps_result(result_document(graph, result)))
    else:
        out.write(plain_result(result))


def _bench(args, out):
    if args.kernels:
        out.write("backend,n,median_ms\n")
        for name, n, ms in compare_backends():
            out.write(f"{name},{n},{ms:.3f}\n")
        out.write("amp_kernel,n,median_ms\n")
        for name, n, ms in compare_amp_kernels():
            out.write(f"{name},{n},{ms:.3f}\n")
        return
    config = {"cases": []}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
    out.write(run_benchmark(config.get("cases", []), config.get("repetitions", 3),
                            config.get("seed", 0)))


def main(argv=None, out=None):
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            _solve(args, out)
        elif args.command == "generate":
            out.write(emit_graph(generate_graph(args.n, args.m, args.W, args.seed)))
        else:
            _bench(args, out)
    except (ValueError, OverflowError, RuntimeError, OSError) as exc:
        log.error("%s", exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
