"""Compare the compiled and pure-Python backends, and the two AMP kernels.

    python benchmarks/bench_kernels.py [--sizes 16 32 64 128] [--reps 5]

Also times approx_mcm end to end under each backend.
"""
import argparse
import time
from fractions import Fraction

from mcmean import kernels
from mcmean.bench import compare_amp_kernels, compare_backends
from mcmean.engine import approx_mcm
from mcmean.io import generate_graph


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128])
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    print(f"backends available: {', '.join(kernels.available_backends())}")
    print("\nexact min-plus product (median ms)")
    rows = compare_backends(args.sizes, args.reps)
    by_n = {}
    for name, n, ms in rows:
        by_n.setdefault(n, {})[name] = ms
    for n, times in by_n.items():
        cells = "  ".join(f"{k}={v:9.3f}" for k, v in sorted(times.items()))
        speedup = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"  n={n:4d}  {cells}  speedup={speedup:6.1f}x")

    print("\napproximate product, R=32, M=1000 (median ms)")
    for kernel, n, ms in compare_amp_kernels((8, 16, 32), repetitions=3):
        print(f"  {kernel:8s} n={n:3d}  {ms:9.3f}")

    print("\napprox_mcm end to end, n=64 m=256 W=16")
    g = generate_graph(64, 256, 16, 0)
    for eps in (Fraction(1), Fraction(1, 10)):
        for name in kernels.available_backends():
            with kernels.using_backend(name):
                start = time.perf_counter()
                res = approx_mcm(g, eps)
                ms = (time.perf_counter() - start) * 1e3
            print(f"  eps={str(eps):5s} {name:8s} t={res.params['t']:<8d} R={res.params['R']:<6d} {ms:9.1f} ms")


if __name__ == "__main__":
    main()
