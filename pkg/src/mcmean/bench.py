"""Timing harness: engine comparison on random instances, and backend comparison."""
import csv
import io
import logging
import statistics
import time
from fractions import Fraction

import numpy as np

from mcmean import kernels
from mcmean.engine import karp_mcm, solve
from mcmean.io import generate_graph
from mcmean.minplus import INF, approx_minplus, minplus_product

log = logging.getLogger(__name__)

CSV_HEADER = ["n", "m", "W", "epsilon", "mode", "median_ms", "ratio"]


def achieved_ratio(approx, exact):
    """max over x of approx(x) / exact(x), counting 0/0 as 1."""
    worst = Fraction(1)
    for a, e in zip(approx, exact):
        if e == 0:
            if a != 0:
                return float("inf")
            continue
        worst = max(worst, a / e)
    return worst


def _time_ms(fn, repetitions):
    times = []
    out = None
    for _ in range(repetitions):
        start = time.perf_counter()
        out = fn()
        times.append((time.perf_counter() - start) * 1e3)
    return statistics.median(times), out


def run_benchmark(cases, repetitions=3, seed=0):
    """Time each case and return the CSV text.

    ``cases`` is a list of dicts with keys n, m, W, epsilon, mode. A failing
    case is logged and recorded with an empty median and ratio ``error``.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i, case in enumerate(cases):
        n, m, W, mode = int(case["n"]), int(case["m"]), int(case["W"]), case["mode"]
        eps = Fraction(str(case.get("epsilon", "0.1")))
        shown_eps = eps if mode == "approx" else ""
        try:
            g = generate_graph(n, m, W, seed + i)
            median, res = _time_ms(lambda: solve(g, mode, eps), repetitions)
            ratio = achieved_ratio(res.per_vertex, karp_mcm(g).per_vertex)
            writer.writerow([n, m, W, shown_eps, mode, f"{median:.3f}", f"{float(ratio):.6f}"])
        except Exception as exc:  # recorded per row, the run goes on
            log.warning("case %d (%s) failed: %s", i, case, exc)
            writer.writerow([n, m, W, shown_eps, mode, "", "error"])
    return buf.getvalue()


def _random_matrix(rng, n, hi, p_inf=0.2):
    A = rng.integers(0, hi + 1, size=(n, n), dtype=np.int64)
    A[rng.random((n, n)) < p_inf] = INF
    return A


def compare_backends(sizes=(16, 32, 64, 128), repetitions=5, seed=0):
    """Median milliseconds of one exact min-plus product per backend and size.

    Returns a list of ``(backend, n, median_ms)``; every backend's output is
    checked against the first one.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        A, B = _random_matrix(rng, n, 1000), _random_matrix(rng, n, 1000)
        reference = None
        for name in kernels.available_backends():
            with kernels.using_backend(name):
                ms, C = _time_ms(lambda: minplus_product(A, B), repetitions)
            if reference is None:
                reference = C
            elif not np.array_equal(reference, C):
                raise AssertionError(f"backend {name} disagrees at n = {n}")
            rows.append((name, n, ms))
    return rows


def compare_amp_kernels(sizes=(8, 16, 32), R=32, M=1000, repetitions=3, seed=0):
    """Median milliseconds of one approximate product with each exact-product kernel."""
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        A, B = _random_matrix(rng, n, M), _random_matrix(rng, n, M)
        outs = {}
        for kernel in ("naive", "encoded"):
            ms, outs[kernel] = _time_ms(lambda: approx_minplus(A, B, M, R, kernel=kernel),
                                        repetitions)
            rows.append((kernel, n, ms))
        if not np.array_equal(outs["naive"], outs["encoded"]):
            raise AssertionError(f"AMP kernels disagree at n = {n}")
    return rows
