import math
import random

import numpy as np
import pytest

from mcmean import kernels
from mcmean.graph import validate_graph
from mcmean.kernels import INF


def random_graph(rng, n, W, extra=None, self_loops=True, zero_bias=0.0):
    """Random valid graph: one guaranteed out-edge per vertex plus ``extra`` more.

    ``zero_bias`` is the probability that an edge weight is forced to 0.
    """
    if extra is None:
        extra = rng.randint(0, 2 * n)

    def weight():
        return 0 if rng.random() < zero_bias else rng.randint(0, W)

    def target(u):
        while True:
            v = rng.randrange(n)
            if self_loops or v != u or n == 1:
                return v

    edges = [(u, target(u), weight()) for u in range(n)]
    for _ in range(extra):
        u = rng.randrange(n)
        edges.append((u, target(u), weight()))
    return validate_graph(n, edges)


def oracle_minplus(A, B):
    """Textbook triple loop over Python ints with math.inf."""
    n = len(A)
    conv = lambda M: [[math.inf if x == INF else int(x) for x in row] for row in M]
    a, b = conv(A), conv(B)
    C = [[min(a[i][k] + b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return np.array([[INF if x == math.inf else x for x in row] for row in C], dtype=np.int64)


def random_matrix(rng, n, hi, p_inf=0.2):
    A = rng.integers(0, hi + 1, size=(n, n), dtype=np.int64)
    A[rng.random((n, n)) < p_inf] = INF
    return A


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def nprng():
    return np.random.default_rng(12345)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.using_backend(request.param):
        yield request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
