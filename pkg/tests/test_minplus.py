import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mcmean.engine import delta_oracle
from mcmean.kernels import INF, MAX_FINITE
from mcmean.minplus import (
    ApproxParams,
    approx_minplus,
    approx_power,
    identity,
    minplus_power,
    minplus_product,
    small_entry_minplus,
    weight_matrix,
)

from conftest import oracle_minplus, random_graph, random_matrix

TWO_CYCLE = np.array([[INF, 1], [2, INF]], dtype=np.int64)


def test_identity_is_neutral(nprng, backend):
    B = random_matrix(nprng, 7, 50)
    assert np.array_equal(minplus_product(identity(7), B), B)
    assert np.array_equal(minplus_product(B, identity(7)), B)


def test_two_cycle_square(backend):
    assert minplus_product(TWO_CYCLE, TWO_CYCLE).tolist() == [[3, INF], [INF, 3]]


def test_infinite_row_absorbs(nprng, backend):
    A = random_matrix(nprng, 5, 9)
    A[2] = INF
    assert np.all(minplus_product(A, random_matrix(nprng, 5, 9))[2] == INF)


def test_product_matches_triple_loop(nprng, backend):
    for n in (1, 2, 5, 13):
        for _ in range(10):
            A, B = random_matrix(nprng, n, 100), random_matrix(nprng, n, 100, p_inf=0.5)
            assert np.array_equal(minplus_product(A, B), oracle_minplus(A, B))


def test_product_overflow_is_loud(backend):
    big = np.array([[MAX_FINITE]], dtype=np.int64)
    with pytest.raises(OverflowError):
        minplus_product(big, big)
    with pytest.raises(OverflowError):
        minplus_product(np.array([[MAX_FINITE + 1]]), np.array([[0]]))


def test_product_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        minplus_product(np.zeros((2, 2)), np.zeros((3, 3)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**32))
def test_associativity(n, seed):
    r = np.random.default_rng(seed)
    A, B, C = (random_matrix(r, n, 1000) for _ in range(3))
    left = minplus_product(minplus_product(A, B), C)
    right = minplus_product(A, minplus_product(B, C))
    assert np.array_equal(left, right)


def test_power_examples(backend):
    assert np.array_equal(minplus_power(TWO_CYCLE, 1), TWO_CYCLE)
    assert minplus_power(TWO_CYCLE, 4).tolist() == [[6, INF], [INF, 6]]


def test_power_matches_left_to_right(nprng, backend):
    for t in (2, 3, 5, 6, 11):
        A = random_matrix(nprng, 6, 20)
        expect = A
        for _ in range(t - 1):
            expect = oracle_minplus(expect, A)
        assert np.array_equal(minplus_power(A, t), expect)


def test_power_rejects_bad_exponent():
    for t in (0, -1, 2.5):
        with pytest.raises(ValueError):
            minplus_power(TWO_CYCLE, t)


def walk_dp(g, t):
    """d_t(x, y) by extending walks one edge at a time from every start."""
    n = g.n
    d = [[math.inf] * n for _ in range(n)]
    for x in range(n):
        d[x][x] = 0
    for _ in range(t):
        nxt = [[math.inf] * n for _ in range(n)]
        for x in range(n):
            for u, v, w in g.edges:
                if d[x][u] + w < nxt[x][v]:
                    nxt[x][v] = d[x][u] + w
        d = nxt
    return np.array([[INF if c == math.inf else c for c in row] for row in d], dtype=np.int64)


def test_power_is_walk_dp(rng, backend):
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 12), 9)
        for t in (1, 2, 3, 7, 16, 64):
            assert np.array_equal(minplus_power(weight_matrix(g), t), walk_dp(g, t))


def test_weight_matrix_keeps_cheapest_parallel_edge():
    from mcmean.graph import validate_graph
    g = validate_graph(2, [(0, 1, 5), (0, 1, 2), (1, 1, 4)])
    assert weight_matrix(g).tolist() == [[INF, 2], [INF, 4]]


# small_entry_minplus


@pytest.mark.parametrize("R", [1, 2])
def test_small_entry_exhaustive_n2(R):
    values = list(range(R + 1)) + [INF]
    mats = [np.array(c, dtype=np.int64).reshape(2, 2) for c in itertools.product(values, repeat=4)]
    for A in mats:
        for B in mats:
            assert np.array_equal(small_entry_minplus(A, B, R), oracle_minplus(A, B))


def test_small_entry_random(nprng):
    for R in (8, 64):
        for n in (3, 17, 32):
            A, B = random_matrix(nprng, n, R), random_matrix(nprng, n, R)
            assert np.array_equal(small_entry_minplus(A, B, R), minplus_product(A, B))


def test_small_entry_trivial():
    assert small_entry_minplus([[0]], [[0]], 4).tolist() == [[0]]
    A = np.array([[INF, INF], [1, 0]])
    assert small_entry_minplus(A, A, 4)[0].tolist() == [INF, INF]


def test_small_entry_rejects_out_of_range():
    with pytest.raises(ValueError):
        small_entry_minplus([[5]], [[0]], 4)


# approx_minplus


def test_amp_exact_when_entries_small(nprng):
    A, B = random_matrix(nprng, 10, 32), random_matrix(nprng, 10, 32)
    assert np.array_equal(approx_minplus(A, B, 32, 32), minplus_product(A, B))


def assert_sandwich(C, Cbar, factor):
    fin = C != INF
    assert np.array_equal(fin, Cbar != INF)
    c, cb = C[fin].astype(object), Cbar[fin].astype(object)
    assert all(x <= y for x, y in zip(c, cb))
    assert all(y <= factor * x for x, y in zip(c, cb))


def test_amp_sandwich(nprng, backend):
    for _ in range(20):
        A, B = random_matrix(nprng, 32, 1000), random_matrix(nprng, 32, 1000)
        assert_sandwich(minplus_product(A, B), approx_minplus(A, B, 1000, 64), 1 + Fraction(4, 64))


def test_amp_kernels_bit_identical(nprng):
    for R in (8, 32):
        A, B = random_matrix(nprng, 12, 500), random_matrix(nprng, 12, 500)
        assert np.array_equal(approx_minplus(A, B, 500, R, kernel="naive"),
                              approx_minplus(A, B, 500, R, kernel="encoded"))


@pytest.mark.parametrize("kwargs", [dict(M=10, R=3), dict(M=10, R=1), dict(M=5, R=8)])
def test_amp_rejects_bad_args(kwargs):
    A = np.full((4, 4), 7, dtype=np.int64)
    with pytest.raises(ValueError):
        approx_minplus(A, A, **kwargs)


# approx_power and its parameters


def test_params_worked_example():
    p = ApproxParams.build(1, 8, 2, 1)
    assert p.r == pytest.approx(12 / math.log(2))
    assert p.R == 32


def test_params_log_n_floor():
    assert ApproxParams.build(1, 2, 2**20, 1).R == 32  # r ~ 5.8 -> 8, floor 20 -> 32


@pytest.mark.parametrize("eps", [Fraction(1), Fraction(1, 2), Fraction(1, 10), Fraction(1, 70)])
@pytest.mark.parametrize("t", [2, 8, 1024, 2**18])
def test_params_error_budget(eps, t):
    p = ApproxParams.build(eps, t, 16, 8)
    assert p.R & (p.R - 1) == 0 and p.R >= math.log2(16)
    assert (1 + Fraction(4, p.R)) ** p.steps <= 1 + eps


@pytest.mark.parametrize("eps, t", [(0, 4), (Fraction(3, 2), 4), (1, 6)])
def test_params_reject(eps, t):
    with pytest.raises(ValueError):
        ApproxParams.build(eps, t, 4, 1)


def test_approx_power_two_cycle():
    What = approx_power(TWO_CYCLE, Fraction(1, 2), 4)
    assert 6 <= What[0, 0] <= 9 and 6 <= What[1, 1] <= 9
    assert What[0, 1] == INF


def test_approx_power_per_step_invariant(rng, backend):
    for _ in range(15):
        g = random_graph(rng, rng.randint(2, 10), 8)
        Wbar = weight_matrix(g)
        eps, t = Fraction(1, 2), 64
        p = ApproxParams.build(eps, t, g.n, g.W)
        trace = []
        approx_power(Wbar, eps, t, trace=trace)
        exact = Wbar
        for s, What in enumerate(trace, start=1):
            exact = minplus_product(exact, exact)
            assert_sandwich(exact, What, (1 + Fraction(4, p.R)) ** s)
            live = What[What != INF]
            assert live.max(initial=0) <= 2 * t * g.W
        assert_sandwich(exact, trace[-1], 1 + eps)


def test_delta_oracle_agrees_with_power_rows(rng):
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 12), 9)
        for t in (1, 5, 64):
            assert np.array_equal(delta_oracle(g, t), minplus_power(weight_matrix(g), t).min(axis=1))
