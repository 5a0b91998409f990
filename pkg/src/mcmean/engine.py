"""Minimum cycle mean engines: exact (Karp, min-plus powering) and approximate."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from mcmean import kernels
from mcmean.graph import Graph, brute_force_mcm, strongly_connected_components, zero_mean_vertices
from mcmean.kernels import INF, MAX_FINITE
from mcmean.minplus import ApproxParams, as_fraction, approx_power, minplus_power, weight_matrix

MODES = ("karp", "exact-power", "approx", "brute")


class GuardError(ValueError):
    """Input exceeds the configured size guard of an exponential/pseudo-polynomial engine."""


@dataclass(frozen=True)
class Guards:
    brute_max_n: int = 12
    power_max_n: int = 8
    power_max_w: int = 8


@dataclass(frozen=True)
class McmResult:
    """Per-vertex cycle means and their minimum.

    In exact modes every value is the true mu(x). In ``approx`` mode each value
    is ``delta_hat_t(x) / ((1 - eps') t)`` as an exact fraction, except that
    vertices that reach a zero-weight cycle carry exactly 0.
    """

    mode: str
    per_vertex: Tuple[Fraction, ...]
    global_mean: Fraction
    params: Dict[str, object] = field(default_factory=dict)


def _result(mode, values, **params):
    values = tuple(values)
    return McmResult(mode, values, min(values), params)


def delta_oracle(g: Graph, t: int) -> np.ndarray:
    """delta_t(x): cheapest walk with exactly t edges from each x, by t relaxation rounds."""
    if int(t) != t or t < 1:
        raise ValueError(f"t must be an integer >= 1, got {t!r}")
    if int(t) * g.W > MAX_FINITE:
        raise OverflowError(f"t * W = {int(t) * g.W} exceeds the finite range")
    values = np.zeros(g.n, dtype=np.int64)
    for _ in range(int(t)):
        values = kernels.relax(g.src, g.dst, g.weight, values, g.n)
    return values


def delta_from_power(Mt) -> np.ndarray:
    """Row minima of a power (or over-approximated power) of the weight matrix."""
    Mt = np.asarray(Mt, dtype=np.int64)
    rows = Mt.min(axis=1)
    assert not np.any(rows == INF), "row with no walk; the graph has a vertex without successors"
    return rows


def _component_mean(g, comp, inside):
    """Karp's recurrence on one strongly connected component; None if it is acyclic."""
    N = len(comp)
    local = {v: i for i, v in enumerate(comp)}
    es = [(local[u], local[v], w) for u, v, w in inside]
    if not es:
        return None
    # relax reads values at dst and writes at src, so feed edges reversed
    # to get D_k(v) = min over (u, v) of D_{k-1}(u) + w
    rsrc = np.array([v for _, v, _ in es], dtype=np.int64)
    rdst = np.array([u for u, _, _ in es], dtype=np.int64)
    wt = np.array([w for _, _, w in es], dtype=np.int64)
    D = np.full((N + 1, N), INF, dtype=np.int64)
    D[0, 0] = 0
    for k in range(1, N + 1):
        D[k] = kernels.relax(rsrc, rdst, wt, D[k - 1], N)
    best = None
    for v in range(N):
        if D[N, v] == INF:
            continue
        worst = max(Fraction(int(D[N, v] - D[k, v]), N - k)
                    for k in range(N) if D[k, v] != INF)
        if best is None or worst < best:
            best = worst
    return best


def karp_mcm(g: Graph) -> McmResult:
    """Exact per-vertex minimum cycle mean via Karp's O(nm) recurrence per component.

    Each component's own mean is pushed to every vertex that can reach it by
    sweeping the condensation in reverse topological order.
    """
    cond = strongly_connected_components(g)
    inside = [[] for _ in cond.components]
    for u, v, w in g.edges:
        cu = cond.component_of[u]
        if cu == cond.component_of[v]:
            inside[cu].append((u, v, w))
    own = [_component_mean(g, comp, inside[ci]) for ci, comp in enumerate(cond.components)]
    succ = [[] for _ in cond.components]
    for a, b in cond.dag_edges:
        succ[a].append(b)
    reach = [None] * len(cond.components)
    for ci in reversed(cond.topo_order):
        cands = [own[ci]] + [reach[d] for d in succ[ci]]
        cands = [c for c in cands if c is not None]
        reach[ci] = min(cands) if cands else None
    per_vertex = [reach[cond.component_of[x]] for x in range(g.n)]
    assert all(v is not None for v in per_vertex)
    return _result("karp", per_vertex)


def rational_in_interval(lo, hi, n: int) -> Fraction:
    """The unique p/q with 1 <= q <= n strictly inside (lo, hi).

    Enumerates denominators directly. Raises ``ValueError`` if there is no
    such fraction or more than one.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    found = set()
    for q in range(1, int(n) + 1):
        p = math.floor(lo * q) + 1
        while Fraction(p, q) < hi:
            found.add(Fraction(p, q))
            p += 1
    if len(found) != 1:
        raise ValueError(f"expected one fraction with denominator <= {n} in ({lo}, {hi}), "
                         f"found {len(found)}")
    return found.pop()


def exact_mcm_via_power(g: Graph, guards: Guards = Guards()) -> McmResult:
    """Exact mu(x) from delta_t(x) with t = 4 n^3 W, recovered as a fraction of denominator <= n.

    ``W = 0`` is treated as ``W = 1`` so that t stays positive (all means are
    then 0). For n = 1 the radius 1/(2n(n-1)) is undefined; the only walks
    repeat self-loops, so delta_t / t is exact and radius 1/2 is used.
    """
    if g.n > guards.power_max_n or g.W > guards.power_max_w:
        raise GuardError(f"exact-power is limited to n <= {guards.power_max_n}, "
                         f"W <= {guards.power_max_w}; got n = {g.n}, W = {g.W}")
    n = g.n
    t = 4 * n ** 3 * max(g.W, 1)
    delta = delta_from_power(minplus_power(weight_matrix(g), t))
    radius = Fraction(1, 2 * n * (n - 1)) if n > 1 else Fraction(1, 2)
    values = []
    for x in range(n):
        centre = Fraction(int(delta[x]), t)
        try:
            values.append(rational_in_interval(centre - radius, centre + radius, n))
        except ValueError as exc:
            raise RuntimeError(f"internal error recovering mu({x + 1}): {exc}") from exc
    return _result("exact-power", values, t=t)


def brute_mcm(g: Graph, guards: Guards = Guards()) -> McmResult:
    if g.n > guards.brute_max_n:
        raise GuardError(f"brute force is limited to n <= {guards.brute_max_n}, got n = {g.n}")
    res = brute_force_mcm(g, max_n=guards.brute_max_n)
    return _result("brute", res.per_vertex)


def approx_horizon(n: int, W: int, epsilon) -> int:
    """Smallest power of two t with t >= n^2 W / (epsilon / 7)."""
    bound = Fraction(n * n * W) / (as_fraction(epsilon) / 7)
    t = 1
    while t < bound:
        t *= 2
    return t


def approx_mcm(g: Graph, epsilon, kernel: str = "naive") -> McmResult:
    """(1 + epsilon)-approximation of mu(x) for every vertex, 0 < epsilon <= 1.

    Vertices that reach a zero-weight cycle are answered exactly with 0. The
    rest get ``delta_hat_t(x) / ((1 - eps') t)`` where ``eps' = epsilon / 7``,
    ``t`` is the smallest power of two >= n^2 W / eps' and ``delta_hat_t`` are
    the row minima of a (1 + eps')-approximate ``t``-th min-plus power.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {eps}")
    zero = zero_mean_vertices(g)
    if g.W == 0 or len(zero) == g.n:
        return _result("approx", [Fraction(0)] * g.n, epsilon=eps)
    eps_p = eps / 7
    assert eps_p <= Fraction(1, 2)
    t = approx_horizon(g.n, g.W, eps)
    params = ApproxParams.build(eps_p, t, g.n, g.W)
    if 4 * params.M_cap > MAX_FINITE:
        raise OverflowError(f"epsilon = {eps} needs t = {t} and entries up to 2tW = "
                            f"{params.M_cap}, beyond the supported range {MAX_FINITE}")
    delta_hat = delta_from_power(approx_power(weight_matrix(g), eps_p, t, kernel=kernel))
    scale = (1 - eps_p) * t
    values = [Fraction(0) if x in zero else Fraction(int(delta_hat[x])) / scale
              for x in range(g.n)]
    return _result("approx", values, epsilon=eps, t=t, R=params.R)


def solve(g: Graph, mode: str = "karp", epsilon=Fraction(1, 10),
          guards: Guards = Guards()) -> McmResult:
    if mode == "karp":
        return karp_mcm(g)
    if mode == "exact-power":
        return exact_mcm_via_power(g, guards)
    if mode == "approx":
        return approx_mcm(g, epsilon)
    if mode == "brute":
        return brute_mcm(g, guards)
    raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")
