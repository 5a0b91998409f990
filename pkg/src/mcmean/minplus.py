"""Min-plus matrix algebra over nonnegative integers extended with infinity.

Matrices are square ``int64`` numpy arrays. Infinity is the dedicated
sentinel :data:`INF`; it is never produced by arithmetic on finite values and
is checked explicitly wherever entries are scaled. Finite entries must stay
within ``[0, MAX_FINITE]`` and every operation raises ``OverflowError``
rather than wrapping.
"""
import bisect
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from mcmean import kernels
from mcmean.kernels import INF, MAX_FINITE

KERNELS = ("naive", "encoded")


def as_fraction(x) -> Fraction:
    """Exact rational; floats are read by their shortest decimal repr (0.1 -> 1/10)."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def is_power_of_two(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def exact_log2(x: int) -> int:
    if not is_power_of_two(x):
        raise ValueError(f"{x} is not a power of two")
    return x.bit_length() - 1


def ceil_log2(x: int) -> int:
    """Smallest s >= 0 with 2**s >= x (x a positive integer)."""
    return max(0, (int(x) - 1).bit_length())


def weight_matrix(g) -> np.ndarray:
    """Matrix with the cheapest edge weight for each (u, v) and INF elsewhere."""
    Wbar = np.full((g.n, g.n), INF, dtype=np.int64)
    np.minimum.at(Wbar, (g.src, g.dst), g.weight)
    return Wbar


def identity(n: int) -> np.ndarray:
    I = np.full((n, n), INF, dtype=np.int64)
    np.fill_diagonal(I, 0)
    return I


def _square_pair(A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValueError(f"need equal square matrices, got {A.shape} and {B.shape}")
    return A, B


def minplus_product(A, B) -> np.ndarray:
    """Exact min-plus product ``C[i, j] = min_k A[i, k] + B[k, j]``."""
    A, B = _square_pair(A, B)
    return kernels.minplus(A, B)


def minplus_power(A, t: int) -> np.ndarray:
    """``A**t`` under the min-plus product using O(log t) products.

    Squares repeatedly to get ``A**(2**i)`` and multiplies together the
    squares selected by the binary digits of ``t``.
    """
    if int(t) != t or t < 1:
        raise ValueError(f"exponent must be an integer >= 1, got {t!r}")
    t = int(t)
    A, _ = _square_pair(A, A)
    result = None
    square = A
    while True:
        if t & 1:
            result = square.copy() if result is None else minplus_product(result, square)
        t >>= 1
        if not t:
            return result
        square = minplus_product(square, square)


@functools.lru_cache(maxsize=64)
def _encoding(x, R):
    """Powers x**0..x**(2R) and the lookup table entry -> x**(R - entry), infinity -> 0."""
    powers = [x ** e for e in range(2 * R + 1)]
    # slot R + 1 holds the code for infinity
    table = np.array(powers[:R + 1][::-1] + [0], dtype=object)
    return powers, table


def small_entry_minplus(A, B, R: int) -> np.ndarray:
    """Exact min-plus product of matrices with finite entries in ``[0, R]``.

    Encodes entry ``a`` as ``x**(R - a)`` with ``x = n + 1`` and infinity as 0,
    multiplies the encodings with an ordinary integer matrix product, and
    reads each minimum back off the leading power: every coefficient counts
    at most ``n < x`` terms, so ``floor(log_x P) = 2R - min``.
    """
    A, B = _square_pair(A, B)
    R = int(R)
    if R < 0:
        raise ValueError(f"R must be nonnegative, got {R}")
    for M, name in ((A, "left"), (B, "right")):
        finite = M[M != INF]
        if finite.size and (finite.min() < 0 or finite.max() > R):
            raise ValueError(f"{name} operand has finite entries outside [0, {R}]")
    n = A.shape[0]
    powers, table = _encoding(n + 1, R)

    def encode(M):
        return table[np.where(M == INF, R + 1, M)]

    P = encode(A).dot(encode(B))
    C = np.full((n, n), INF, dtype=np.int64)
    for (i, j), p in np.ndenumerate(P):
        if p:
            C[i, j] = 2 * R - (bisect.bisect_right(powers, p) - 1)
    return C


def _scaled_exact(A, B, R, kernel):
    if kernel == "naive":
        return minplus_product(A, B)
    if kernel == "encoded":
        return small_entry_minplus(A, B, R)
    raise ValueError(f"unknown kernel {kernel!r}; choose from {KERNELS}")


def _scale_down(A, T, R):
    out = np.full(A.shape, INF, dtype=np.int64)
    keep = (A != INF) & (A <= T)
    # ceil(a * R / T) with T a power-of-two multiple of R
    f = T // R
    out[keep] = -(-A[keep] // f)
    return out


def approx_minplus(A, B, M: int, R: int, kernel: str = "naive") -> np.ndarray:
    """Approximate min-plus product with ``C <= Cbar <= (1 + 4/R) C`` entrywise.

    For thresholds ``T = 2**s`` from ``R`` up to the first power of two at
    least ``2M``, entries above ``T`` are dropped, the rest are scaled to
    ``ceil(a R / T)``, an exact small-entry product is taken and rescaled by
    ``T / R``; the answer is the entrywise minimum over all thresholds.

    ``kernel`` picks the exact product used at each level: ``"naive"`` (the
    backend min-plus loop) or ``"encoded"`` (:func:`small_entry_minplus`).
    """
    A, B = _square_pair(A, B)
    M, R = int(M), int(R)
    n = A.shape[0]
    if not is_power_of_two(R):
        raise ValueError(f"R must be a power of two, got {R}")
    if R < math.log2(n):
        raise ValueError(f"R = {R} is below log2(n) = {math.log2(n):.3f}")
    if M < 0:
        raise ValueError(f"M must be nonnegative, got {M}")
    for X, name in ((A, "left"), (B, "right")):
        finite = X[X != INF]
        if finite.size and (finite.min() < 0 or finite.max() > M):
            raise ValueError(f"{name} operand has finite entries outside [0, {M}]")

    lo = exact_log2(R)
    hi = max(lo, ceil_log2(2 * M))
    if (1 << hi) * 2 > MAX_FINITE:
        raise OverflowError(f"M = {M} too large for the finite range")
    Cbar = np.full((n, n), INF, dtype=np.int64)
    for s in range(lo, hi + 1):
        T = 1 << s
        C_s = _scaled_exact(_scale_down(A, T, R), _scale_down(B, T, R), R, kernel)
        finite = C_s != INF
        cand = np.full((n, n), INF, dtype=np.int64)
        cand[finite] = C_s[finite] * (T // R)
        np.minimum(Cbar, cand, out=Cbar)
    return Cbar


@dataclass(frozen=True)
class ApproxParams:
    """Scalar parameters of the approximate powering loop.

    ``r = 4 log2(t) / ln(1 + eps)`` and ``R`` is the next power of two, raised
    to at least the smallest power of two >= log2(n) and, if float rounding
    ever left it short, doubled until ``(1 + 4/R)**log2(t) <= 1 + eps`` holds
    in exact rational arithmetic. ``M_cap = 2 t W`` bounds every operand.
    """

    epsilon: Fraction
    t: int
    n: int
    W: int
    r: float
    R: int
    M_cap: int

    @property
    def steps(self) -> int:
        return exact_log2(self.t)

    @classmethod
    def build(cls, epsilon, t: int, n: int, W: int) -> "ApproxParams":
        eps = as_fraction(epsilon)
        if not 0 < eps <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {eps}")
        if not is_power_of_two(int(t)) or int(t) != t:
            raise ValueError(f"t must be a power of two, got {t!r}")
        t = int(t)
        steps = exact_log2(t)
        r = 4 * steps / math.log1p(float(eps))
        R = 1 << ceil_log2(math.ceil(r)) if r > 0 else 1
        R = max(R, 1 << ceil_log2(math.ceil(math.log2(n))) if n > 1 else 1)
        while (1 + Fraction(4, R)) ** steps > 1 + eps:
            R *= 2
        return cls(epsilon=eps, t=t, n=n, W=W, r=r, R=R, M_cap=2 * t * W)


def approx_power(Wbar, epsilon, t: int, kernel: str = "naive", trace=None) -> np.ndarray:
    """Entrywise (1 + epsilon)-over-approximation of ``Wbar**t`` for t a power of two.

    Runs log2(t) approximate squarings with the parameters of
    :class:`ApproxParams`. If ``trace`` is a list, each intermediate matrix
    is appended to it.
    """
    Wbar = np.asarray(Wbar, dtype=np.int64)
    finite = Wbar[Wbar != INF]
    W = int(finite.max()) if finite.size else 0
    p = ApproxParams.build(epsilon, t, Wbar.shape[0], W)
    if p.M_cap > MAX_FINITE // 2:
        raise OverflowError(f"2tW = {p.M_cap} exceeds the supported entry range")
    What = Wbar.copy()
    for _ in range(p.steps):
        What = approx_minplus(What, What, p.M_cap, p.R, kernel=kernel)
        live = What[What != INF]
        assert not live.size or live.max() <= p.M_cap, "entry above 2tW"
        if trace is not None:
            trace.append(What)
    return What
