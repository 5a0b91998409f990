"""Pure-Python (numpy) versions of the compiled kernels in ``_ckernels.pyx``."""
import numpy as np

INF = np.iinfo(np.int64).max


def minplus_product(A, B):
    n, inner = A.shape
    C = np.full((n, B.shape[1]), INF, dtype=np.int64)
    for k in range(inner):
        col = A[:, k]
        row = B[k, :]
        live = (col != INF)[:, None] & (row != INF)[None, :]
        if not live.any():
            continue
        # zero the sentinels before adding so nothing wraps
        s = np.where(col == INF, 0, col)[:, None] + np.where(row == INF, 0, row)[None, :]
        np.minimum(C, np.where(live, s, INF), out=C)
    return C


def relax(src, dst, weight, values, size):
    out = np.full(size, INF, dtype=np.int64)
    v = values[dst]
    live = v != INF
    np.minimum.at(out, src[live], weight[live] + v[live])
    return out
