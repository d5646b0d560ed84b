"""Pure NumPy implementations of the hot kernels.

Same contracts as the compiled module `_core`; used as the fallback when
the extension is unavailable or explicitly disabled.  Graphs are given in
CSR form: `indptr` (int32, length n+1) and `indices` (int32, length 2m).
"""

from __future__ import annotations

import numpy as np


def bfs_distances(indptr: np.ndarray, indices: np.ndarray, source: int, n: int) -> np.ndarray:
    """Hop distances from `source`; -1 marks unreachable vertices."""
    dist = np.full(n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int32)
    level = 0
    while frontier.size:
        starts = indptr[frontier]
        lens = indptr[frontier + 1] - starts
        total = int(lens.sum())
        if total == 0:
            break
        # gather the concatenation of indices[starts[k]:starts[k]+lens[k]]
        offsets = np.repeat(starts - (np.cumsum(lens) - lens), lens)
        nbrs = indices[offsets + np.arange(total, dtype=np.int64)]
        nbrs = nbrs[dist[nbrs] < 0]
        if nbrs.size == 0:
            break
        frontier = np.unique(nbrs)
        level += 1
        dist[frontier] = level
    return dist


def csr_matvec(indptr: np.ndarray, indices: np.ndarray, x: np.ndarray) -> np.ndarray:
    """y = A x for the 0/1 adjacency matrix stored as CSR."""
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    return np.bincount(rows, weights=x[indices], minlength=n)


def power_iteration(
    indptr: np.ndarray,
    indices: np.ndarray,
    x0: np.ndarray,
    rq_tol: float,
    res_tol: float,
    max_matvecs: int,
) -> tuple[float, np.ndarray, int, bool]:
    """Power iteration on the adjacency matrix.

    Stops when both the Rayleigh quotient stagnates (|rho_k - rho_{k-1}|
    <= rq_tol * max(1, |rho_k|)) and the residual ||A x - rho x|| <=
    res_tol * max(1, |rho_k|).  Returns (rho, x, matvecs, converged) with
    x the unit vector at which rho and the residual were measured.
    """
    n = indptr.shape[0] - 1
    x = np.asarray(x0, dtype=np.float64).copy()
    nrm = float(np.linalg.norm(x))
    if nrm == 0.0:
        raise ValueError("start vector is zero")
    x /= nrm
    rows = np.repeat(np.arange(n), np.diff(indptr))
    rho_prev = None
    rho = 0.0
    matvecs = 0
    while matvecs < max_matvecs:
        y = np.bincount(rows, weights=x[indices], minlength=n)
        matvecs += 1
        rho = float(x @ y)
        scale = max(1.0, abs(rho))
        if (
            rho_prev is not None
            and abs(rho - rho_prev) <= rq_tol * scale
            and float(np.linalg.norm(y - rho * x)) <= res_tol * scale
        ):
            return rho, x, matvecs, True
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            return 0.0, x, matvecs, False
        x = y / ny
        rho_prev = rho
    return rho, x, matvecs, False
