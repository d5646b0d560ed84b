"""Eigen-analysis: dense oracle, power iteration, and principal ratios.

Two independent routes to the principal eigenpair are kept deliberately
separate so they can certify each other: `method="dense"` goes through
the symmetric dense solver, `method="power"` through the iterative
kernel.  Dense principal vectors get a power-iteration touch-up when
needed: solver noise (~1e-16 * ||A||) can swamp exponentially small
Perron coordinates, and repeated multiplication restores them because
every step shrinks the non-principal contamination by |lambda_k|/lambda_1
while staying inside the positive cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from perronlab import kernels
from perronlab.errors import (
    Disconnected,
    InvalidParameters,
    InvalidSize,
    NoConvergence,
    NonPositiveCoordinate,
    SizeLimit,
)
from perronlab.graph import Graph, is_connected

DENSE_LIMIT = 4096
RQ_TOL = 1e-13
RESIDUAL_TOL = 1e-10
MAX_MATVECS = 10_000_000
_REFINE_CAP = 100_000


@dataclass(frozen=True, eq=False)
class Eigenpair:
    value: float
    vector: np.ndarray
    residual: float
    matvecs: int = 0
    method: str = "dense"


@dataclass(frozen=True)
class SpectrumSummary:
    lambda1: float
    lambda2: float
    additive_gap: float
    multiplicative_gap: float
    regular_degree: int | None


@dataclass(frozen=True, eq=False)
class RatioReport:
    gamma: float
    log_gamma: float
    q_max: float
    q_min: float
    v_max: int
    v_min: int
    lambda1: float
    residual: float


def dense_spectrum(g: Graph, *, dense_limit: int = DENSE_LIMIT) -> tuple[np.ndarray, np.ndarray]:
    """Full adjacency spectrum, eigenvalues descending with matching
    eigenvector columns; refuses graphs larger than the dense cap."""
    if g.n > dense_limit:
        raise SizeLimit(f"n={g.n} exceeds dense solver cap {dense_limit}")
    w, v = np.linalg.eigh(g.adjacency_matrix())
    return w[::-1].copy(), v[:, ::-1].copy()


def _rayleigh(g: Graph, x: np.ndarray) -> float:
    indptr, indices = g.csr
    return float(x @ kernels.csr_matvec(indptr, indices, x))


def _residual(g: Graph, lam: float, x: np.ndarray) -> float:
    indptr, indices = g.csr
    return float(np.linalg.norm(kernels.csr_matvec(indptr, indices, x) - lam * x))


def _refine_positive(g: Graph, v: np.ndarray, values: np.ndarray) -> np.ndarray:
    lam1 = float(values[0])
    sub = max(abs(float(values[1])), abs(float(values[-1])))
    x = v / np.linalg.norm(v)
    if sub >= lam1 * (1.0 - 1e-12):
        # no modulus isolation (bipartite-like): multiplication cannot
        # damp the contamination, so the raw vector must already do
        if float(x.min()) > 0.0:
            return x
        raise NoConvergence("principal direction is not modulus-isolated", 0)
    indptr, indices = g.csr
    for _ in range(_REFINE_CAP):
        y = kernels.csr_matvec(indptr, indices, x)
        y /= np.linalg.norm(y)
        rel = float(np.max(np.abs(y - x) / np.maximum(np.abs(y), 1e-300)))
        x = y
        if rel <= 1e-13 and float(x.min()) > 0.0:
            return x
    raise NoConvergence("eigenvector refinement stalled", _REFINE_CAP)


def principal_eigenpair(
    g: Graph,
    method: str = "dense",
    *,
    seed: int = 0,
    dense_limit: int = DENSE_LIMIT,
    max_matvecs: int = MAX_MATVECS,
) -> Eigenpair:
    """Largest adjacency eigenvalue with its strictly positive unit
    eigenvector; the graph must be connected."""
    if not is_connected(g):
        raise Disconnected("principal eigenpair needs a connected graph")
    if g.n == 1:
        return Eigenpair(0.0, np.ones(1), 0.0, 0, method)
    if method == "dense":
        w, basis = dense_spectrum(g, dense_limit=dense_limit)
        v = basis[:, 0]
        if float(v.sum()) < 0.0:
            v = -v
        x = _refine_positive(g, v, w)
        lam = _rayleigh(g, x)
        return Eigenpair(lam, x, _residual(g, lam, x), 0, "dense")
    if method == "power":
        indptr, indices = g.csr
        x0 = np.full(g.n, 1.0 / math.sqrt(g.n))
        lam, x, matvecs, ok = kernels.power_iteration(
            indptr, indices, x0, RQ_TOL, RESIDUAL_TOL, max_matvecs
        )
        if not ok:
            raise NoConvergence(
                f"power iteration hit the {max_matvecs} matvec cap", matvecs
            )
        if float(x.min()) <= 0.0:
            raise NonPositiveCoordinate("power iterate left the positive cone")
        return Eigenpair(float(lam), np.asarray(x), _residual(g, float(lam), np.asarray(x)), matvecs, "power")
    raise InvalidParameters(f"unknown method {method!r}")


def _power_callable(matvec, x0, rq_tol, res_tol, max_matvecs):
    x = np.asarray(x0, dtype=np.float64)
    x = x / np.linalg.norm(x)
    rho_prev = None
    rho = 0.0
    mv = 0
    while mv < max_matvecs:
        y = matvec(x)
        mv += 1
        rho = float(x @ y)
        scale = max(1.0, abs(rho))
        if (
            rho_prev is not None
            and abs(rho - rho_prev) <= rq_tol * scale
            and float(np.linalg.norm(y - rho * x)) <= res_tol * scale
        ):
            return rho, x, mv, True
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            # exact null image: x is an eigenvector for eigenvalue 0
            return 0.0, x, mv, True
        x = y / ny
        rho_prev = rho
    return rho, x, mv, False


def second_eigenvalue(
    g: Graph,
    method: str = "dense",
    *,
    seed: int = 0,
    dense_limit: int = DENSE_LIMIT,
    max_matvecs: int = MAX_MATVECS,
) -> float:
    """Second-largest adjacency eigenvalue (may be negative).

    The power route deflates the principal direction and shifts by
    +lambda1 so the target is also largest in modulus, then iterates
    with the standard tolerances.
    """
    if g.n < 2:
        raise InvalidSize("second eigenvalue needs n >= 2")
    if method == "dense":
        w, _ = dense_spectrum(g, dense_limit=dense_limit)
        return float(w[1])
    if method == "power":
        pair = principal_eigenpair(g, "power", seed=seed, max_matvecs=max_matvecs)
        q = pair.vector
        lam1 = pair.value
        indptr, indices = g.csr

        def matvec(x: np.ndarray) -> np.ndarray:
            return kernels.csr_matvec(indptr, indices, x) + lam1 * x - (2.0 * lam1) * (q @ x) * q

        rng = np.random.default_rng(seed)
        x0 = rng.standard_normal(g.n)
        x0 -= (q @ x0) * q
        while np.linalg.norm(x0) < 1e-8:
            x0 = rng.standard_normal(g.n)
            x0 -= (q @ x0) * q
        rho, _, mv, ok = _power_callable(matvec, x0, RQ_TOL, RESIDUAL_TOL, max_matvecs)
        if not ok:
            raise NoConvergence(f"deflated power iteration hit the cap", mv)
        return float(rho - lam1)
    raise InvalidParameters(f"unknown method {method!r}")


def laplacian_matrix(g: Graph) -> np.ndarray:
    a = g.adjacency_matrix()
    return np.diag(a.sum(axis=1)) - a


def algebraic_connectivity(g: Graph, *, dense_limit: int = DENSE_LIMIT) -> float:
    """Second-smallest Laplacian eigenvalue (0 when disconnected)."""
    if g.n > dense_limit:
        raise SizeLimit(f"n={g.n} exceeds dense solver cap {dense_limit}")
    if g.n < 2:
        raise InvalidSize("algebraic connectivity needs n >= 2")
    w = np.linalg.eigvalsh(laplacian_matrix(g))
    return float(w[1])


def spectrum_summary(g: Graph, *, dense_limit: int = DENSE_LIMIT) -> SpectrumSummary:
    """lambda1, lambda2, and the additive/multiplicative gaps.

    On regular graphs the additive gap is cross-checked against the
    algebraic connectivity (they must agree to 1e-8)."""
    if g.n < 2:
        raise InvalidSize("spectrum summary needs n >= 2")
    w, _ = dense_spectrum(g, dense_limit=dense_limit)
    lam1, lam2 = float(w[0]), float(w[1])
    gap = lam1 - lam2
    degs = g.degrees()
    regular = int(degs.min()) == int(degs.max())
    if regular:
        ac = algebraic_connectivity(g, dense_limit=dense_limit)
        assert abs(gap - ac) <= 1e-8 * max(1.0, abs(lam1)), (
            f"regular-graph gap {gap!r} disagrees with algebraic connectivity {ac!r}"
        )
    return SpectrumSummary(
        lambda1=lam1,
        lambda2=lam2,
        additive_gap=gap,
        multiplicative_gap=gap / lam1,
        regular_degree=int(degs[0]) if regular else None,
    )


def ratio(
    g: Graph,
    method: str = "dense",
    *,
    seed: int = 0,
    dense_limit: int = DENSE_LIMIT,
    max_matvecs: int = MAX_MATVECS,
) -> RatioReport:
    """Principal ratio max/min of the positive principal eigenvector,
    with argmax/argmin ids (ties break to the lowest id)."""
    pair = principal_eigenpair(
        g, method, seed=seed, dense_limit=dense_limit, max_matvecs=max_matvecs
    )
    q = pair.vector
    if float(q.min()) <= 0.0:
        raise NonPositiveCoordinate("principal vector has a non-positive coordinate")
    v_max = int(np.argmax(q))
    v_min = int(np.argmin(q))
    q_max = float(q[v_max])
    q_min = float(q[v_min])
    return RatioReport(
        gamma=q_max / q_min,
        log_gamma=math.log(q_max) - math.log(q_min),
        q_max=q_max,
        q_min=q_min,
        v_max=v_max,
        v_min=v_min,
        lambda1=pair.value,
        residual=pair.residual,
    )


def predicted_lex_gap(r: int, s: int) -> float:
    """Closed-form additive gap s*(2 - 2cos(2*pi/r)) for the composition
    of a cycle of length r over s independent vertices.

    Matches the measured gap for r >= 4; at r = 3 the product's zero
    eigenvalues overtake the scaled cycle value, so the formula is an
    upper estimate there.
    """
    if r < 3 or s < 1:
        raise InvalidParameters(f"need r >= 3 and s >= 1, got r={r}, s={s}")
    return s * (2.0 - 2.0 * math.cos(2.0 * math.pi / r))
