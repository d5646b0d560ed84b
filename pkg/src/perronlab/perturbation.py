"""Rank-two edge-edit perturbation of the uniform eigenvector.

For a connected d-regular graph the principal eigenvector is uniform.
Adding or deleting one edge perturbs the adjacency matrix by a rank-two
E with two +-1 entries.  In the eigenbasis split [x | Y] (x uniform, Y
the remaining eigenvectors) the perturbed principal direction is
x + Y p, where p solves the nonlinear correction equation

    M p = e21 - p (e21^T p),   M = (d + e11) I - diag(lambda_2..n) - E22.

Under the gap condition delta > (2/c) sqrt(n) + 2 the fixed-point
iteration contracts, ||p|| < c/sqrt(n), all coordinates of the assembled
vector stay positive, and the principal ratio of the edited graph is
certified below (1+c)/(1-c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from perronlab.errors import (
    Disconnected,
    GapTooSmall,
    InvalidParameters,
    InvalidSize,
    NoConvergence,
    NonPositiveCoordinate,
    NotRegular,
)
from perronlab.graph import Edge, Graph, add_edge, as_edge, is_connected, remove_edge
from perronlab.spectral import Eigenpair, dense_spectrum, ratio

SOLVE_TOL = 1e-13
SOLVE_CAP = 100_000


@dataclass(frozen=True, eq=False)
class PerturbationSystem:
    """Blocked edit system in the eigenbasis of the unedited graph.

    x is the exact uniform unit vector; Y spans its complement with
    columns ordered by descending eigenvalue and sign-normalized.  E is
    never materialized: e11, e21, E22 come from the two affected rows.
    """

    graph: Graph
    edited: Graph
    edge: Edge | None
    sign: int
    n: int
    d: int
    delta: float
    x: np.ndarray
    Y: np.ndarray
    L: np.ndarray  # diagonal of the complement eigenvalues, descending
    e11: float
    e21: np.ndarray
    E22: np.ndarray
    M: np.ndarray
    theta: float
    eta: float
    min_eig_M: float


@dataclass(frozen=True, eq=False)
class SolveResult:
    p: np.ndarray
    iterations: int
    rho: float
    p_bound: float
    norm_history: tuple[float, ...]


@dataclass(frozen=True)
class PerturbationReport:
    n: int
    c: float
    sign: int
    edge: tuple[int, int] | None
    delta: float
    gap_condition_holds: bool
    eta: float
    theta: float
    p_norm: float
    p_bound: float
    rho: float
    iterations: int
    xtilde_residual: float
    lambda_tilde: float
    gamma_observed: float
    gamma_certificate: float
    holds: bool


def build_system(g: Graph, e, sign: int) -> PerturbationSystem:
    """Assemble the blocked system for G + e (sign=+1), G - e (sign=-1),
    or the zero perturbation (sign=0, a test hook)."""
    if sign not in (-1, 0, 1):
        raise InvalidParameters(f"sign must be -1, 0, or +1, got {sign!r}")
    if g.n < 2:
        raise InvalidSize("perturbation needs n >= 2")
    if not is_connected(g):
        raise Disconnected("perturbation base graph must be connected")
    degs = g.degrees()
    if int(degs.min()) != int(degs.max()):
        raise NotRegular("perturbation base graph must be regular")
    d = int(degs[0])

    edge = as_edge(e) if e is not None else None
    if sign == 1:
        edited = add_edge(g, edge)
    elif sign == -1:
        edited = remove_edge(g, edge)
    else:
        edited = g

    n = g.n
    w, basis = dense_spectrum(g)
    assert abs(float(w[0]) - d) <= 1e-9 * max(1.0, d), "regular graph must have lambda1 = d"
    x = np.full(n, 1.0 / math.sqrt(n))
    Y = basis[:, 1:].copy()
    for k in range(Y.shape[1]):
        col = Y[:, k]
        lead = int(np.argmax(np.abs(col) > 1e-9))
        if col[lead] < 0.0:
            Y[:, k] = -col
    L = w[1:].copy()
    delta = float(w[0] - w[1])

    if sign == 0:
        e11 = 0.0
        e21 = np.zeros(n - 1)
        E22 = np.zeros((n - 1, n - 1))
    else:
        e11 = sign * 2.0 / n
        yu = Y[edge.u, :]
        yv = Y[edge.v, :]
        e21 = sign * (yu + yv) / math.sqrt(n)
        E22 = sign * (np.outer(yu, yv) + np.outer(yv, yu))

    M = (d + e11) * np.eye(n - 1) - np.diag(L) - E22
    eigs_m = np.linalg.eigvalsh(M)
    min_eig = float(eigs_m[0])
    theta = float(np.min(np.abs(eigs_m)))
    # the coarse floor that the exact theta must respect
    assert min_eig >= delta - 2.0 - 1e-9 * max(1.0, delta), (
        f"min eig(M) = {min_eig} under the delta - 2 = {delta - 2.0} floor"
    )
    return PerturbationSystem(
        graph=g,
        edited=edited,
        edge=edge,
        sign=sign,
        n=n,
        d=d,
        delta=delta,
        x=x,
        Y=Y,
        L=L,
        e11=e11,
        e21=e21,
        E22=E22,
        M=M,
        theta=theta,
        eta=float(np.linalg.norm(e21)),
        min_eig_M=min_eig,
    )


def gap_threshold(n: int, c: float) -> float:
    return (2.0 / c) * math.sqrt(n) + 2.0


def solve_p(system: PerturbationSystem, c: float) -> SolveResult:
    """Fixed-point solve of M p = e21 - p (e21^T p).

    Requires the gap condition delta > (2/c) sqrt(n) + 2; the factorized
    M is reused across iterations and the inverse is never formed.
    """
    if not 0.0 < c < 1.0:
        raise InvalidParameters(f"c must lie in (0,1), got {c}")
    delta, n = system.delta, system.n
    if not delta > gap_threshold(n, c):
        c_min = math.inf if delta <= 2.0 else 2.0 * math.sqrt(n) / (delta - 2.0)
        raise GapTooSmall(delta, n, c_min)
    factor = cho_factor(system.M)
    e21 = system.e21
    p = np.zeros(system.n - 1)
    history: list[float] = []
    iterations = 0
    while iterations < SOLVE_CAP:
        p_next = cho_solve(factor, e21 - p * float(e21 @ p))
        iterations += 1
        step = float(np.linalg.norm(p_next - p))
        p = p_next
        history.append(float(np.linalg.norm(p)))
        if step <= SOLVE_TOL:
            break
    else:
        raise NoConvergence("correction fixed point failed to settle", SOLVE_CAP)
    theta, eta = system.theta, system.eta
    disc = theta * theta - 4.0 * eta * eta
    p_bound = 2.0 * eta / (theta + math.sqrt(disc)) if disc >= 0.0 else math.inf
    return SolveResult(
        p=p,
        iterations=iterations,
        rho=4.0 * eta * eta / (theta * theta),
        p_bound=p_bound,
        norm_history=tuple(history),
    )


def assemble_xtilde(system: PerturbationSystem, p: np.ndarray) -> Eigenpair:
    """x~ = (x + Y p) / sqrt(1 + ||p||^2): the principal eigenpair of the
    edited adjacency matrix, with positivity, residual, and maximality
    checked against the dense oracle."""
    xt = (system.x + system.Y @ p) / math.sqrt(1.0 + float(p @ p))
    if float(xt.min()) <= 0.0:
        raise NonPositiveCoordinate(
            "assembled vector left the positive cone (gap condition violated "
            "or numerical fault)"
        )
    a_edit = system.edited.adjacency_matrix()
    ax = a_edit @ xt
    lam = float(xt @ ax) / float(xt @ xt)
    res = float(np.linalg.norm(ax - lam * xt))
    assert res <= 1e-8, f"assembled eigen-residual {res} exceeds 1e-8"
    w_edit, _ = dense_spectrum(system.edited)
    assert abs(lam - float(w_edit[0])) <= 1e-8 * max(1.0, abs(lam)), (
        "assembled Rayleigh value is not the top eigenvalue of the edited graph"
    )
    return Eigenpair(lam, xt, res, 0, "perturbation")


def rotated_frame(system: PerturbationSystem, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Test-support frame: x~ plus the rotated complement
    Y~ = (Y - x p^T)(I + p p^T)^{-1/2}; together they form an orthogonal
    matrix up to solver noise."""
    pn2 = float(p @ p)
    xt = (system.x + system.Y @ p) / math.sqrt(1.0 + pn2)
    b = system.Y - np.outer(system.x, p)
    if pn2 > 0.0:
        coef = (1.0 - 1.0 / math.sqrt(1.0 + pn2)) / pn2
        yt = b - coef * np.outer(b @ p, p)
    else:
        yt = b
    return xt, yt


def certify_ratio(g: Graph, e, sign: int, c: float) -> PerturbationReport:
    """Full pipeline: build, solve, assemble, then compare the observed
    ratio of the edited graph against the (1+c)/(1-c) certificate.

    The observed ratio is cross-checked against the spectral module's
    independent dense computation to 1e-7 relative."""
    system = build_system(g, e, sign)
    sol = solve_p(system, c)
    pair = assemble_xtilde(system, sol.p)
    xt = pair.vector
    gamma_obs = float(xt.max()) / float(xt.min())
    dense_gamma = ratio(system.edited).gamma
    assert abs(gamma_obs - dense_gamma) <= 1e-7 * max(1.0, dense_gamma), (
        f"assembled ratio {gamma_obs!r} disagrees with dense ratio {dense_gamma!r}"
    )
    certificate = (1.0 + c) / (1.0 - c)
    return PerturbationReport(
        n=system.n,
        c=c,
        sign=sign,
        edge=(system.edge.u, system.edge.v) if system.edge is not None else None,
        delta=system.delta,
        gap_condition_holds=True,
        eta=system.eta,
        theta=system.theta,
        p_norm=float(np.linalg.norm(sol.p)),
        p_bound=sol.p_bound,
        rho=sol.rho,
        iterations=sol.iterations,
        xtilde_residual=pair.residual,
        lambda_tilde=pair.value,
        gamma_observed=gamma_obs,
        gamma_certificate=certificate,
        holds=gamma_obs < certificate,
    )
