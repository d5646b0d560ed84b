"""Inequality checks: each computes both sides from first principles.

Every check returns a BoundCheck with the raw lhs/rhs (log-space where
the quantities would overflow), the comparison direction, the verdict,
and the favorable margin.  Non-strict comparisons that can be tight in
exact arithmetic (the two eigenvector-ratio checks) allow 1e-12 relative
numerical slack; everything else is compared bare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from perronlab.chebyshev import ChebKind, LogReal, cheb_explicit
from perronlab.errors import (
    Disconnected,
    DistanceTooLarge,
    InvalidParameters,
    InvalidSize,
    NonRegularRequired,
    NotRegular,
    ParametersTooSmall,
)
from perronlab.graph import (
    Graph,
    add_edge,
    as_edge,
    diameter,
    distance,
    is_connected,
    remove_edge,
)
from perronlab.spectral import (
    algebraic_connectivity,
    dense_spectrum,
    principal_eigenpair,
    ratio,
)
from perronlab.families import ring_plus_e

_RATIO_TOL = 1e-12

CHECK_NAMES = (
    "ratio_diameter",
    "distance_ratio",
    "regular_diameter",
    "diameter_change",
    "cgn",
    "alon_milman",
    "expander_corollary",
    "exponential_ring",
    "removal_poly",
)

CSV_HEADER = ("name", "params", "lhs", "rhs", "log_space", "holds", "slack")


@dataclass(frozen=True)
class BoundCheck:
    name: str
    params: str
    lhs: float
    rhs: float
    op: str  # one of "<=", "<", ">=", ">"
    log_space: bool
    holds: bool
    slack: float
    context: dict

    def csv_row(self) -> tuple[str, ...]:
        return (
            self.name,
            self.params,
            f"{self.lhs:.17g}",
            f"{self.rhs:.17g}",
            "true" if self.log_space else "false",
            "true" if self.holds else "false",
            f"{self.slack:.17g}",
        )


def _make(name, params, lhs, rhs, op, log_space, context, tol=0.0, extra_ok=True):
    pad = tol * max(1.0, abs(lhs), abs(rhs))
    if op in ("<=", "<"):
        slack = rhs - lhs
        holds = lhs <= rhs + pad if op == "<=" else lhs < rhs + pad
    elif op in (">=", ">"):
        slack = lhs - rhs
        holds = lhs >= rhs - pad if op == ">=" else lhs > rhs - pad
    else:
        raise InvalidParameters(f"unknown comparison {op!r}")
    return BoundCheck(
        name, params, float(lhs), float(rhs), op, log_space,
        bool(holds) and bool(extra_ok), float(slack), context,
    )


def _require_connected(g: Graph) -> None:
    if g.n < 2:
        raise InvalidSize("check needs n >= 2")
    if not is_connected(g):
        raise Disconnected("check needs a connected graph")


def _regular_degree(g: Graph) -> int:
    degs = g.degrees()
    if int(degs.min()) != int(degs.max()):
        raise NotRegular("check needs a regular graph")
    return int(degs[0])


def check_ratio_diameter(g: Graph) -> BoundCheck:
    """log gamma <= D * log lambda1."""
    _require_connected(g)
    rep = ratio(g)
    dia = diameter(g)
    lhs = rep.log_gamma
    rhs = dia * math.log(rep.lambda1)
    ctx = {"lambda1": rep.lambda1, "D": dia, "gamma": rep.gamma}
    return _make("ratio_diameter", f"n={g.n},m={g.m}", lhs, rhs, "<=", True, ctx, tol=_RATIO_TOL)


def check_distance_ratio(g: Graph, i: int, j: int) -> BoundCheck:
    """log(q_j / q_i) <= dist(i,j) * log lambda1 for one vertex pair."""
    _require_connected(g)
    pair = principal_eigenpair(g)
    q = pair.vector
    dist = distance(g, i, j)
    lhs = math.log(float(q[j])) - math.log(float(q[i]))
    rhs = dist * math.log(pair.value)
    ctx = {"lambda1": pair.value, "dist": dist, "q_i": float(q[i]), "q_j": float(q[j])}
    return _make("distance_ratio", f"i={i},j={j}", lhs, rhs, "<=", True, ctx, tol=_RATIO_TOL)


def check_regular_diameter(g: Graph) -> BoundCheck:
    """D <= 3n/d on connected regular graphs."""
    _require_connected(g)
    d = _regular_degree(g)
    dia = diameter(g)
    ctx = {"d": d, "n": g.n}
    return _make("regular_diameter", f"n={g.n},d={d}", float(dia), 3.0 * g.n / d, "<=", False, ctx)


def check_diameter_change(g: Graph, e) -> BoundCheck:
    """D(G+e) >= D(G)/2."""
    _require_connected(g)
    e = as_edge(e)
    augmented = add_edge(g, e)  # raises EdgeExists when e is present
    d_before = diameter(g)
    d_after = diameter(augmented)
    ctx = {"D_before": d_before, "D_after": d_after, "edge": (e.u, e.v)}
    return _make(
        "diameter_change", f"n={g.n},e=({e.u},{e.v})", float(d_after), d_before / 2.0, ">=", False, ctx
    )


def check_cgn(g: Graph) -> BoundCheck:
    """Max-degree drift: Delta - lambda1 >= 1/(n(D+1)) on connected
    nonregular graphs."""
    _require_connected(g)
    degs = g.degrees()
    if int(degs.min()) == int(degs.max()):
        raise NonRegularRequired("check applies only to nonregular graphs")
    w, _ = dense_spectrum(g)
    dia = diameter(g)
    lhs = float(degs.max()) - float(w[0])
    rhs = 1.0 / (g.n * (dia + 1))
    ctx = {"Delta": int(degs.max()), "lambda1": float(w[0]), "D": dia}
    return _make("cgn", f"n={g.n},m={g.m}", lhs, rhs, ">=", False, ctx)


def check_alon_milman(g: Graph) -> BoundCheck:
    """D <= 2 * floor(sqrt(2*Delta/delta_L) * log2 n)."""
    _require_connected(g)
    delta_l = algebraic_connectivity(g)
    big_delta = int(g.degrees().max())
    dia = diameter(g)
    rhs = 2.0 * math.floor(math.sqrt(2.0 * big_delta / delta_l) * math.log2(g.n))
    ctx = {"Delta": big_delta, "delta_L": delta_l, "D": dia}
    return _make("alon_milman", f"n={g.n},m={g.m}", float(dia), rhs, "<=", False, ctx)


def check_expander_corollary(g: Graph, e) -> BoundCheck:
    """log gamma(G +- e) <= 4*sqrt(2/eps)*log2(d+1)*log n, with eps the
    measured multiplicative gap of the regular base graph.  The edit
    direction is inferred from edge membership."""
    _require_connected(g)
    d = _regular_degree(g)
    e = as_edge(e)
    w, _ = dense_spectrum(g)
    delta = float(w[0] - w[1])
    eps = delta / d
    if eps <= 0.0:
        raise ParametersTooSmall("multiplicative gap must be positive")
    if g.has_edge(e.u, e.v):
        edited = remove_edge(g, e)
        sign = -1
    else:
        edited = add_edge(g, e)
        sign = +1
    rep = ratio(edited)
    lhs = rep.log_gamma
    rhs = 4.0 * math.sqrt(2.0 / eps) * math.log2(d + 1) * math.log(g.n)
    ctx = {"eps": eps, "delta": delta, "d": d, "sign": sign, "gamma_edited": rep.gamma}
    return _make(
        "expander_corollary", f"n={g.n},d={d},e=({e.u},{e.v})", lhs, rhs, "<=", True, ctx
    )


def check_exponential_ring(r: int, d: int) -> BoundCheck:
    """log gamma(ring+e) > n/(18 d^3), plus the supporting chain:
    lambda1 > d + 2/(3d(d+1)), the layer/Chebyshev identity to 1e-8
    relative, and the closed-form floor r*log(1 + 1/(3d(d+1))) - log 2."""
    desc, gplus = ring_plus_e(r, d)
    n = gplus.n
    if n <= 18 * d**3:
        raise ParametersTooSmall(
            f"need n > 18*d^3 = {18 * d**3}, got n = {n} (r too small)"
        )
    pair = principal_eigenpair(gplus)
    q = pair.vector
    lam1 = pair.value
    log_gamma = math.log(float(q.max())) - math.log(float(q.min()))

    lam1_floor = d + 2.0 / (3.0 * d * (d + 1))
    chain_lambda1 = lam1 > lam1_floor

    t = (lam1 - d + 2.0) / 2.0
    layer_means = {}
    spread = 0.0
    for j in range(0, r + 1):
        vals = np.concatenate(
            [q[list(desc.layer_map[j])], q[list(desc.layer_map[-j])]]
        )
        spread = max(spread, float(vals.max() - vals.min()))
        layer_means[j] = float(vals.mean())
    a0 = layer_means[0]
    ident_rel = 0.0
    for j in range(1, r + 1):
        tj = cheb_explicit(ChebKind.FIRST, j, t)
        if isinstance(tj, LogReal):
            rel = abs(math.exp(math.log(layer_means[j]) - math.log(a0) - tj.log_abs) - 1.0)
        else:
            rel = abs(layer_means[j] / a0 - tj) / tj
        ident_rel = max(ident_rel, rel)
    chain_identity = ident_rel <= 1e-8

    cheb_floor = r * math.log1p(1.0 / (3.0 * d * (d + 1))) - math.log(2.0)
    chain_floor = log_gamma >= cheb_floor

    lhs = log_gamma
    rhs = n / (18.0 * d**3)
    ctx = {
        "lambda1": lam1,
        "lambda1_floor": lam1_floor,
        "chain_lambda1": chain_lambda1,
        "identity_max_rel": ident_rel,
        "chain_identity": chain_identity,
        "layer_spread": spread,
        "cheb_floor": cheb_floor,
        "chain_floor": chain_floor,
        "n": n,
    }
    return _make(
        "exponential_ring", f"r={r},d={d},n={n}", lhs, rhs, ">", True, ctx,
        extra_ok=chain_lambda1 and chain_identity and chain_floor,
    )


def check_removal_poly(g: Graph, e, c_dist: int) -> BoundCheck:
    """log gamma(G-e) < 2 log n + log(1 + d^c_dist), valid when the
    endpoints stay within distance c_dist after removal; also requires
    the minimum eigenvector coordinate of G-e to sit at an endpoint."""
    _require_connected(g)
    d = _regular_degree(g)
    if c_dist < 1:
        raise InvalidParameters(f"c_dist must be >= 1, got {c_dist}")
    e = as_edge(e)
    stripped = remove_edge(g, e)  # EdgeMissing / BridgeRemoval propagate
    dist = distance(stripped, e.u, e.v)
    if dist > c_dist:
        raise DistanceTooLarge(
            f"endpoints are at distance {dist} > c_dist = {c_dist} after removal"
        )
    pair = principal_eigenpair(stripped)
    q = pair.vector
    q_min = float(q.min())
    lhs = math.log(float(q.max())) - math.log(q_min)
    rhs = 2.0 * math.log(g.n) + float(np.logaddexp(0.0, c_dist * math.log(d)))
    endpoint_min = min(float(q[e.u]), float(q[e.v]))
    lemma_ok = endpoint_min <= q_min * (1.0 + 1e-12)
    ctx = {
        "d": d,
        "dist": int(dist),
        "c_dist": c_dist,
        "v_min": int(np.argmin(q)),
        "edge": (e.u, e.v),
        "argmin_at_endpoint": lemma_ok,
    }
    return _make(
        "removal_poly", f"n={g.n},d={d},e=({e.u},{e.v}),c={c_dist}", lhs, rhs, "<", True, ctx,
        extra_ok=lemma_ok,
    )
