"""Chebyshev polynomials of the first and second kind.

Two evaluation routes that tests play against each other: the three-term
recurrence (any real t) and the hyperbolic closed forms (|t| >= 1).  The
closed forms switch to a (sign, log magnitude) representation when the
value would overflow a double.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple

from perronlab.errors import DomainError

_LOG2 = math.log(2.0)
_EXP_CAP = 700.0  # exp argument above this risks overflow


class ChebKind(str, Enum):
    FIRST = "first"  # T_0 = 1, T_1 = t
    SECOND = "second"  # U_0 = 1, U_1 = 2t


class LogReal(NamedTuple):
    """Value sign * exp(log_abs), for magnitudes beyond double range."""

    sign: int
    log_abs: float

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf


def log_abs_of(x: float | LogReal) -> float:
    """log|x| for either representation; -inf at zero."""
    if isinstance(x, LogReal):
        return x.log_abs
    return math.log(abs(x)) if x != 0.0 else -math.inf


def cheb_recurrence(kind: ChebKind, n: int, t: float) -> float:
    """Evaluate by the recurrence X_{k+1} = 2 t X_k - X_{k-1}."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    prev = 1.0
    if n == 0:
        return prev
    cur = t if kind == ChebKind.FIRST else 2.0 * t
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur


def _explicit_nonneg(kind: ChebKind, n: int, t: float) -> float | LogReal:
    # t >= 1 here
    if t == 1.0:
        return 1.0 if kind == ChebKind.FIRST else float(n + 1)
    u = math.acosh(t)
    if kind == ChebKind.FIRST:
        nu = n * u
        if nu < _EXP_CAP:
            return math.cosh(nu)
        return LogReal(1, nu + math.log1p(math.exp(-2.0 * nu)) - _LOG2)
    mu = (n + 1) * u
    s2 = t * t - 1.0
    if mu < _EXP_CAP:
        val = math.sinh(mu) / math.sqrt(s2)
        if math.isfinite(val):
            return val
    return LogReal(1, mu + math.log1p(-math.exp(-2.0 * mu)) - _LOG2 - 0.5 * math.log(s2))


def cheb_explicit(kind: ChebKind, n: int, t: float) -> float | LogReal:
    """Hyperbolic closed form, valid for |t| >= 1.

    cosh(n*acosh t) for the first kind, sinh((n+1)*acosh t)/sqrt(t^2-1)
    for the second; odd/even symmetry handles t <= -1.  Returns LogReal
    instead of a float once the magnitude exceeds double range.
    """
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    if abs(t) < 1.0:
        raise DomainError(f"explicit form needs |t| >= 1, got t={t}")
    flip = t < 0 and n % 2 == 1
    val = _explicit_nonneg(kind, n, abs(t))
    if isinstance(val, LogReal):
        return LogReal(-val.sign, val.log_abs) if flip else val
    return -val if flip else val


def cheb_log_lower_bound(n: int, t: float) -> float:
    """n*acosh(t) - log 2, a lower bound for log of the first-kind value
    at t >= 1 (since cosh x >= e^x / 2)."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    if t < 1.0:
        raise DomainError(f"need t >= 1, got t={t}")
    return n * math.acosh(t) - _LOG2
