import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from perronlab.chebyshev import (
    ChebKind,
    LogReal,
    cheb_explicit,
    cheb_log_lower_bound,
    cheb_recurrence,
    log_abs_of,
)
from perronlab.errors import DomainError

T = ChebKind.FIRST
U = ChebKind.SECOND

# hand-expanded polynomial values: T3 = 4t^3-3t, U3 = 8t^3-4t,
# T5 = 16t^5-20t^3+5t
FROZEN = [
    (T, 3, 2.0, 26.0),
    (U, 3, 2.0, 56.0),
    (T, 5, 1.5, 61.5),
    (T, 0, 3.7, 1.0),
    (T, 1, 3.7, 3.7),
    (U, 0, 3.7, 1.0),
    (U, 1, 3.7, 7.4),
    (T, 4, -1.0, 1.0),
    (U, 2, 0.0, -1.0),
]


@pytest.mark.parametrize("kind,n,t,want", FROZEN)
def test_recurrence_frozen_values(kind, n, t, want):
    assert cheb_recurrence(kind, n, t) == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("kind,n,t,want", [row for row in FROZEN if abs(row[2]) >= 1.0])
def test_explicit_frozen_values(kind, n, t, want):
    got = cheb_explicit(kind, n, t)
    assert not isinstance(got, LogReal)
    assert got == pytest.approx(want, rel=1e-12)


class TestBoundaryValues:
    def test_first_kind_at_one(self):
        for n in range(8):
            assert cheb_explicit(T, n, 1.0) == 1.0

    def test_second_kind_at_one(self):
        for n in range(8):
            assert cheb_explicit(U, n, 1.0) == n + 1

    def test_at_minus_one(self):
        for n in range(8):
            assert cheb_explicit(T, n, -1.0) == (-1.0) ** n
            assert cheb_explicit(U, n, -1.0) == (-1.0) ** n * (n + 1)


class TestParity:
    @given(
        kind=st.sampled_from([T, U]),
        n=st.integers(0, 40),
        t=st.floats(1.0, 30.0),
    )
    def test_negating_argument_flips_by_degree_parity(self, kind, n, t):
        plus = cheb_explicit(kind, n, t)
        minus = cheb_explicit(kind, n, -t)
        sign = (-1.0) ** n
        if isinstance(plus, LogReal):
            assert isinstance(minus, LogReal)
            assert minus.log_abs == plus.log_abs
            assert minus.sign == plus.sign * (1 if n % 2 == 0 else -1)
        else:
            assert minus == pytest.approx(sign * plus, rel=1e-12)


@given(
    kind=st.sampled_from([T, U]),
    n=st.integers(0, 60),
    t=st.floats(1.0, 25.0),
)
def test_recurrence_and_explicit_agree(kind, n, t):
    by_rec = cheb_recurrence(kind, n, t)
    by_formula = cheb_explicit(kind, n, t)
    if isinstance(by_formula, LogReal):
        assert math.isinf(by_rec) or by_rec > 1e280
    elif math.isinf(by_rec):
        assert by_formula > 1e300
    else:
        assert by_formula == pytest.approx(by_rec, rel=1e-8)


@given(n=st.integers(0, 50), t=st.floats(1.0, 10.0))
def test_recurrence_identity_between_kinds(n, t):
    # T_{n+1}(t) = t T_n(t) - (1 - t^2) U_n... use the simpler coupling
    # T_n = U_n - t U_{n-1}
    un = cheb_recurrence(U, n, t)
    un1 = cheb_recurrence(U, n - 1, t) if n >= 1 else 0.0
    tn = cheb_recurrence(T, n, t)
    assert tn == pytest.approx(un - t * un1, rel=1e-9, abs=1e-9)


class TestLogRegime:
    def test_huge_degree_returns_logreal(self):
        got = cheb_explicit(T, 10_000, 2.0)
        assert isinstance(got, LogReal)
        assert got.sign == 1
        u = math.acosh(2.0)
        # log T_n = n u + log1p(exp(-2 n u)) - log 2, bracketed by the floor
        assert got.log_abs >= cheb_log_lower_bound(10_000, 2.0)
        assert got.log_abs <= 10_000 * u  # cosh(nu) <= e^{nu}

    def test_second_kind_log_form(self):
        got = cheb_explicit(U, 5_000, 3.0)
        assert isinstance(got, LogReal)
        u = math.acosh(3.0)
        # U_n = sinh((n+1)u)/sinh(u); compare in logs
        want = 5_001 * u + math.log1p(-math.exp(-2 * 5_001 * u)) - math.log(2) - 0.5 * math.log(9.0 - 1.0)
        assert got.log_abs == pytest.approx(want, rel=1e-12)

    def test_to_float_overflow_saturates(self):
        big = LogReal(1, 1e6)
        assert big.to_float() == math.inf
        assert LogReal(-1, 1e6).to_float() == -math.inf
        assert LogReal(0, 0.0).to_float() == 0.0

    def test_moderate_logreal_round_trips(self):
        x = LogReal(-1, math.log(7.5))
        assert x.to_float() == pytest.approx(-7.5, rel=1e-15)

    def test_log_abs_of_both_representations(self):
        assert log_abs_of(8.0) == pytest.approx(math.log(8.0))
        assert log_abs_of(LogReal(1, 42.0)) == 42.0
        assert log_abs_of(0.0) == -math.inf

    @given(n=st.integers(1, 2000), t=st.floats(1.0 + 1e-9, 50.0))
    def test_lower_bound_really_bounds(self, n, t):
        floor = cheb_log_lower_bound(n, t)
        got = cheb_explicit(T, n, t)
        assert log_abs_of(got) >= floor - 1e-9


class TestDomain:
    def test_negative_degree_rejected(self):
        with pytest.raises(DomainError):
            cheb_recurrence(T, -1, 2.0)
        with pytest.raises(DomainError):
            cheb_explicit(U, -2, 2.0)

    def test_open_interval_rejected_for_explicit(self):
        with pytest.raises(DomainError):
            cheb_explicit(T, 3, 0.5)

    def test_recurrence_accepts_inside_interval(self):
        # recurrence has no domain restriction
        assert cheb_recurrence(T, 3, 0.5) == pytest.approx(4 * 0.125 - 1.5)
