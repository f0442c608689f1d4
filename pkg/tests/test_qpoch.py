"""q-Pochhammer symbols: frozen oracles, finite differences, properties.

Frozen reference values were computed with mpmath at 30 significant
digits; mpmath is also used directly as an independent oracle where
available.  Derivatives are cross-checked against centered finite
differences of the plain product, which never share code with the series
implementations.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loggap import qpoch

mpmath = pytest.importorskip("mpmath")

A_GRID = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
Q_GRID = [0.1, 0.3, 0.5, 0.7, 0.9]


class TestQpochInf:
    def test_a_zero(self):
        assert qpoch.qpoch_inf(0.0, 0.5) == 1.0

    def test_a_one_vanishes(self):
        assert qpoch.qpoch_inf(1.0, 0.5) == 0.0

    def test_frozen_half_half(self):
        # mpmath.qp(0.5, 0.5) = 0.288788095086602421278899721929
        assert qpoch.qpoch_inf(0.5, 0.5) == pytest.approx(
            0.2887880950866024, abs=2e-12
        )

    def test_frozen_tenth(self):
        # mpmath.qp(0.1, 0.1) = 0.89001009999899900000010001
        assert qpoch.qpoch_inf(0.1, 0.1) == pytest.approx(0.890010099998999, abs=2e-12)

    @pytest.mark.parametrize("a", [0.15, 0.5, 0.85])
    @pytest.mark.parametrize("q", [0.2, 0.6, 0.95])
    def test_against_mpmath(self, a, q):
        ref = float(mpmath.qp(a, q))
        assert qpoch.qpoch_inf(a, q) == pytest.approx(ref, abs=5e-12)

    def test_q_domain(self):
        with pytest.raises(ValueError):
            qpoch.qpoch_inf(0.5, 1.0)
        with pytest.raises(ValueError):
            qpoch.qpoch_inf(0.5, 0.0)

    def test_truncation_honesty(self):
        for a in A_GRID:
            for q in Q_GRID:
                coarse = qpoch.qpoch_inf(a, q, eps=1e-6)
                fine = qpoch.qpoch_inf(a, q, eps=5e-7)
                assert abs(coarse - fine) <= 1e-6

    @given(
        a=st.floats(0.0, 1.0),
        q=st.floats(0.01, 0.97),
    )
    @settings(max_examples=60, deadline=None)
    def test_bounds_unit_interval(self, a, q):
        v = qpoch.qpoch_inf(a, q)
        assert 0.0 <= v <= 1.0

    def test_decreasing_in_a(self):
        for q in Q_GRID:
            vals = [qpoch.qpoch_inf(a, q) for a in np.linspace(0, 1, 21)]
            assert all(x >= y - 1e-12 for x, y in zip(vals, vals[1:]))


class TestQpochFin:
    def test_two_factors(self):
        assert qpoch.qpoch_fin(0.5, 0.5, 2) == pytest.approx(0.375, abs=1e-15)

    def test_first_factor_vanishes(self):
        assert qpoch.qpoch_fin(1.0, 0.3, 5) == 0.0

    def test_empty_product(self):
        assert qpoch.qpoch_fin(0.7, 0.2, 0) == 1.0

    def test_converges_to_infinite_monotonically(self):
        a, q = 0.6, 0.4
        limit = qpoch.qpoch_inf(a, q)
        prev = 1.0
        for r in range(1, 40):
            cur = qpoch.qpoch_fin(a, q, r)
            assert cur <= prev + 1e-15
            prev = cur
        assert prev == pytest.approx(limit, abs=1e-12)


def _fd1(f, a, h=1e-6):
    return (f(a + h) - f(a - h)) / (2.0 * h)


def _fd2(f, a, h=1e-4):
    return (f(a + h) - 2.0 * f(a) + f(a - h)) / (h * h)


class TestDerivatives:
    def test_at_zero(self):
        # -(sum q^j) = -1/(1-q)
        assert qpoch.dqpoch_inf(0.0, 0.5) == pytest.approx(-2.0, abs=1e-12)

    def test_at_one_analytic_limit(self):
        # finite-difference oracle across a = 1 gives -(q;q):
        # mpmath d/da qp at (1.0, 0.5) = -0.288788095086602421
        fd = _fd1(lambda a: qpoch.qpoch_inf(a, 0.5) if a <= 1 else _signed_tail(a, 0.5), 1.0)
        val = qpoch.dqpoch_inf(1.0, 0.5)
        assert val == pytest.approx(-0.2887880950866024, abs=2e-10)
        assert val == pytest.approx(fd, rel=1e-6)

    def test_frozen_point_three(self):
        # mpmath d/da qp at (0.3, 0.5) = -1.29750263901587131986
        assert qpoch.dqpoch_inf(0.3, 0.5) == pytest.approx(
            -1.2975026390158713, abs=2e-11
        )

    def test_first_derivative_vs_fd_grid(self):
        for a in A_GRID:
            for q in Q_GRID:
                fd = _fd1(lambda x: qpoch.qpoch_inf(x, q), a)
                val = qpoch.dqpoch_inf(a, q)
                assert val == pytest.approx(fd, rel=1e-6), (a, q)

    def test_second_derivative_closed_geometric(self):
        # at a = 0: S1 = 1/(1-q), S2 = 1/(1-q^2): 4 - 4/3 = 8/3 for q = 1/2
        assert qpoch.d2qpoch_inf(0.0, 0.5) == pytest.approx(8.0 / 3.0, abs=1e-10)

    def test_frozen_second_derivative(self):
        # mpmath d2/da2 qp at (0.5, 0.5) = 1.66819087291794455574
        assert qpoch.d2qpoch_inf(0.5, 0.5) == pytest.approx(
            1.6681908729179446, abs=2e-10
        )

    def test_second_derivative_vs_fd_grid(self):
        for a in A_GRID:
            for q in Q_GRID:
                fd = _fd2(lambda x: qpoch.qpoch_inf(x, q), a)
                val = qpoch.d2qpoch_inf(a, q)
                assert val == pytest.approx(fd, rel=1e-4), (a, q)

    def test_second_derivative_nonnegative_on_grid(self):
        for a in np.linspace(0.0, 0.999, 40):
            for q in Q_GRID:
                assert qpoch.d2qpoch_inf(float(a), q) >= 0.0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            qpoch.d2qpoch_inf(1.0, 0.5)
        with pytest.raises(ValueError):
            qpoch.dqpoch_inf(1.5, 0.5)

    def test_finite_derivatives_vs_fd(self):
        for r in (1, 2, 5, 10):
            for a in (0.2, 0.7):
                q = 0.45
                fd = _fd1(lambda x: qpoch.qpoch_fin(x, q, r), a)
                assert qpoch.dqpoch_fin(a, q, r) == pytest.approx(fd, rel=1e-6)
                fd2 = _fd2(lambda x: qpoch.qpoch_fin(x, q, r), a)
                if r >= 2:
                    assert qpoch.d2qpoch_fin(a, q, r) == pytest.approx(fd2, rel=1e-4)
                else:
                    assert qpoch.d2qpoch_fin(a, q, r) == 0.0

    def test_finite_derivative_at_one(self):
        # derivative of (1-a)*T(a) at a = 1 is -T(1) = -(q;q)_{r-1}
        q, r = 0.3, 4
        assert qpoch.dqpoch_fin(1.0, q, r) == pytest.approx(
            -qpoch.qpoch_fin(q, q, r - 1), rel=1e-12
        )


def _signed_tail(a, q):
    """Plain product continued slightly above a = 1 (for the FD oracle)."""
    terms = 60
    return float(np.prod(1.0 - a * q ** np.arange(terms)))


class TestF:
    def test_f_inf_at_zero(self):
        for q in Q_GRID:
            assert qpoch.F_inf(0.0, q) == -1.0

    def test_f_fin_at_zero(self):
        assert qpoch.F_fin(0.0, 0.5, 3) == -1.0

    def test_f_fin_r1_constant(self):
        for a in np.linspace(0.0, 0.99, 15):
            assert qpoch.F_fin(float(a), 0.37, 1) == pytest.approx(-1.0, abs=1e-15)

    def test_plus1_consistency(self):
        for a in (0.05, 0.3, 0.8):
            for q in (0.2, 0.6):
                assert qpoch.F_inf_plus1(a, q) == pytest.approx(
                    qpoch.F_inf(a, q) + 1.0, abs=1e-13
                )
                assert qpoch.F_fin_plus1(a, q, 5) == pytest.approx(
                    qpoch.F_fin(a, q, 5) + 1.0, abs=1e-13
                )

    def test_plus1_small_a_quadratic(self):
        # F(a) + 1 = (a^2/2) d2(0) + O(a^3): the plus1 form must keep full
        # relative accuracy where the naive difference has cancelled away
        q = 1.0 / math.e
        lead = 0.5 * qpoch.d2qpoch_inf(0.0, q)
        for a in (1e-5, 1e-6, 1e-7):
            val = qpoch.F_inf_plus1(a, q)
            assert val == pytest.approx(lead * a * a, rel=1e-3)
