import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle, rel
from qpsi import ConvergenceError, DomainError, PoleError, SumPolicy
from qpsi.policy import CompensatedSum, fsum_complex
from qpsi.qcore import (lattice_power, log_gamma_real, qpoch_fin, qpoch_inf, qpoch_multi,
                        qpoch_ratio, qpoch_ratio_array, theta)

qs = st.floats(0.1, 0.8)
unit_disc = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)


class TestQpoch:
    def test_zero_argument(self):
        assert qpoch_inf(0, 0.5) == 1

    def test_oracle(self):
        assert rel(qpoch_inf(0.5, 0.5), oracle("qpoch_inf(0.5,0.5)")) < 1e-14

    def test_first_factor_vanishes(self):
        assert qpoch_inf(1, 0.5) == 0

    def test_finite_examples(self):
        assert qpoch_fin(0.3, 0.5, 0) == 1
        assert abs(qpoch_fin(0.3, 0.5, 1) - 0.7) < 1e-15
        assert abs(qpoch_fin(0.3, 0.5, -1) - 2.5) < 1e-14

    def test_multi_examples(self):
        assert qpoch_multi([], 0.5, 5) == 1
        assert abs(qpoch_multi([0.3], 0.5, 1) - 0.7) < 1e-15
        assert abs(qpoch_multi([0.3, 0.2], 0.5, 2) - 0.7 * 0.85 * 0.8 * 0.9) < 1e-15

    def test_bad_q(self):
        for q in (0, 1, 1.5, -0.2, float("nan")):
            with pytest.raises(DomainError):
                qpoch_inf(0.3, q)

    def test_negative_index_pole(self):
        with pytest.raises(PoleError):
            qpoch_fin(0.25, 0.5, -2)

    @given(u=unit_disc, q=qs, nu=st.integers(-6, 6))
    @settings(max_examples=60, deadline=None)
    def test_finite_from_infinite(self, u, q, nu):
        # (u)_nu (u q^nu)_inf = (u)_inf
        try:
            fin = qpoch_fin(u, q, nu)
        except PoleError:
            return
        lhs = fin * qpoch_inf(u * q ** nu, q)
        rhs = qpoch_inf(u, q)
        assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(rhs), abs(fin))

    @given(u=unit_disc, q=qs)
    @settings(max_examples=40, deadline=None)
    def test_ratio_scaled_matches_plain(self, u, q):
        v = 3.0 + u
        try:
            m, e = qpoch_ratio([u], [v], q, scaled=True)
        except PoleError:
            return
        assert rel(complex(math.ldexp(m.real, e), math.ldexp(m.imag, e)),
                   qpoch_ratio([u], [v], q)) < 1e-15

    def test_scaled_ratio_survives_underflow(self):
        # huge arguments: the plain ratio leaves the binary64 range
        q = 0.1
        z = 0.7 * q ** -150
        m, e = qpoch_ratio([q * z / 2] * 4, [2 * z] * 4, q, scaled=True)
        assert m != 0 and e < -1100
        assert qpoch_ratio([q * z / 2] * 4, [2 * z] * 4, q) == 0

    def test_ratio_array_matches_scalar(self):
        q = 0.4
        z = 0.9 * q ** np.arange(-20, 20, dtype=float)
        vals, pole = qpoch_ratio_array(0.3, 1.7, z, q)
        assert not pole.any()
        for zi, v in zip(z, vals):
            assert rel(v, qpoch_ratio([0.3 * zi], [1.7 * zi], q)) < 1e-13


class TestTheta:
    def test_zeros(self):
        assert theta(1, 0.5) == 0
        assert theta(0.5, 0.5) == 0

    def test_oracle(self):
        assert rel(theta(0.3, 0.4), oracle("theta(0.3,0.4)")) < 1e-14

    @given(z=unit_disc, q=qs)
    @settings(max_examples=60, deadline=None)
    def test_quasi_periodicity(self, z, q):
        if abs(z) < 0.2:
            return
        lhs = theta(q * z, q)
        rhs = -theta(z, q) / z
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    @given(z=unit_disc, q=qs)
    @settings(max_examples=40, deadline=None)
    def test_inversion(self, z, q):
        # theta(q/z) = theta(z)
        if abs(z) < 0.2:
            return
        assert abs(theta(q / z, q) - theta(z, q)) <= 1e-12 * max(1.0, abs(theta(z, q)))


class TestMisc:
    def test_log_gamma(self):
        assert log_gamma_real(1) == 0
        assert log_gamma_real(2) == 0
        assert abs(log_gamma_real(0.5) - math.log(math.sqrt(math.pi))) < 1e-15

    def test_log_gamma_domain(self):
        with pytest.raises(DomainError):
            log_gamma_real(-1.0)

    def test_lattice_power_principal(self):
        xi = -0.5 + 0.5j
        for nu in (-5, 0, 7):
            z = xi * 0.5 ** nu
            assert rel(lattice_power(xi, nu, 0.37, 0.5), z ** 0.37) < 1e-13

    def test_lattice_power_log_scale(self):
        assert rel(lattice_power(2.0, 0, 1, 0.5, math.log(3)), 6) < 1e-15

    def test_policy_validation(self):
        with pytest.raises(DomainError):
            SumPolicy(rel_tol=0)

    def test_compensated_sum(self):
        vals = [1e16, 1.0, -1e16, 1j]
        assert fsum_complex(vals) == 1 + 1j
        acc = CompensatedSum()
        for v in vals:
            acc.add(v)
        assert acc.value == 1 + 1j

    def test_product_nonconvergence_reported(self):
        with pytest.raises(ConvergenceError):
            qpoch_inf(0.3, 0.5, SumPolicy(max_terms=3))
