import cmath

import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle, rel
from qpsi import (AskeyParams, BC1Params, ConvergenceError, DomainError, PoleError, askey_I_product,
                  askey_I_sum, bc1_J_product, bc1_J_sum, bc1_shift_residual, j6phi5_product,
                  jackson_bilateral, jackson_unilateral, nabla_residual, q_beta,
                  recurrence_residual_I)
from qpsi.jackson1d import (askey_connection_factor, askey_limit_residual, bc1_nu0_dominance,
                            bc1_prefactor, bc1_shift_factor)
from qpsi.qcore import qpoch_ratio, theta

ASKEY = AskeyParams(0.3, 0.4, 0.9, 0.5)
A4 = (1.2, 1.1, 0.9, 1.3)
BC1 = BC1Params(A4, 0.7, 0.5)
# alpha + beta < 0 keeps I(alpha + 1) convergent as well
SHIFTABLE = AskeyParams(0.3, -0.8, 0.9, 0.5)


class TestJacksonIntegrals:
    def test_unilateral_constant(self):
        assert rel(jackson_unilateral(lambda z: 1, 1, 0.5).value, 1) < 1e-12

    def test_unilateral_linear(self):
        assert rel(jackson_unilateral(lambda z: z, 1, 0.5).value, 2 / 3) < 1e-12

    def test_unilateral_beta_one_one(self):
        q = 0.5

        def f(z):
            return qpoch_ratio([q * z], [q * z], q)

        assert rel(jackson_unilateral(f, 1, q).value, 1) < 1e-12

    def test_bilateral_non_decaying(self):
        # theta(qz)/theta(z) * z is constant, so every lattice term is equal
        q = 0.5

        def f(z):
            return -theta(q * z, q) * z / theta(z, q)

        with pytest.raises(ConvergenceError):
            jackson_bilateral(f, 0.7, q)

    def test_bilateral_askey(self):
        q, qb = ASKEY.q, ASKEY.q ** ASKEY.beta

        def f(z):
            return z ** ASKEY.alpha * qpoch_ratio([q * z], [qb * z], q)

        assert rel(jackson_bilateral(f, ASKEY.xi, q).value, oracle("askey(0.3,0.4,0.9,0.5)")) < 1e-12


class TestAskey:
    def test_oracle(self):
        want = oracle("askey(0.3,0.4,0.9,0.5)")
        assert rel(askey_I_sum(ASKEY).value, want) < 1e-12
        assert rel(askey_I_product(ASKEY), want) < 1e-13

    def test_complex_xi_oracle(self):
        p = AskeyParams(0.3, 0.4, 0.8 + 0.3j, 0.5)
        want = oracle("askey(0.3,0.4,0.8+0.3j,0.5)")
        assert rel(askey_I_sum(p).value, want) < 1e-12
        assert rel(askey_I_product(p), want) < 1e-13

    def test_xi_one_is_q_beta(self):
        p = AskeyParams(0.3, 0.4, 1.0, 0.5)
        assert rel(askey_I_sum(p).value, q_beta(0.3, 0.4, 0.5)) < 1e-12

    def test_connection_factor(self):
        p1 = AskeyParams(0.3, 0.4, 1.0, 0.5)
        assert rel(askey_connection_factor(ASKEY) * askey_I_sum(p1).value, askey_I_sum(ASKEY).value) < 1e-12

    @given(r=st.floats(0.5, 1.5), phase=st.floats(0.2, 2.5))
    @settings(max_examples=20, deadline=None)
    def test_q_shift_invariance(self, r, phase):
        xi = cmath.rect(r, phase)
        a = askey_I_sum(AskeyParams(0.3, 0.4, xi, 0.5)).value
        b = askey_I_sum(AskeyParams(0.3, 0.4, 0.5 * xi, 0.5)).value
        assert rel(b, a) < 1e-10

    def test_divergent(self):
        # alpha + beta >= 1: the terms grow in the negative direction
        with pytest.raises(ConvergenceError):
            askey_I_sum(AskeyParams(0.7, 1.3, 0.9, 0.5))

    def test_theta_zero_pole(self):
        with pytest.raises(PoleError):
            askey_I_product(AskeyParams(0.3, 0.4, 0.5 ** -0.4, 0.5))


class TestQBeta:
    def test_examples(self):
        assert rel(q_beta(1, 1, 0.5), 1) < 1e-15
        assert rel(q_beta(2, 1, 0.5), 1 / 1.5) < 1e-15

    def test_large_q(self):
        assert abs(q_beta(1.5, 0.7, 0.999)) > 0

    def test_recurrence(self):
        assert recurrence_residual_I(SHIFTABLE) < 1e-10
        assert recurrence_residual_I(AskeyParams(0.3, -0.8, 1.0, 0.5)) < 1e-10

    def test_nabla(self):
        for phi in (lambda z: 1, lambda z: z, lambda z: 1 - z):
            assert nabla_residual(SHIFTABLE, phi) < 1e-10

    def test_limit(self):
        assert askey_limit_residual(0.7, 1.3, 0.5, 40) < 1e-8


class TestBC1:
    def test_oracle(self):
        want = oracle("bc1(1.2,1.1,0.9,1.3;0.7,0.5)")
        assert rel(bc1_J_sum(BC1).value, want) < 1e-12
        assert rel(bc1_J_product(BC1), want) < 1e-12

    def test_j6phi5(self):
        want = oracle("bc1(1.2,1.1,0.9,1.3;a1,0.5)")
        assert rel(bc1_J_sum(BC1Params(A4, A4[0], 0.5)).value, want) < 1e-12
        assert rel(j6phi5_product(A4, 0.5), want) < 1e-12

    def test_q_shift_invariance(self):
        a = bc1_J_sum(BC1Params(A4, 0.7 + 0.2j, 0.5)).value
        b = bc1_J_sum(BC1Params(A4, 0.35 + 0.1j, 0.5)).value
        assert rel(b, a) < 1e-10

    def test_shift_each_index(self):
        for i in (1, 2, 3, 4):
            assert bc1_shift_residual(BC1, i) < 1e-9

    def test_shift_factor_by_products(self):
        # the shift equation follows from the theta-quotient form
        for i in (1, 2, 3, 4):
            moved = list(A4)
            moved[i - 1] *= 0.5
            ratio = bc1_J_product(BC1Params(moved, 0.7, 0.5)) / bc1_J_product(BC1)
            assert rel(ratio, bc1_shift_factor(A4, i)) < 1e-12

    def test_bad_index(self):
        with pytest.raises(DomainError):
            bc1_shift_residual(BC1, 5)

    def test_prefactor_singular(self):
        with pytest.raises(PoleError):
            bc1_prefactor(BC1Params(A4, 1.0, 0.5))

    def test_nu0_dominance(self):
        assert bc1_nu0_dominance(A4, 0.25, 10) < 1e-6

    def test_small_a_diverges(self):
        # prod a_i below q: the terms grow as nu -> -infinity
        with pytest.raises(ConvergenceError):
            bc1_J_sum(BC1Params((0.3, 0.4, 0.5, 0.6), 0.7, 0.5))
