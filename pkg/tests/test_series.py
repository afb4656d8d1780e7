import cmath

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import oracle, rel
from qpsi import ConvergenceError, PoleError, PsiParams, SumPolicy, VWP6Params
from qpsi.qcore import qpoch_fin, qpoch_inf
from qpsi.series import converges, product_1psi1, rpsir_term, sum_rpsir, vwp6_lhs, vwp6_rhs


class TestConverges:
    def test_inside(self):
        rep = converges(PsiParams((0.4,), (0.1,), 0.5, 0.5))
        assert rep.ok
        assert rep.inner_margin == pytest.approx(0.25)
        assert rep.outer_margin == pytest.approx(0.5)

    def test_inner_boundary(self):
        assert not converges(PsiParams((0.4,), (0.4,), 0.5, 0.5))

    def test_outer_boundary(self):
        assert not converges(PsiParams((0.4,), (0.1,), 1.0, 0.5))

    def test_sum_refuses_outside(self):
        with pytest.raises(ConvergenceError):
            sum_rpsir(PsiParams((0.4,), (0.4,), 0.5, 0.5))


class TestRamanujan:
    def test_b_equals_q_is_binomial(self):
        p = PsiParams((0.4,), (0.5,), 0.3, 0.5)
        want = qpoch_inf(0.12, 0.5) / qpoch_inf(0.3, 0.5)
        assert rel(sum_rpsir(p).value, want) < 1e-12
        assert rel(product_1psi1(0.4, 0.5, 0.3, 0.5), want) < 1e-14
        # every negative-index term vanishes through (q)_nu in the denominator
        assert rpsir_term(p, -3) == 0

    def test_oracle(self):
        want = oracle("rpsir1(0.4,0.1,0.5,0.5)")
        assert rel(sum_rpsir(PsiParams((0.4,), (0.1,), 0.5, 0.5)).value, want) < 1e-12
        assert rel(product_1psi1(0.4, 0.1, 0.5, 0.5), want) < 1e-14

    def test_vanishing_product(self):
        # a = 1 and x = q: (q/(ax))_inf = 0 and the sum telescopes to zero
        assert product_1psi1(1, 0.1, 0.5, 0.5) == 0
        assert abs(sum_rpsir(PsiParams((1,), (0.1,), 0.5, 0.5)).value) < 1e-14

    def test_r2_oracle(self):
        sv = sum_rpsir(PsiParams((0.4, 0.3), (0.05, 0.1), 0.5, 0.5))
        assert sv.converged
        assert rel(sv.value, oracle("rpsir2(0.4,0.3;0.05,0.1;0.5,0.5)")) < 1e-12

    def test_terms_match_direct(self):
        p = PsiParams((0.4 + 0.1j, 0.3), (0.05, 0.1j), 0.5, 0.5)
        for nu in (-4, -1, 0, 3, 9):
            direct = p.x ** nu
            for a, b in zip(p.a, p.b):
                direct *= qpoch_fin(a, p.q, nu) / qpoch_fin(b, p.q, nu)
            assert rel(rpsir_term(p, nu), direct) < 1e-13

    @given(q=st.floats(0.1, 0.5), ra=st.floats(1.5, 3.0), pa=st.floats(-0.5, 0.5),
           rb=st.floats(0.05, 0.3), pb=st.floats(-0.5, 0.5), t=st.floats(0.2, 0.8),
           px=st.floats(-0.5, 0.5))
    @settings(max_examples=60, deadline=None)
    def test_identity_property(self, q, ra, pa, rb, pb, t, px):
        # small phases keep the bilateral sum well conditioned
        a, b = cmath.rect(ra, pa), cmath.rect(rb, pb)
        lo = abs(b / a)
        x = cmath.rect(lo + 0.05 + t * (0.95 - lo - 0.05), px)
        try:
            rhs = product_1psi1(a, b, x, q)
        except PoleError:
            assume(False)
        assume(abs(rhs) > 1e-8)
        lhs = sum_rpsir(PsiParams((a,), (b,), x, q)).value
        assert rel(lhs, rhs) < 1e-9

    def test_determinism(self):
        p = PsiParams((0.4,), (0.1,), 0.5, 0.5)
        a, b = sum_rpsir(p), sum_rpsir(p)
        assert a.value == b.value and a.terms_used == b.terms_used

    def test_policy_tolerance_respected(self):
        p = PsiParams((0.4,), (0.1,), 0.5, 0.5)
        loose = sum_rpsir(p, SumPolicy(rel_tol=1e-4))
        tight = sum_rpsir(p)
        assert loose.terms_used < tight.terms_used
        assert rel(loose.value, tight.value) < 1e-3


class TestBailey:
    P = VWP6Params(0.09, 0.7, 0.6, 0.45, 0.8, 0.5)

    def test_oracle(self):
        want = oracle("vwp6(0.09,0.7,0.6,0.45,0.8,0.5)")
        sv = vwp6_lhs(self.P)
        assert sv.converged
        assert rel(sv.value, want) < 1e-12
        assert rel(vwp6_rhs(self.P), want) < 1e-12

    def test_duplicated_q(self):
        # e = a/d makes aq/(de) = q
        p = VWP6Params(0.09, 0.7, 0.6, 0.45, 0.2, 0.5)
        assert rel(vwp6_lhs(p).value, vwp6_rhs(p)) < 1e-10

    def test_d_equals_q_is_a_pole(self):
        with pytest.raises(PoleError):
            vwp6_lhs(VWP6Params(0.09, 0.7, 0.6, 0.5, 0.8, 0.5))

    def test_divergent_argument(self):
        with pytest.raises(ConvergenceError):
            vwp6_lhs(VWP6Params(0.9, 0.7, 0.6, 0.45, 0.8, 0.5))
