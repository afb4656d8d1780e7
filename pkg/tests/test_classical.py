import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import rel
from qpsi import DAParams, DomainError, SelbergParams, beta_integral, da_product, selberg_product
from qpsi.classical import quad_oracle

pos = st.floats(0.2, 5.0)


class TestBeta:
    def test_examples(self):
        assert rel(beta_integral(1, 1), 1) < 1e-15
        assert rel(beta_integral(2, 1), 0.5) < 1e-15
        assert rel(beta_integral(0.5, 0.5), math.pi) < 1e-14

    @given(a=pos, b=pos)
    @settings(max_examples=50, deadline=None)
    def test_symmetry_and_recurrence(self, a, b):
        assert rel(beta_integral(a, b), beta_integral(b, a)) < 1e-14
        # B(a+1, b) = a/(a+b) B(a, b)
        assert rel(beta_integral(a + 1, b), a / (a + b) * beta_integral(a, b)) < 1e-13

    def test_large_arguments_do_not_overflow(self):
        v = beta_integral(300.0, 400.0)
        assert 0 < v < 1e-200


class TestSelberg:
    @given(a=pos, b=pos, t=pos)
    @settings(max_examples=50, deadline=None)
    def test_n1_is_beta(self, a, b, t):
        assert rel(selberg_product(SelbergParams(1, a, b, t)), beta_integral(a, b)) < 1e-12

    def test_sixth(self):
        assert abs(selberg_product(SelbergParams(2, 1, 1, 1)) - 1 / 6) < 1e-12

    def test_half_tau_quadrature(self):
        p = SelbergParams(2, 1, 1, 0.5)
        assert rel(quad_oracle("selberg", p), selberg_product(p)) < 1e-6

    def test_singular_endpoints_quadrature(self):
        p = SelbergParams(2, 0.6, 0.8, 0.3)
        assert rel(quad_oracle("selberg", p), selberg_product(p)) < 1e-6

    def test_domain(self):
        with pytest.raises(DomainError):
            SelbergParams(2, -1, 1, 1)
        with pytest.raises(DomainError):
            SelbergParams(0, 1, 1, 1)


class TestDixonAnderson:
    def test_unit_interval(self):
        assert rel(da_product(DAParams(1, (0, 1), (1, 1))), 1) < 1e-15

    @given(s0=pos, s1=pos)
    @settings(max_examples=30, deadline=None)
    def test_n1_is_beta(self, s0, s1):
        assert rel(da_product(DAParams(1, (0, 1), (s0, s1))), beta_integral(s0, s1)) < 1e-12

    def test_n2_quadrature(self):
        p = DAParams(2, (0, 1, 2), (1, 1, 1))
        assert rel(quad_oracle("dixon_anderson", p), da_product(p)) < 1e-6

    def test_n2_singular_quadrature(self):
        p = DAParams(2, (-0.5, 0.7, 2.0), (0.6, 1.4, 0.8))
        assert rel(quad_oracle("dixon_anderson", p), da_product(p)) < 1e-6

    def test_oracle_n1(self):
        assert rel(quad_oracle("selberg", SelbergParams(1, 1, 1, 0.7)), 1) < 1e-10
        assert rel(quad_oracle("dixon_anderson", DAParams(1, (0, 1), (2, 1))), 0.5) < 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            DAParams(2, (0, 2, 1), (1, 1, 1))
        with pytest.raises(DomainError):
            quad_oracle("selberg", SelbergParams(3, 1, 1, 1))
        with pytest.raises(DomainError):
            quad_oracle("cauchy", SelbergParams(1, 1, 1, 1))
