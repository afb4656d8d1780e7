"""One-dimensional Jackson integrals and their q-difference equations.

Bilateral integrals use the ``d_q z / z`` measure::

    int_0^{xi*inf} f(z) d_q z / z = (1 - q) sum_{nu in Z} f(xi q^nu)

Two families are covered: Askey's integral ``I(xi)`` with integrand
``z^alpha (qz)_inf / (q^beta z)_inf`` and the BC1-type integral ``J(xi)``
with ``Phi(z) Delta(z)``, ``Delta(z) = 1/z - z``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .errors import ConvergenceError, DivisionError, DomainError, PoleError
from .policy import DEFAULT_POLICY, SeriesValue, SumPolicy, check_q
from .qcore import LN2, lattice_power, log_q, qpoch_inf, qpoch_ratio, theta
from .summation import bilateral_sum, site_streams

__all__ = [
    "AskeyParams",
    "BC1Params",
    "jackson_unilateral",
    "jackson_bilateral",
    "askey_integrand",
    "askey_I_sum",
    "askey_I_product",
    "askey_connection_factor",
    "q_beta",
    "recurrence_residual_I",
    "nabla_brackets",
    "nabla_residual",
    "bc1_integrand",
    "bc1_J_sum",
    "bc1_J_product",
    "bc1_constant",
    "bc1_prefactor",
    "bc1_shift_factor",
    "bc1_shift_residual",
    "j6phi5_product",
    "askey_limit_residual",
    "bc1_nu0_dominance",
]


@dataclass(frozen=True)
class AskeyParams:
    alpha: complex
    beta: complex
    xi: complex
    q: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "q", check_q(self.q))
        if self.xi == 0:
            raise DomainError("xi must be nonzero")


@dataclass(frozen=True)
class BC1Params:
    """Four parameters ``a_i = q^{alpha_i}``, base point ``xi`` and base ``q``."""

    a: tuple
    xi: complex
    q: float

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(complex(v) for v in self.a))
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "q", check_q(self.q))
        if len(self.a) != 4:
            raise DomainError("BC1 integrals take exactly four parameters")
        if self.xi == 0 or any(v == 0 for v in self.a):
            raise DomainError("xi and every a_i must be nonzero")

    @property
    def alphas(self) -> tuple:
        return tuple(log_q(v, self.q) for v in self.a)


def _qpow(q: float, s) -> complex:
    return cmath.exp(complex(s) * math.log(q))


def jackson_unilateral(f: Callable, a, q, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    """``int_0^a f(z) d_q z = (1 - q) sum_{nu >= 0} f(a q^nu) a q^nu``."""
    q = check_q(q)
    a = complex(a)

    def pos():
        nu = 0
        while True:
            z = a * q ** nu
            yield nu, (1 - q) * f(z) * z
            nu += 1

    return bilateral_sum(pos(), iter(()), policy, q)


def jackson_bilateral(f: Callable, xi, q, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    """``(1 - q) sum_{nu in Z} f(xi q^nu)`` with two-sided adaptive truncation."""
    q = check_q(q)
    xi = complex(xi)
    if xi == 0:
        raise DomainError("xi must be nonzero")
    return _lattice_sum(lambda nu: f(xi * q ** nu), q, policy)


def _lattice_sum(site: Callable[[int], complex], q: float, policy: SumPolicy) -> SeriesValue:
    scale = 1 - q
    pos, neg = site_streams(lambda nu: scale * site(nu))
    return bilateral_sum(pos, neg, policy, q)


# -- Askey's integral ------------------------------------------------------

def askey_integrand(p: AskeyParams, policy: SumPolicy = DEFAULT_POLICY) -> Callable[[int], complex]:
    """``nu -> Phi(xi q^nu)`` with ``Phi(z) = z^alpha (qz)_inf / (q^beta z)_inf``."""
    qb = _qpow(p.q, p.beta)
    xi, q, alpha = p.xi, p.q, p.alpha

    def site(nu: int) -> complex:
        z = xi * q ** nu
        m, e2 = qpoch_ratio((q * z,), (qb * z,), q, policy, scaled=True)
        if m == 0:
            return 0j
        return lattice_power(xi, nu, alpha, q, e2 * LN2) * m

    return site


def askey_I_sum(p: AskeyParams, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    """Bilateral Jackson sum ``I(xi) = int_0^{xi*inf} z^alpha (qz)_inf/(q^beta z)_inf d_q z/z``."""
    return _lattice_sum(askey_integrand(p, policy), p.q, policy)


def _nonzero(value: complex, what: str, policy: SumPolicy) -> complex:
    if abs(value) < policy.pole_eps:
        raise PoleError(f"{what} vanishes")
    return value


def askey_I_product(p: AskeyParams, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """``C xi^alpha theta(q^{alpha+beta} xi) / theta(q^beta xi)`` with
    ``C = (1-q)(q)_inf (q^{1-beta})_inf / ((q^alpha)_inf (q^{1-alpha-beta})_inf)``."""
    q, a, b, xi = p.q, p.alpha, p.beta, p.xi
    const = (1 - q) * qpoch_ratio((q, _qpow(q, 1 - b)), (_qpow(q, a), _qpow(q, 1 - a - b)), q, policy)
    den = _nonzero(theta(_qpow(q, b) * xi, q, policy), "theta(q^beta xi)", policy)
    return const * lattice_power(xi, 0, a, q) * theta(_qpow(q, a + b) * xi, q, policy) / den


def askey_connection_factor(p: AskeyParams, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """``I(xi) / I(1) = xi^alpha theta(q^{a+b} xi) theta(q^b) / (theta(q^{a+b}) theta(q^b xi))``."""
    q, a, b, xi = p.q, p.alpha, p.beta, p.xi
    qab, qb = _qpow(q, a + b), _qpow(q, b)
    num = lattice_power(xi, 0, a, q) * theta(qab * xi, q, policy) * theta(qb, q, policy)
    den = theta(qab, q, policy) * theta(qb * xi, q, policy)
    return num / _nonzero(den, "connection denominator", policy)


def q_beta(alpha, beta, q, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """q-beta function ``(1-q) (q^{a+b})_inf (q)_inf / ((q^a)_inf (q^b)_inf)``."""
    q = check_q(q)
    alpha, beta = complex(alpha), complex(beta)
    # joint ratio: near q = 1 each infinite product underflows on its own
    return (1 - q) * qpoch_ratio((_qpow(q, alpha + beta), q), (_qpow(q, alpha), _qpow(q, beta)), q, policy)


def recurrence_residual_I(p: AskeyParams, policy: SumPolicy = DEFAULT_POLICY) -> float:
    """Relative residual of ``I(alpha) = (1-q^{alpha+beta})/(1-q^alpha) I(alpha+1)``."""
    q = p.q
    lhs = askey_I_sum(p, policy).value
    if abs(lhs) <= policy.abs_floor:
        raise DivisionError("I(alpha; xi) is zero; relative residual undefined")
    shifted = askey_I_sum(replace(p, alpha=p.alpha + 1), policy).value
    factor = (1 - _qpow(q, p.alpha + p.beta)) / (1 - _qpow(q, p.alpha))
    return abs(lhs - factor * shifted) / abs(lhs)


def nabla_brackets(p: AskeyParams, phi: Callable,
                   policy: SumPolicy = DEFAULT_POLICY) -> tuple[complex, complex]:
    """``(<phi>, <b(z) phi(qz)>)`` for the Askey weight.

    ``<g> = (1-q) sum_nu g(z) Phi(z)`` on the lattice ``z = xi q^nu`` and
    ``b(z) = q^alpha (1 - q^beta z) / (1 - qz)``. Lattice values of ``Phi``
    are cached and shared by the two brackets.
    """
    q, xi = p.q, p.xi
    weight = askey_integrand(p, policy)
    cache: dict[int, complex] = {}
    qa = _qpow(q, p.alpha)
    qb = _qpow(q, p.beta)

    def w(nu):
        if nu not in cache:
            cache[nu] = weight(nu)
        return cache[nu]

    def b(z):
        den = 1 - q * z
        if abs(den) < policy.pole_eps:
            raise PoleError("b(z) has a pole on the lattice")
        return qa * (1 - qb * z) / den

    def plain(nu):
        return phi(xi * q ** nu) * w(nu)

    def shifted(nu):
        z = xi * q ** nu
        return b(z) * phi(q * z) * w(nu)

    return _lattice_sum(plain, q, policy).value, _lattice_sum(shifted, q, policy).value


def nabla_residual(p: AskeyParams, phi: Callable, policy: SumPolicy = DEFAULT_POLICY) -> float:
    """``|<nabla phi>| / (|<phi>| + abs_floor)`` with ``nabla phi(z) = phi(z) - b(z) phi(qz)``.

    The bracket is linear, so ``<nabla phi> = <phi> - <b(z) phi(qz)>``;
    summing the difference directly would give a series whose scale is
    the (vanishing) result itself.
    """
    first, second = nabla_brackets(p, phi, policy)
    return abs(first - second) / (abs(first) + policy.abs_floor)


# -- BC1-type integral -------------------------------------------------------

def bc1_integrand(p: BC1Params, policy: SumPolicy = DEFAULT_POLICY) -> Callable[[int], complex]:
    """``nu -> Phi(z) Delta(z)`` at ``z = xi q^nu``.

    ``Phi(z) = prod_i z^{1/2 - alpha_i} (qz/a_i)_inf / (z a_i)_inf``; the four
    power factors are merged into ``z^{2 - sum alpha_i}`` before evaluation.
    """
    xi, q, a = p.xi, p.q, p.a
    expo = 2 - sum(p.alphas)
    nums = tuple(q / ai for ai in a)

    def site(nu: int) -> complex:
        z = xi * q ** nu
        m, e2 = qpoch_ratio(tuple(c * z for c in nums), tuple(ai * z for ai in a), q, policy, scaled=True)
        if m == 0:
            return 0j
        # 1/z - z folded into the power so neither side overflows
        if abs(z) <= 1:
            return lattice_power(xi, nu, expo - 1, q, e2 * LN2) * m * (1 - z * z)
        return -lattice_power(xi, nu, expo + 1, q, e2 * LN2) * m * (1 - (1 / z) ** 2)

    return site


def bc1_J_sum(p: BC1Params, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    """``J(xi) = int_0^{xi*inf} Phi(z) Delta(z) d_q z / z`` as a bilateral sum."""
    return _lattice_sum(bc1_integrand(p, policy), p.q, policy)


def bc1_constant(a: Sequence, q, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """The xi-independent constant of the theta-quotient form of ``J(xi)``.

    The usual closed form of this constant is normalised for a theta function
    without the ``(q)_inf`` factor. With the ``theta`` used here (which
    includes it) the quotient carries ``(q)_inf^{-3}``, compensated by the
    trailing ``(q)_inf**3``.
    """
    q = check_q(q)
    a = [complex(v) for v in a]
    qq = qpoch_inf(q, q, policy)
    const = (1 - q) * qq
    for i in range(4):
        for j in range(i + 1, 4):
            const *= qpoch_inf(q / (a[i] * a[j]), q, policy)
    prod = a[0] * a[1] * a[2] * a[3]
    const /= _nonzero(qpoch_inf(q / prod, q, policy), "(q/a1a2a3a4)_inf", policy)
    return const * qq ** 3


def bc1_J_product(p: BC1Params, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """``C xi theta(xi^2) / prod_m xi^{alpha_m} theta(a_m xi)``."""
    xi, q = p.xi, p.q
    den = lattice_power(xi, 0, sum(p.alphas), q)
    for am in p.a:
        den *= _nonzero(theta(am * xi, q, policy), "theta(a_m xi)", policy)
    return bc1_constant(p.a, q, policy) * xi * theta(xi * xi, q, policy) / den


def j6phi5_product(a: Sequence, q, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """Closed form of ``J(a_1)``, the one-sided sum at ``xi = a_1``.

    ``(1-q) a1^{1-sum alpha} (q)_inf prod_{2<=i<j<=4} (q/a_i a_j)_inf
    / ((q/a1a2a3a4)_inf prod_{k>=2} (a1 a_k)_inf)``
    """
    q = check_q(q)
    a = [complex(v) for v in a]
    if len(a) != 4:
        raise DomainError("need exactly four parameters")
    total_alpha = sum(log_q(v, q) for v in a)
    val = (1 - q) * lattice_power(a[0], 0, 1 - total_alpha, q) * qpoch_inf(q, q, policy)
    for i in range(1, 4):
        for j in range(i + 1, 4):
            val *= qpoch_inf(q / (a[i] * a[j]), q, policy)
    prod = a[0] * a[1] * a[2] * a[3]
    val /= _nonzero(qpoch_inf(q / prod, q, policy), "(q/a1a2a3a4)_inf", policy)
    for k in range(1, 4):
        val /= _nonzero(qpoch_inf(a[0] * a[k], q, policy), "(a1 a_k)_inf", policy)
    return val


def bc1_prefactor(p: BC1Params, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """Factor turning ``J(xi)`` into the very-well-poised 6psi6 with
    ``sqrt(a) = xi`` and ``(b, c, d, e) = (a_1 xi, ..., a_4 xi)``::

        xi^{sum alpha - 1} / ((1-q)(1-xi^2)) prod_i (a_i xi)_inf / (q xi / a_i)_inf
    """
    xi, q = p.xi, p.q
    if abs(1 - xi * xi) < policy.pole_eps:
        raise PoleError("prefactor is singular at xi = +-1")
    val = lattice_power(xi, 0, sum(p.alphas) - 1, q) / ((1 - q) * (1 - xi * xi))
    return val * qpoch_ratio(tuple(ai * xi for ai in p.a), tuple(q * xi / ai for ai in p.a), q, policy)


def bc1_shift_factor(a: Sequence, i: int) -> complex:
    """``-prod_k (1 - a_i a_k) / (a_i (1 - a_i^2)(1 - a1a2a3a4))`` for ``i`` in 1..4."""
    a = [complex(v) for v in a]
    ai = a[i - 1]
    num = 1 + 0j
    for ak in a:
        num *= 1 - ai * ak
    return -num / (ai * (1 - ai * ai) * (1 - a[0] * a[1] * a[2] * a[3]))


def bc1_shift_residual(p: BC1Params, i: int, policy: SumPolicy = DEFAULT_POLICY) -> float:
    """Relative residual of ``J(a_i -> q a_i) = shift_factor * J``."""
    if i not in (1, 2, 3, 4):
        raise DomainError("i must be 1, 2, 3 or 4")
    shifted_a = list(p.a)
    shifted_a[i - 1] *= p.q
    lhs = bc1_J_sum(replace(p, a=tuple(shifted_a)), policy).value
    rhs = bc1_shift_factor(p.a, i) * bc1_J_sum(p, policy).value
    if abs(lhs) <= policy.abs_floor:
        raise DivisionError("shifted J(xi) is zero; relative residual undefined")
    return abs(lhs - rhs) / abs(lhs)


def askey_limit_residual(alpha, beta, q, N: int, policy: SumPolicy = DEFAULT_POLICY) -> float:
    """Relative gap between ``I(alpha + N; 1)`` and its large-N limit
    ``(1-q)(q)_inf/(q^beta)_inf``, which is the ``nu = 0`` term alone."""
    q = check_q(q)
    p = AskeyParams(complex(alpha) + N, beta, 1.0, q)
    val = askey_I_sum(p, policy).value
    limit = ((1 - q) * qpoch_inf(q, q, policy)
             / _nonzero(qpoch_inf(_qpow(q, beta), q, policy), "(q^beta)_inf", policy))
    return abs(val - limit) / abs(limit)


def bc1_nu0_dominance(a: Sequence, q, N: int, policy: SumPolicy = DEFAULT_POLICY) -> float:
    """Relative gap between ``J(a_1)`` and its ``nu = 0`` term after
    ``a_1 -> a_1 q^{2N}`` and ``a_k -> a_k q^{-N}`` (k = 2, 3, 4)."""
    q = check_q(q)
    a = [complex(v) for v in a]
    moved = (a[0] * q ** (2 * N),) + tuple(v * q ** -N for v in a[1:])
    p = BC1Params(moved, moved[0], q)
    total = bc1_J_sum(p, policy).value
    lead = (1 - q) * bc1_integrand(p, policy)(0)
    if abs(total) <= policy.abs_floor:
        raise DivisionError("J(a_1) is zero; relative gap undefined")
    return abs(total - lead) / abs(total)
