"""Bilateral basic hypergeometric series and their product evaluations."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ConvergenceError, PoleError
from .policy import DEFAULT_POLICY, SeriesValue, SumPolicy, check_q
from .qcore import qpoch_inf
from .summation import bilateral_sum

__all__ = [
    "PsiParams",
    "VWP6Params",
    "ConvergenceReport",
    "converges",
    "sum_rpsir",
    "rpsir_term",
    "rpsir_recurrence_terms",
    "product_1psi1",
    "vwp6_psi_params",
    "vwp6_lhs",
    "vwp6_rhs",
]

#: Terms between from-scratch resynchronisations of the recurrence.
AUDIT_EVERY = 64


@dataclass(frozen=True)
class PsiParams:
    """Numerators ``a``, denominators ``b`` (equal length r), argument ``x``, base ``q``."""

    a: tuple
    b: tuple
    x: complex
    q: float

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(complex(v) for v in self.a))
        object.__setattr__(self, "b", tuple(complex(v) for v in self.b))
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "q", check_q(self.q))
        if len(self.a) != len(self.b):
            raise ValueError("a and b must have the same length")

    @property
    def r(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class VWP6Params:
    """Very-well-poised 6psi6 parameters; the argument is fixed to ``a^2 q/(bcde)``."""

    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    q: float

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "q", check_q(self.q))

    @property
    def x(self) -> complex:
        return self.a * self.a * self.q / (self.b * self.c * self.d * self.e)


class ConvergenceReport(NamedTuple):
    ok: bool
    inner_margin: float
    outer_margin: float

    def __bool__(self):
        return self.ok


def converges(params: PsiParams) -> ConvergenceReport:
    """Check ``|b_1...b_r / a_1...a_r| < |x| < 1``.

    ``inner_margin`` is ``|x| - |prod b / prod a|`` and ``outer_margin`` is
    ``1 - |x|``; both must be strictly positive.
    """
    num = 1 + 0j
    den = 1 + 0j
    for v in params.a:
        num *= v
    for v in params.b:
        den *= v
    ax = abs(params.x)
    ratio = math.inf if num == 0 else abs(den / num)
    inner = ax - ratio
    outer = 1.0 - ax
    return ConvergenceReport(inner > 0 and outer > 0, inner, outer)


def rpsir_term(params: PsiParams, nu: int, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """The ``nu``-th term ``(a)_nu / (b)_nu x^nu`` recomputed from scratch.

    Factors are paired per ``l`` (with one power of ``x`` each) so that the
    product stays representable when its pieces would overflow.
    """
    q, x, eps = params.q, params.x, policy.pole_eps
    nu = int(nu)
    term = 1 + 0j
    if nu >= 0:
        for l in range(nu):
            ql = q ** l
            step = x
            for ai, bi in zip(params.a, params.b):
                fd = 1 - bi * ql
                if abs(fd) < eps:
                    raise PoleError(f"(b;q)_{nu} vanishes at l={l}", site=l)
                step *= (1 - ai * ql) / fd
            term *= step
        return term
    for l in range(nu, 0):
        ql = q ** l
        step = 1 / x
        for ai, bi in zip(params.a, params.b):
            fd = 1 - ai * ql
            if abs(fd) < eps:
                raise PoleError(f"(a;q)_{nu} has a pole at l={l}", site=l)
            step *= (1 - bi * ql) / fd
        term *= step
    return term


def rpsir_recurrence_terms(params: PsiParams, direction: int, policy: SumPolicy = DEFAULT_POLICY,
                           audit: bool = True):
    """Yield ``(nu, term)`` along ``direction`` (+1 from 0, -1 from -1) using the term ratio.

    Every :data:`AUDIT_EVERY` terms the running term is replaced by its
    from-scratch value when that value is representable, which bounds drift.
    A numerator factor within ``pole_eps`` of zero ends the stream: all
    further terms vanish identically.
    """
    a, b, x, q = params.a, params.b, params.x, params.q
    eps = policy.pole_eps
    if direction > 0:
        nu, term = 0, 1 + 0j
        while True:
            yield nu, term
            ql = q ** nu
            ratio = x
            for ai, bi in zip(a, b):
                fn = 1 - ai * ql
                fd = 1 - bi * ql
                if abs(fd) < eps:
                    raise PoleError(f"denominator factor 1 - b q^{nu} vanishes", site=nu + 1)
                if abs(fn) < eps:
                    return
                # pairwise quotients keep large factors from overflowing
                ratio *= fn / fd
            term = term * ratio
            nu += 1
            if audit and nu % AUDIT_EVERY == 0:
                term = _resync(params, nu, term, policy)
    else:
        nu, term = 0, 1 + 0j
        while True:
            ql = q ** (nu - 1)
            ratio = 1 / x
            for ai, bi in zip(a, b):
                fn = 1 - bi * ql
                fd = 1 - ai * ql
                if abs(fd) < eps:
                    raise PoleError(f"numerator parameter gives a pole at nu={nu - 1}", site=nu - 1)
                if abs(fn) < eps:
                    return
                ratio *= fn / fd
            term = term * ratio
            nu -= 1
            if audit and (-nu) % AUDIT_EVERY == 0:
                term = _resync(params, nu, term, policy)
            yield nu, term


def _resync(params, nu, term, policy):
    try:
        fresh = rpsir_term(params, nu, policy)
    except (PoleError, OverflowError, ZeroDivisionError):
        return term
    if fresh == 0 or not (cmath.isfinite(fresh)):
        return term
    return fresh


def sum_rpsir(params: PsiParams, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    """Evaluate the bilateral series ``sum_nu (a)_nu/(b)_nu x^nu``.

    Raises :class:`ConvergenceError` outside the annulus of absolute
    convergence and :class:`PoleError` when a term is singular.
    """
    report = converges(params)
    pos_ends, neg_ends = _terminating_sides(params, policy)
    inner_ok = report.inner_margin > 0 or neg_ends
    outer_ok = report.outer_margin > 0 or pos_ends
    if not (inner_ok and outer_ok):
        raise ConvergenceError(
            f"outside the convergence annulus (margins {report.inner_margin:.3g}, "
            f"{report.outer_margin:.3g})")
    return bilateral_sum(rpsir_recurrence_terms(params, +1, policy),
                         rpsir_recurrence_terms(params, -1, policy),
                         policy, params.q)


def _terminating_sides(params: PsiParams, policy: SumPolicy):
    """Whether the positive / negative stream is cut off by a vanishing numerator.

    ``a_i = q^-k`` (k >= 0) zeroes every term past ``nu = k``; ``b_i = q^k``
    (k >= 1) zeroes every term below ``nu = 1 - k``.
    """
    q = params.q
    lq = math.log(q)

    def power_of_q(u):
        # integer k with u == q^k (to pole_eps on 1 - u q^-k), else None
        if u == 0 or u.imag != 0 or u.real <= 0:
            return None
        k = round(math.log(u.real) / lq)
        return k if abs(1 - u.real * q ** -k) < policy.pole_eps else None

    pos = any((k := power_of_q(ai)) is not None and k <= 0 for ai in params.a)
    neg = any((k := power_of_q(bi)) is not None and k >= 1 for bi in params.b)
    return pos, neg


def _ratio_of_products(nums: Sequence, dens: Sequence, q, policy: SumPolicy) -> complex:
    num = 1 + 0j
    for u in nums:
        num *= qpoch_inf(u, q, policy)
    den = 1 + 0j
    for u in dens:
        f = qpoch_inf(u, q, policy)
        if abs(f) < policy.pole_eps:
            raise PoleError(f"denominator product ({u!r}; q)_inf vanishes")
        den *= f
    return num / den


def product_1psi1(a, b, x, q, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """Closed form ``(ax, q, b/a, q/ax)_inf / (x, b, q/a, b/ax)_inf`` of the 1psi1 sum."""
    q = check_q(q)
    a, b, x = complex(a), complex(b), complex(x)
    if a == 0 or x == 0:
        raise PoleError("a and x must be nonzero")
    nums = (a * x, q, b / a, q / (a * x))
    dens = (x, b, q / a, b / (a * x))
    return _ratio_of_products(nums, dens, q, policy)


def vwp6_psi_params(params: VWP6Params) -> PsiParams:
    """The r = 6 series parameters of the very-well-poised sum.

    Uses the principal square root of ``a``; the pair ``(sqrt a, -sqrt a)``
    enters symmetrically so the branch choice does not affect the sum.
    """
    a, q = params.a, params.q
    s = cmath.sqrt(a)
    nums = (q * s, -q * s, params.b, params.c, params.d, params.e)
    dens = (s, -s, a * q / params.b, a * q / params.c, a * q / params.d, a * q / params.e)
    return PsiParams(nums, dens, params.x, q)


def vwp6_lhs(params: VWP6Params, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    if not abs(params.x) < 1:
        raise ConvergenceError(f"|a^2 q/(bcde)| = {abs(params.x):.6g} is not below 1")
    return sum_rpsir(vwp6_psi_params(params), policy)


def vwp6_rhs(params: VWP6Params, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """Bailey's 9-over-9 product for the very-well-poised 6psi6."""
    a, b, c, d, e, q = params.a, params.b, params.c, params.d, params.e, params.q
    aq = a * q
    nums = (aq, aq / (b * c), aq / (b * d), aq / (b * e), aq / (c * d), aq / (c * e), aq / (d * e),
            q, q / a)
    dens = (aq / b, aq / c, aq / d, aq / e, q / b, q / c, q / d, q / e, params.x)
    return _ratio_of_products(nums, dens, q, policy)
