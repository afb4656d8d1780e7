"""q-shifted factorials, the theta function and real log-gamma.

All products run over ``l = 0, 1, 2, ...`` in that order and are truncated
once ``|u q^l|`` has stayed below the policy's product tolerance for
``consecutive_small`` successive factors.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError
from .policy import DEFAULT_POLICY, SumPolicy, check_q

_LO = 2.0 ** -512
_HI = 2.0 ** 512
LN2 = math.log(2.0)

__all__ = [
    "qpoch_inf",
    "qpoch_fin",
    "qpoch_multi",
    "qpoch_ratio",
    "qpoch_ratio_array",
    "qpoch_fin_array",
    "theta",
    "log_gamma_real",
    "log_q",
    "lattice_power",
    "lattice_power_array",
]


def qpoch_inf(u, q, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """Infinite q-shifted factorial ``(u; q)_inf = prod_{l>=0} (1 - u q^l)``."""
    q = check_q(q)
    u = complex(u)
    if u == 0:
        return 1 + 0j
    tol = policy.product_tol
    prod = 1 + 0j
    small = 0
    for l in range(policy.max_terms):
        uq = u * q ** l
        prod *= 1 - uq
        if abs(uq) < tol:
            small += 1
            if small >= policy.consecutive_small:
                return prod
        else:
            small = 0
    raise ConvergenceError(f"(u;q)_inf did not settle within {policy.max_terms} factors",
                           index=policy.max_terms)


def qpoch_fin(u, q, nu: int, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """Finite q-shifted factorial ``(u; q)_nu`` for any integer ``nu``.

    Negative orders use ``(u)_nu = 1 / prod_{l=nu}^{-1} (1 - u q^l)``.
    """
    q = check_q(q)
    u = complex(u)
    nu = int(nu)
    if nu >= 0:
        prod = 1 + 0j
        for l in range(nu):
            prod *= 1 - u * q ** l
        return prod
    den = 1 + 0j
    for l in range(nu, 0):
        f = 1 - u * q ** l
        if abs(f) < policy.pole_eps:
            raise PoleError(f"(u;q)_{nu} has a pole: 1 - u q^{l} = {f!r}", site=l)
        den *= f
    return 1 / den


def qpoch_multi(us: Sequence, q, nu: int, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """``(u_1, ..., u_r; q)_nu``: the product of :func:`qpoch_fin` over ``us``."""
    prod = 1 + 0j
    for u in us:
        prod *= qpoch_fin(u, q, nu, policy)
    return prod


def qpoch_ratio(nums: Sequence, dens: Sequence, q, policy: SumPolicy = DEFAULT_POLICY,
                scaled: bool = False):
    """``prod_i (n_i; q)_inf / prod_j (d_j; q)_inf`` evaluated factor by factor.

    Numerator and denominator factors of the same ``l`` are combined before
    multiplying into the running product, so the ratio stays representable
    when the individual infinite products would overflow (large ``|u|``).

    With ``scaled=True`` the result is ``(m, e)`` with ratio ``m * 2**e``;
    the running product is renormalised whenever it leaves
    ``[2**-512, 2**512]``, so ratios far outside the binary64 range survive
    until a caller folds ``e`` into a compensating power.

    A numerator factor within ``pole_eps`` of zero makes the result exactly
    zero; a denominator factor within ``pole_eps`` raises :class:`PoleError`.
    """
    q = check_q(q)
    nums = [complex(u) for u in nums]
    dens = [complex(u) for u in dens]
    tol = policy.product_tol
    eps = policy.pole_eps
    prod = 1 + 0j
    e2 = 0
    zero = False
    small = 0
    width = max(len(nums), len(dens))
    for l in range(policy.max_terms):
        ql = q ** l
        biggest = 0.0
        for i in range(width):
            if i < len(nums):
                un = nums[i] * ql
                fn = 1 - un
                if abs(fn) < eps:
                    zero = True
                    fn = 1.0
                biggest = max(biggest, abs(un))
            else:
                fn = 1.0
            if i < len(dens):
                ud = dens[i] * ql
                fd = 1 - ud
                if abs(fd) < eps:
                    raise PoleError(f"denominator factor 1 - {dens[i]!r} q^{l} vanishes", site=l)
                biggest = max(biggest, abs(ud))
            else:
                fd = 1.0
            prod *= fn / fd
        mag = abs(prod)
        if not _LO < mag < _HI and mag != 0:
            shift = math.frexp(mag)[1]
            prod = complex(math.ldexp(prod.real, -shift), math.ldexp(prod.imag, -shift))
            e2 += shift
        if biggest < tol:
            small += 1
            if small >= policy.consecutive_small:
                if zero:
                    return (0j, 0) if scaled else 0j
                if scaled:
                    return prod, e2
                return complex(math.ldexp(prod.real, e2), math.ldexp(prod.imag, e2)) if e2 else prod
        else:
            small = 0
    raise ConvergenceError(f"q-Pochhammer ratio did not settle within {policy.max_terms} factors",
                           index=policy.max_terms)


def qpoch_ratio_array(cnum, cden, z, q, policy: SumPolicy = DEFAULT_POLICY, scaled: bool = False):
    """Vectorised ``(cnum z; q)_inf / (cden z; q)_inf`` over an array ``z``.

    Returns ``(values, poles)``: ``poles`` is a boolean mask of entries where
    a denominator factor vanished (their value is set to NaN); numerator
    zeros give exact zeros. Nothing is raised here so that callers can
    decide whether a pole is actually visited. With ``scaled=True`` a third
    array ``e`` of binary exponents is returned (ratio ``values * 2**e``),
    as in :func:`qpoch_ratio`.
    """
    q = check_q(q)
    z = np.asarray(z, dtype=complex)
    un = complex(cnum) * z
    ud = complex(cden) * z
    val = np.ones(z.shape, dtype=complex)
    zero = np.zeros(z.shape, dtype=bool)
    pole = np.zeros(z.shape, dtype=bool)
    e2 = np.zeros(z.shape, dtype=np.int64)
    tol = policy.product_tol
    eps = policy.pole_eps
    small = 0
    l = 0
    while True:
        ql = q ** l
        a = un * ql
        b = ud * ql
        fn = 1 - a
        fd = 1 - b
        zn = np.abs(fn) < eps
        zd = np.abs(fd) < eps
        zero |= zn
        pole |= zd
        fn = np.where(zn, 1.0, fn)
        fd = np.where(zd, 1.0, fd)
        val *= fn / fd
        mag = np.abs(val)
        out = (mag != 0) & ((mag < _LO) | (mag > _HI))
        if np.any(out):
            shift = np.where(out, np.frexp(np.where(out, mag, 1.0))[1], 0)
            val = np.ldexp(val.real, -shift) + 1j * np.ldexp(val.imag, -shift)
            e2 += shift
        biggest = max(float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
        if biggest < tol:
            small += 1
            if small >= policy.consecutive_small:
                break
        else:
            small = 0
        l += 1
        if l >= policy.max_terms:
            raise ConvergenceError("vectorised q-Pochhammer ratio did not settle",
                                   index=policy.max_terms)
    val[zero] = 0
    val[pole] = np.nan
    if scaled:
        e2[zero | pole] = 0
        return val, pole, e2
    if np.any(e2):
        val = np.ldexp(val.real, e2) + 1j * np.ldexp(val.imag, e2)
    return val, pole


def qpoch_fin_array(c, w, q, k: int, policy: SumPolicy = DEFAULT_POLICY):
    """Vectorised finite product ``(c w; q)_k`` for ``k >= 0``; factors within
    ``pole_eps`` of zero are set to exact zero."""
    w = np.asarray(w, dtype=complex)
    val = np.ones(w.shape, dtype=complex)
    for l in range(int(k)):
        f = 1 - complex(c) * q ** l * w
        f = np.where(np.abs(f) < policy.pole_eps, 0.0, f)
        val *= f
    return val


def theta(z, q, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """``theta(z) = (z)_inf (q/z)_inf (q)_inf``; vanishes on ``z in q^Z``."""
    q = check_q(q)
    z = complex(z)
    if z == 0:
        raise DomainError("theta(z) is undefined at z = 0")
    return qpoch_inf(z, q, policy) * qpoch_inf(q / z, q, policy) * qpoch_inf(q, q, policy)


def log_gamma_real(x) -> float:
    """Natural log of the Euler gamma function for real ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma_real needs x > 0, got {x!r}")
    return math.lgamma(x)


def log_q(a, q) -> complex:
    """Principal ``log_q a = Log(a) / log(q)``, i.e. the exponent with ``q^alpha = a``."""
    a = complex(a)
    if a == 0:
        raise DomainError("log_q(0) is undefined")
    return cmath.log(a) / math.log(check_q(q))


def lattice_power(xi, nu, e, q, log_scale: float = 0.0) -> complex:
    """Principal power ``(xi q^nu)^e``, optionally times ``exp(log_scale)``.

    Multiplying by the positive real ``q^nu`` leaves the argument of ``xi``
    unchanged, so the principal branch gives ``exp(e (Log xi + nu log q))``
    exactly. ``log_scale`` lets callers fold a scale factor (for instance
    the binary exponent of a scaled ratio) into the same exponential.
    """
    xi = complex(xi)
    if xi == 0:
        raise DomainError("lattice base point must be nonzero")
    return cmath.exp(complex(e) * (cmath.log(xi) + nu * math.log(q)) + log_scale)


def lattice_power_array(xi, nus, e, q):
    nus = np.asarray(nus, dtype=float)
    return np.exp(complex(e) * (cmath.log(complex(xi)) + nus * math.log(q)))

