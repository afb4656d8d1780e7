"""Classical (q = 1) reference values: Euler beta, Selberg and Dixon-Anderson.

Gamma products are formed in log space with :func:`math.lgamma`.
:func:`quad_oracle` integrates the integral sides for ``n <= 2`` with
``scipy.integrate.quad``; it is a test utility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from .errors import DomainError, QuadratureError
from .qcore import log_gamma_real

__all__ = [
    "SelbergParams",
    "DAParams",
    "beta_integral",
    "selberg_product",
    "da_product",
    "quad_oracle",
]


@dataclass(frozen=True)
class SelbergParams:
    n: int
    alpha: float
    beta: float
    tau: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be positive")
        for name in ("alpha", "beta", "tau"):
            v = float(getattr(self, name))
            if not v > 0:
                raise DomainError(f"{name} must be positive, got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class DAParams:
    """Ordered points ``x_0 < ... < x_n`` and exponents ``s_0, ..., s_n > 0``."""

    n: int
    x: tuple
    s: tuple

    def __post_init__(self):
        x = tuple(float(v) for v in self.x)
        s = tuple(float(v) for v in self.s)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "s", s)
        if self.n < 1:
            raise DomainError("n must be positive")
        if len(x) != self.n + 1 or len(s) != self.n + 1:
            raise DomainError(f"x and s need n+1={self.n + 1} entries")
        if any(b <= a for a, b in zip(x, x[1:])):
            raise DomainError("x must be strictly increasing")
        if any(not v > 0 for v in s):
            raise DomainError("s entries must be positive")


def beta_integral(alpha, beta) -> float:
    """``Gamma(alpha) Gamma(beta) / Gamma(alpha + beta)``."""
    return math.exp(log_gamma_real(alpha) + log_gamma_real(beta) - log_gamma_real(alpha + beta))


def selberg_product(p: SelbergParams) -> float:
    n, a, b, t = p.n, p.alpha, p.beta, p.tau
    total = 0.0
    for j in range(1, n + 1):
        total += (log_gamma_real(t * j + 1) + log_gamma_real(a + (n - j) * t)
                  + log_gamma_real(b + (n - j) * t) - log_gamma_real(t + 1)
                  - log_gamma_real(a + b + (n + j - 2) * t))
    return math.exp(total)


def da_product(p: DAParams) -> float:
    total = sum(log_gamma_real(v) for v in p.s) - log_gamma_real(sum(p.s))
    for i in range(p.n + 1):
        for j in range(i + 1, p.n + 1):
            total += (p.s[i] + p.s[j] - 1) * math.log(p.x[j] - p.x[i])
    return math.exp(total)


def _quad(f, lo, hi, wvar, rel_tol):
    from scipy import integrate

    val, err = integrate.quad(f, lo, hi, weight="alg", wvar=wvar,
                              epsabs=0.0, epsrel=rel_tol, limit=200)
    if not math.isfinite(val) or err > 10 * rel_tol * abs(val) + 1e-300:
        raise QuadratureError(f"quadrature error estimate {err:.3g} exceeds tolerance for value {val:.6g}")
    return val


def _selberg_quad(p: SelbergParams, rel_tol: float) -> float:
    a, b, t = p.alpha, p.beta, p.tau
    inner_tol = rel_tol * 1e-2
    if p.n == 1:
        return _quad(lambda z: 1.0, 0.0, 1.0, (a - 1, b - 1), rel_tol)

    def inner(z2):
        if z2 <= 0.0:
            return _quad(lambda z1: 1.0, 0.0, 1.0, (a - 1 + 2 * t, b - 1), inner_tol)
        if z2 >= 1.0:
            return _quad(lambda z1: 1.0, 0.0, 1.0, (a - 1, b - 1 + 2 * t), inner_tol)
        # split at z1 = z2 so |z2 - z1|^{2 tau} becomes an endpoint weight
        left = _quad(lambda z1: (1 - z1) ** (b - 1), 0.0, z2, (a - 1, 2 * t), inner_tol)
        right = _quad(lambda z1: z1 ** (a - 1), z2, 1.0, (2 * t, b - 1), inner_tol)
        return left + right

    return _quad(inner, 0.0, 1.0, (a - 1, b - 1), rel_tol)


def _da_quad(p: DAParams, rel_tol: float) -> float:
    x, s = p.x, p.s
    inner_tol = rel_tol * 1e-2
    if p.n == 1:
        return _quad(lambda z: 1.0, x[0], x[1], (s[0] - 1, s[1] - 1), rel_tol)

    def inner(z2):
        return _quad(lambda z1: (x[2] - z1) ** (s[2] - 1) * (z2 - z1),
                     x[0], x[1], (s[0] - 1, s[1] - 1), inner_tol)

    return _quad(lambda z2: (z2 - x[0]) ** (s[0] - 1) * inner(z2),
                 x[1], x[2], (s[1] - 1, s[2] - 1), rel_tol)


def quad_oracle(kind: str, params, rel_tol: float = 1e-8) -> float:
    """Adaptive quadrature of the Selberg (``kind="selberg"``) or
    Dixon-Anderson (``kind="dixon_anderson"``) integral for ``n <= 2``.

    Endpoint singularities are absorbed into algebraic quadrature weights.
    """
    if params.n > 2:
        raise DomainError("quad_oracle supports n <= 2 only")
    if kind == "selberg":
        if not isinstance(params, SelbergParams):
            raise DomainError("selberg oracle needs SelbergParams")
        return _selberg_quad(params, rel_tol)
    if kind == "dixon_anderson":
        if not isinstance(params, DAParams):
            raise DomainError("dixon_anderson oracle needs DAParams")
        return _da_quad(params, rel_tol)
    raise DomainError(f"unknown integral kind {kind!r}")
