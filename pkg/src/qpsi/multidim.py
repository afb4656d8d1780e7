"""n-dimensional bilateral Jackson integrals over Z^n.

Two families share one lattice kernel:

* the A-type integral ``I~(xi)`` with weight
  ``(z_1...z_n)^alpha prod_{i,j} (q z_i/a_j)_inf/(b_j z_i)_inf
  prod_{k<l} z_k^{2tau-1} (q^{1-tau} z_l/z_k)_inf/(q^tau z_l/z_k)_inf (z_k - z_l)``;
* the BC-type integral ``J~(xi)`` with weight ``Phi~(z) Delta~(z)``.

Both summands factor into per-axis pieces (functions of one ``nu_i``) and
pair pieces (functions of ``nu_l - nu_k`` or ``nu_j + nu_k``). Those pieces
are tabulated once per index and combined per lattice site, so each site
costs a handful of multiplications. The z-powers are merged into one
exponent per axis:

* A-type axis ``k`` (1-based) carries ``z_k^{alpha + 2 tau (n-k)}`` and each
  pair ``k<l`` contributes ``H(z_l/z_k)``;
* BC-type axis ``j`` carries ``z_j^{s - sum alpha_m - 2 tau (n-j)} (1 - z_j^2)``
  and each pair ``j<k`` contributes ``H(z_j/z_k) H(z_j z_k)``;

where ``H(w) = (1 - w) (q^{1-tau} w)_inf / (q^tau w)_inf``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError
from .policy import DEFAULT_POLICY, SeriesValue, SumPolicy, check_q, fsum_complex
from .qcore import (LN2, lattice_power, log_q, qpoch_fin_array, qpoch_inf, qpoch_ratio,
                    qpoch_ratio_array, theta)
from .summation import warmup_steps

__all__ = [
    "ATypeParams",
    "BCTypeParams",
    "LatticeWindow",
    "shell_indices",
    "lattice_shell_sum",
    "atype_summand",
    "atype_sum",
    "aomoto_product",
    "mg_product",
    "selberg_spec_xi",
    "da_spec_params",
    "atype_alternating_sum",
    "atype_m2_xi_family",
    "bctype_summand",
    "bctype_sum",
]


def _cplx_tuple(values) -> tuple:
    return tuple(complex(v) for v in values)


@dataclass(frozen=True)
class ATypeParams:
    n: int
    m: int
    alpha: complex
    tau: complex
    a: tuple
    b: tuple
    xi: tuple
    q: float

    def __post_init__(self):
        for name in ("a", "b", "xi"):
            object.__setattr__(self, name, _cplx_tuple(getattr(self, name)))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "q", check_q(self.q))
        if self.n < 1 or self.m < 1:
            raise DomainError("n and m must be positive")
        if len(self.a) != self.m or len(self.b) != self.m:
            raise DomainError(f"a and b need m={self.m} entries")
        if len(self.xi) != self.n:
            raise DomainError(f"xi needs n={self.n} entries")
        if any(v == 0 for v in self.a + self.b + self.xi):
            raise DomainError("a, b and xi entries must be nonzero")


@dataclass(frozen=True)
class BCTypeParams:
    """``2s + 2`` exponents ``alpha_m`` (``a_m = q^alpha_m``), ``t = q^tau``."""

    n: int
    s: int
    alpha: tuple
    tau: complex
    xi: tuple
    q: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _cplx_tuple(self.alpha))
        object.__setattr__(self, "xi", _cplx_tuple(self.xi))
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "q", check_q(self.q))
        if self.n < 1 or self.s < 1:
            raise DomainError("n and s must be positive")
        if len(self.alpha) != 2 * self.s + 2:
            raise DomainError(f"alpha needs 2s+2={2 * self.s + 2} entries")
        if len(self.xi) != self.n or any(v == 0 for v in self.xi):
            raise DomainError(f"xi needs n={self.n} nonzero entries")

    @classmethod
    def from_a(cls, n, s, a, tau, xi, q) -> "BCTypeParams":
        return cls(n, s, tuple(log_q(v, q) for v in a), tau, xi, q)

    @property
    def a(self) -> tuple:
        lq = math.log(self.q)
        return tuple(cmath.exp(al * lq) for al in self.alpha)


@dataclass(frozen=True)
class LatticeWindow:
    """Per-axis index intervals summed, shells used and per-shell absolute sums."""

    intervals: tuple
    shells: int
    history: tuple = field(default=(), repr=False)


# -- shell enumeration and summation -------------------------------------------

def shell_indices(n: int, r: int) -> np.ndarray:
    """All ``nu in Z^n`` with ``max |nu_i| = r``, in lexicographic order."""
    if r == 0:
        return np.zeros((1, n), dtype=np.int64)
    if n == 1:
        return np.array([[-r], [r]], dtype=np.int64)
    side = np.arange(-r, r + 1, dtype=np.int64)
    box = np.stack(np.meshgrid(*([side] * (n - 1)), indexing="ij"), axis=-1).reshape(-1, n - 1)
    inner = shell_indices(n - 1, r)
    blocks = []
    for v in side:
        rest = box if abs(v) == r else inner
        head = np.full((rest.shape[0], 1), v, dtype=np.int64)
        blocks.append(np.hstack([head, rest]))
    return np.vstack(blocks)


def lattice_shell_sum(n: int, site_values: Callable[[np.ndarray], np.ndarray], q: float,
                      policy: SumPolicy = DEFAULT_POLICY, prefactor: complex = 1.0) -> SeriesValue:
    """``prefactor * sum_{nu in Z^n} f(nu)`` over expanding l-inf shells.

    Each shell is reduced with :func:`math.fsum`, so the result does not
    depend on evaluation order. Shell ``r`` is small when its absolute sum
    ``A_r`` is below ``rel_tol * |partial|``; the sum stops once
    ``consecutive_small`` shells in a row are small and the geometric tail
    ``A_r rho / (1 - rho)`` (``rho`` the largest recent ratio of successive
    ``A_r``) is below half that budget.
    """
    k = policy.consecutive_small
    warm = warmup_steps(q)
    shell_sums: list[complex] = []
    history: list[float] = []
    partial = 0j
    small = 0
    rising = 0
    terms = 0
    tail = math.inf
    for r in range(policy.max_shells + 1):
        nus = shell_indices(n, r)
        vals = prefactor * np.asarray(site_values(nus), dtype=complex)
        if not np.all(np.isfinite(vals)):
            raise ConvergenceError(f"non-finite summand on shell {r}", history=tuple(history), index=r)
        terms += len(vals)
        s = fsum_complex(vals.tolist())
        mag = math.fsum(np.abs(vals).tolist())
        shell_sums.append(s)
        partial = fsum_complex(shell_sums)
        if history and mag > 0 and mag >= history[-1]:
            rising += 1
        else:
            rising = 0
        history.append(mag)
        if r > warm and rising >= k:
            raise ConvergenceError(f"shell sums grew for {rising} consecutive shells",
                                   history=tuple(history), index=r)
        limit = policy.rel_tol * max(abs(partial), policy.abs_floor)
        small = small + 1 if mag < limit else 0
        if small >= k and r >= k:
            recent = history[-k - 1:]
            ratios = [b / a if a > 0 else (0.0 if b == 0 else math.inf)
                      for a, b in zip(recent, recent[1:])]
            rho = max(ratios)
            tail = 0.0 if mag == 0 else (math.inf if rho >= 1 else mag * rho / (1 - rho))
            if tail <= 0.5 * limit:
                return SeriesValue(
                    value=partial,
                    err_estimate=tail,
                    terms_used=terms,
                    converged=True,
                    truncation_window=tuple((-r, r) for _ in range(n)),
                    shell_history=tuple(history),
                )
    raise ConvergenceError(f"no convergence within max_shells={policy.max_shells}",
                           history=tuple(history), index=policy.max_shells)


class _Table:
    """Values of ``f(idx)`` on a symmetric integer range, grown by doubling."""

    def __init__(self, build: Callable[[np.ndarray], np.ndarray]):
        self._build = build
        self._half = -1
        self._vals = np.zeros(0, dtype=complex)

    def lookup(self, idx: np.ndarray) -> np.ndarray:
        need = int(np.max(np.abs(idx), initial=0))
        if need > self._half:
            half = max(16, 2 * need)
            self._vals = np.asarray(self._build(np.arange(-half, half + 1)), dtype=complex)
            self._half = half
        return self._vals[idx + self._half]


def _combine(factors: list[np.ndarray], nus: np.ndarray) -> np.ndarray:
    """Multiply factor arrays; a NaN (pole) is tolerated only next to an exact zero."""
    prod = np.ones(nus.shape[0], dtype=complex)
    zero = np.zeros(nus.shape[0], dtype=bool)
    pole = np.zeros(nus.shape[0], dtype=bool)
    for f in factors:
        zero |= f == 0
        pole |= np.isnan(f)
        prod = prod * f
    bad = pole & ~zero
    if np.any(bad):
        site = tuple(int(v) for v in nus[np.argmax(bad)])
        raise PoleError(f"summand has a pole at nu={site}", site=site)
    return np.where(zero, 0j, prod)


def _axis_factor(xi, expo, cnums: Sequence, cdens: Sequence, q, policy, one_minus_sq: bool = False):
    """Tabulator for ``z^expo prod (c z)_inf / prod (d z)_inf [* (1 - z^2)]`` at ``z = xi q^nu``."""
    lxi = cmath.log(xi)
    lq = math.log(q)

    def build(nu: np.ndarray) -> np.ndarray:
        z = xi * np.power(q, nu.astype(float))
        ratio = np.ones(nu.shape, dtype=complex)
        e2 = np.zeros(nu.shape, dtype=np.int64)
        pole = np.zeros(nu.shape, dtype=bool)
        zero = np.zeros(nu.shape, dtype=bool)
        width = max(len(cnums), len(cdens))
        for i in range(width):
            cn = cnums[i] if i < len(cnums) else 0.0
            cd = cdens[i] if i < len(cdens) else 0.0
            v, p, e = qpoch_ratio_array(cn, cd, z, q, policy, scaled=True)
            pole |= p
            zero |= v == 0
            ok = ~(p | (v == 0))
            ratio = ratio * np.where(ok, v, 1.0)
            e2 += np.where(ok, e, 0)
        # power and binary scale merged in one exponential so huge and tiny pieces cancel
        logpow = complex(expo) * (lxi + nu * lq) + e2 * LN2
        if one_minus_sq:
            # 1 - z^2 = -z^2 (1 - z^-2) for |z| > 1 keeps the factor finite
            big = np.abs(z) > 1
            logpow = logpow + np.where(big, 2 * (lxi + nu * lq), 0)
            with np.errstate(divide="ignore", invalid="ignore"):
                extra = np.where(big, -_snap((1 / z) ** 2, policy), _snap(z * z, policy))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            val = np.where(zero, 0j, np.exp(logpow) * np.where(zero, 1.0, ratio))
        if one_minus_sq:
            val = val * extra
        val[zero] = 0
        val[pole & ~zero] = np.nan
        return val

    return build


def _snap(w: np.ndarray, policy: SumPolicy) -> np.ndarray:
    f = 1 - w
    return np.where(np.abs(f) < policy.pole_eps, 0j, f)


def _h_builder(c, tau: complex, q: float, policy: SumPolicy):
    """Tabulator for ``H(c q^d) = (1 - w)(q^{1-tau} w)_inf / (q^tau w)_inf``.

    When ``2 tau - 1`` is a non-negative integer the ratio is the finite
    product ``(q^{1-tau} w)_{2 tau - 1}``, which avoids 0/0 at integer tau.
    """
    q1t = cmath.exp((1 - tau) * math.log(q))
    qt = cmath.exp(tau * math.log(q))
    k = 2 * tau - 1
    finite = k.imag == 0 and k.real >= -1e-12 and abs(k.real - round(k.real)) < 1e-12

    def build(d: np.ndarray) -> np.ndarray:
        w = c * np.power(q, d.astype(float))
        if finite:
            ratio = qpoch_fin_array(q1t, w, q, int(round(k.real)), policy)
        else:
            ratio, _ = qpoch_ratio_array(q1t, qt, w, q, policy)
        return _snap(w, policy) * ratio

    return build


def _h_scalar(w: complex, tau: complex, q: float, policy: SumPolicy) -> complex:
    return complex(_h_builder(w, tau, q, policy)(np.zeros(1, dtype=np.int64))[0])


def _scalar_axis(z, expo, cnums, cdens, q, policy) -> complex:
    ratio = qpoch_ratio([c * z for c in cnums], [d * z for d in cdens], q, policy)
    if ratio == 0:
        return 0j
    return lattice_power(z, 0, expo, q) * ratio


# -- A-type ---------------------------------------------------------------------

def _atype_axis_data(p: ATypeParams):
    q = p.q
    cnums = tuple(q / aj for aj in p.a)
    exps = tuple(p.alpha + 2 * p.tau * (p.n - k) for k in range(1, p.n + 1))
    return cnums, p.b, exps


def atype_summand(p: ATypeParams, z: Sequence, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """The A-type weight at one point ``z`` (direct, factor by factor)."""
    z = _cplx_tuple(z)
    if len(z) != p.n or any(v == 0 for v in z):
        raise DomainError(f"z needs n={p.n} nonzero entries")
    cnums, cdens, exps = _atype_axis_data(p)
    val = 1 + 0j
    for k in range(p.n):
        val *= _scalar_axis(z[k], exps[k], cnums, cdens, p.q, policy)
    for k in range(p.n):
        for l in range(k + 1, p.n):
            h = _h_scalar(z[l] / z[k], p.tau, p.q, policy)
            if np.isnan(h):
                raise PoleError(f"pair factor ({k + 1},{l + 1}) has a pole")
            val *= h
    return val


def atype_sum(p: ATypeParams, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    """``(1-q)^n sum_{nu in Z^n}`` of the A-type weight at ``z_i = xi_i q^{nu_i}``."""
    q, n = p.q, p.n
    cnums, cdens, exps = _atype_axis_data(p)
    axes = [_Table(_axis_factor(p.xi[k], exps[k], cnums, cdens, q, policy)) for k in range(n)]
    pairs = {(k, l): _Table(_h_builder(p.xi[l] / p.xi[k], p.tau, q, policy))
             for k in range(n) for l in range(k + 1, n)}

    def site_values(nus: np.ndarray) -> np.ndarray:
        factors = [axes[k].lookup(nus[:, k]) for k in range(n)]
        factors += [t.lookup(nus[:, l] - nus[:, k]) for (k, l), t in pairs.items()]
        return _combine(factors, nus)

    return lattice_shell_sum(n, site_values, q, policy, prefactor=(1 - q) ** n)


def _is_integer(v: complex) -> bool:
    return v.imag == 0 and abs(v.real - round(v.real)) < 1e-12


def _nz(value: complex, what: str, policy: SumPolicy) -> complex:
    if abs(value) < policy.pole_eps:
        raise PoleError(f"{what} vanishes")
    return value


def aomoto_product(p: ATypeParams, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """Closed form of the ``m = 1`` A-type integral (Aomoto)::

        c0 prod_i xi_i^{alpha + 2(n-i)tau} theta(q^{alpha+(n-1)tau} b xi_i) / theta(b xi_i)
           prod_{j<k} theta(xi_k/xi_j) / theta(q^tau xi_k/xi_j)
    """
    if p.m != 1:
        raise DomainError("aomoto_product needs m = 1")
    n, q, al, tau = p.n, p.q, p.alpha, p.tau
    if n > 1 and _is_integer(tau):
        raise DomainError("integer tau makes c0 an unregularised 0/0; evaluate at tau +- eps")
    lq = math.log(q)

    def qp(s) -> complex:
        return cmath.exp(complex(s) * lq)

    ab = p.a[0] * p.b[0]
    qq = qpoch_inf(q, q, policy)
    c0 = 1 + 0j
    for j in range(1, n + 1):
        num = (1 - q) * qq * qpoch_inf(qp(1 - (j - 1) * tau) / ab, q, policy)
        den = (_nz(qpoch_inf(qp(al + (j - 1) * tau), q, policy), "(q^{alpha+(j-1)tau})_inf", policy)
               * _nz(qpoch_inf(qp(1 - al - (n + j - 2) * tau) / ab, q, policy),
                     "(q^{1-alpha-(n+j-2)tau}/ab)_inf", policy))
        if j > 1:
            # the j = 1 pair cancels identically
            num *= qpoch_inf(qp(1 - j * tau), q, policy)
            den *= _nz(qpoch_inf(qp(1 - tau), q, policy), "(q^{1-tau})_inf", policy)
        c0 *= num / den
    val = c0
    shift = qp(al + (n - 1) * tau) * p.b[0]
    for i in range(1, n + 1):
        x = p.xi[i - 1]
        val *= lattice_power(x, 0, al + 2 * (n - i) * tau, q)
        val *= theta(shift * x, q, policy) / _nz(theta(p.b[0] * x, q, policy), "theta(b xi_i)", policy)
    qt = qp(tau)
    for j in range(n):
        for k in range(j + 1, n):
            w = p.xi[k] / p.xi[j]
            val *= theta(w, q, policy) / _nz(theta(qt * w, q, policy), "theta(q^tau xi_k/xi_j)", policy)
    return val


def mg_product(p: ATypeParams, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """Closed form of the ``m = n``, ``tau = 1/2`` A-type integral (Milne-Gustafson)::

        c1 (xi_1...xi_n)^alpha theta(q^alpha xi_1...xi_n b_1...b_n)
           / prod_{i,j} theta(xi_i b_j) * prod_{i<j} xi_j theta(xi_i/xi_j)

    The usual statement of this formula uses a theta function without the
    ``(q)_inf`` factor in the ``xi``-dependent part. With the ``theta`` used
    here the lattice sum equals the expression above times
    ``(-1)^{n(n-1)/2} (q)_inf^{n(n+1)/2 - 1}``, which is applied.
    """
    n, q, al = p.n, p.q, p.alpha
    if p.m != n or abs(p.tau - 0.5) > 1e-12:
        raise DomainError("mg_product needs m = n and tau = 1/2")
    lq = math.log(q)
    qq = qpoch_inf(q, q, policy)
    c1 = ((1 - q) * qq) ** n
    prod_ab = 1 + 0j
    for ai in p.a:
        for bj in p.b:
            c1 *= qpoch_inf(q / (ai * bj), q, policy)
        prod_ab *= ai
    for bj in p.b:
        prod_ab *= bj
    c1 /= _nz(qpoch_inf(cmath.exp(al * lq), q, policy), "(q^alpha)_inf", policy)
    c1 /= _nz(qpoch_inf(cmath.exp((1 - al) * lq) / prod_ab, q, policy),
              "(q^{1-alpha}/prod a b)_inf", policy)
    prod_xi = 1 + 0j
    for x in p.xi:
        prod_xi *= x
    prod_b = 1 + 0j
    for bj in p.b:
        prod_b *= bj
    # (xi_1...xi_n)^alpha as a product of principal powers
    val = c1
    for x in p.xi:
        val *= lattice_power(x, 0, al, q)
    val *= theta(cmath.exp(al * lq) * prod_xi * prod_b, q, policy)
    for x in p.xi:
        for bj in p.b:
            val /= _nz(theta(x * bj, q, policy), "theta(xi_i b_j)", policy)
    for i in range(n):
        for j in range(i + 1, n):
            val *= p.xi[j] * theta(p.xi[i] / p.xi[j], q, policy)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * qq ** (n * (n + 1) // 2 - 1) * val


def selberg_spec_xi(n: int, tau, q) -> tuple:
    """``(1, q^tau, ..., q^{(n-1)tau})``."""
    q = check_q(q)
    if n < 1:
        raise DomainError("n must be positive")
    lq = math.log(q)
    tau = complex(tau)
    return tuple(1 + 0j if i == 0 else cmath.exp(i * tau * lq) for i in range(n))


def da_spec_params(n: int, s0, x: Sequence, q) -> ATypeParams:
    """Parameters of the Dixon-Anderson specialisation:
    ``alpha = s0``, ``tau = 1/2``, ``a_j = x_j``, ``b_j = q^{j-1}/x_j``, ``xi = a``."""
    q = check_q(q)
    x = _cplx_tuple(x)
    if len(x) != n:
        raise DomainError(f"x needs n={n} entries")
    if any(v == 0 for v in x):
        raise DomainError("x entries must be nonzero")
    b = tuple(q ** j / x[j] for j in range(n))
    return ATypeParams(n=n, m=n, alpha=s0, tau=0.5, a=x, b=b, xi=x, q=q)


def atype_alternating_sum(p: ATypeParams, x: Sequence, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    """``sum_i (-1)^{i-1} I~(xi = x without x_i)`` for ``m = n + 1``, ``alpha = 1``."""
    x = _cplx_tuple(x)
    if p.m != p.n + 1 or abs(p.alpha - 1) > 1e-12:
        raise DomainError("alternating sum needs m = n + 1 and alpha = 1")
    if len(x) != p.n + 1:
        raise DomainError(f"x needs n+1={p.n + 1} entries")
    parts, err, used = [], 0.0, 0
    converged = True
    for i in range(p.n + 1):
        xi = x[:i] + x[i + 1:]
        try:
            sv = atype_sum(replace(p, xi=xi), policy)
        except (ConvergenceError, PoleError) as exc:
            exc.args = (f"term i={i + 1}: {exc.args[0] if exc.args else ''}",) + exc.args[1:]
            raise
        parts.append(sv.value if i % 2 == 0 else -sv.value)
        err += sv.err_estimate
        used += sv.terms_used
        converged = converged and sv.converged
    return SeriesValue(value=fsum_complex(parts), err_estimate=err, terms_used=used,
                       converged=converged)


def atype_m2_xi_family(n: int, i: int, tau, x1, x2, q) -> tuple:
    """``(x1, x1 q^tau, ..., x1 q^{(i-1)tau}, x2, ..., x2 q^{(n-i-1)tau})``."""
    q = check_q(q)
    if not 0 <= i <= n:
        raise DomainError("need 0 <= i <= n")
    lq = math.log(q)
    tau = complex(tau)

    def block(x, length):
        return tuple(complex(x) * cmath.exp(j * tau * lq) for j in range(length))

    return block(x1, i) + block(x2, n - i)


# -- BC-type --------------------------------------------------------------------

def _bctype_axis_data(p: BCTypeParams):
    q = p.q
    a = p.a
    cnums = tuple(q / am for am in a)
    base = p.s - sum(p.alpha)
    exps = tuple(base - 2 * p.tau * (p.n - j) for j in range(1, p.n + 1))
    return cnums, a, exps


def bctype_summand(p: BCTypeParams, z: Sequence, policy: SumPolicy = DEFAULT_POLICY) -> complex:
    """``Phi~(z) Delta~(z)`` at one point ``z`` (direct, factor by factor)."""
    z = _cplx_tuple(z)
    if len(z) != p.n or any(v == 0 for v in z):
        raise DomainError(f"z needs n={p.n} nonzero entries")
    cnums, cdens, exps = _bctype_axis_data(p)
    val = 1 + 0j
    for j in range(p.n):
        val *= _scalar_axis(z[j], exps[j], cnums, cdens, p.q, policy) * (1 - z[j] * z[j])
    for j in range(p.n):
        for k in range(j + 1, p.n):
            h = (_h_scalar(z[j] / z[k], p.tau, p.q, policy)
                 * _h_scalar(z[j] * z[k], p.tau, p.q, policy))
            if np.isnan(h):
                raise PoleError(f"pair factor ({j + 1},{k + 1}) has a pole")
            val *= h
    return val


def bctype_sum(p: BCTypeParams, policy: SumPolicy = DEFAULT_POLICY) -> SeriesValue:
    """``(1-q)^n sum_{nu in Z^n} Phi~ Delta~`` at ``z_i = xi_i q^{nu_i}``."""
    q, n = p.q, p.n
    cnums, cdens, exps = _bctype_axis_data(p)

    axes = [_Table(_axis_factor(p.xi[j], exps[j], cnums, cdens, q, policy, one_minus_sq=True))
            for j in range(n)]
    diff = {(j, k): _Table(_h_builder(p.xi[j] / p.xi[k], p.tau, q, policy))
            for j in range(n) for k in range(j + 1, n)}
    summ = {(j, k): _Table(_h_builder(p.xi[j] * p.xi[k], p.tau, q, policy))
            for j in range(n) for k in range(j + 1, n)}

    def site_values(nus: np.ndarray) -> np.ndarray:
        factors = [axes[j].lookup(nus[:, j]) for j in range(n)]
        factors += [t.lookup(nus[:, j] - nus[:, k]) for (j, k), t in diff.items()]
        factors += [t.lookup(nus[:, j] + nus[:, k]) for (j, k), t in summ.items()]
        return _combine(factors, nus)

    return lattice_shell_sum(n, site_values, q, policy, prefactor=(1 - q) ** n)
