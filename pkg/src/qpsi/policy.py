"""Truncation policy, result container and compensated accumulation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Iterable

from .errors import DomainError

#: Unit roundoff of binary64.
EPS = 2.0 ** -53


@dataclass(frozen=True)
class SumPolicy:
    """Convergence control for every series, product and lattice sum.

    ``rel_tol`` is the relative truncation target, ``abs_floor`` keeps the
    relative tests meaningful when a partial sum is (nearly) zero, and
    ``pole_eps`` is the absolute threshold on ``|1 - u q^l|`` below which a
    factor counts as vanishing.
    """

    rel_tol: float = 1e-12
    abs_floor: float = 1e-300
    max_terms: int = 10 ** 6
    consecutive_small: int = 3
    max_shells: int = 200
    pole_eps: float = 1e-10

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if self.consecutive_small < 1:
            raise DomainError("consecutive_small must be >= 1")
        if self.max_shells < 1:
            raise DomainError("max_shells must be >= 1")
        if self.abs_floor < 0 or self.pole_eps < 0:
            raise DomainError("abs_floor and pole_eps must be non-negative")

    @property
    def product_tol(self) -> float:
        # Factors closer to 1 than this are exactly 1.0 in binary64, so
        # stopping there makes the truncation invisible at working precision.
        return min(self.rel_tol, EPS)

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_POLICY = SumPolicy()


@dataclass(frozen=True)
class SeriesValue:
    """A computed sum together with its truncation diagnostics.

    ``truncation_window`` holds one ``(lo, hi)`` index interval per summation
    axis. ``split`` is ``(sum over nu >= 0, sum over nu < 0)`` for one-axis
    bilateral sums and ``None`` otherwise. ``shell_history`` lists the
    per-shell absolute sums of lattice evaluations.
    """

    value: complex
    err_estimate: float
    terms_used: int
    converged: bool
    truncation_window: tuple = ()
    split: tuple | None = None
    shell_history: tuple = field(default=(), repr=False)

    def __complex__(self):
        return complex(self.value)

    def __abs__(self):
        return abs(self.value)


class CompensatedSum:
    """Neumaier-compensated running sum of complex terms.

    The running ``value`` drives stopping decisions; :meth:`exact` returns the
    correctly rounded sum of everything added so far via :func:`math.fsum`,
    which does not depend on accumulation order.
    """

    __slots__ = ("_re", "_im", "_s", "_c", "count")

    def __init__(self):
        self._re: list[float] = []
        self._im: list[float] = []
        self._s = 0j
        self._c = 0j
        self.count = 0

    def add(self, term: complex) -> None:
        term = complex(term)
        self._re.append(term.real)
        self._im.append(term.imag)
        s = self._s
        t = s + term
        # Neumaier correction, componentwise.
        cr = ((s.real - t.real) + term.real if abs(s.real) >= abs(term.real)
              else (term.real - t.real) + s.real)
        ci = ((s.imag - t.imag) + term.imag if abs(s.imag) >= abs(term.imag)
              else (term.imag - t.imag) + s.imag)
        self._c += complex(cr, ci)
        self._s = t
        self.count += 1

    def extend(self, terms: Iterable[complex]) -> None:
        for t in terms:
            self.add(t)

    @property
    def value(self) -> complex:
        return self._s + self._c

    def exact(self) -> complex:
        return complex(math.fsum(self._re), math.fsum(self._im))


def fsum_complex(values: Iterable[complex]) -> complex:
    re, im = [], []
    for v in values:
        v = complex(v)
        re.append(v.real)
        im.append(v.imag)
    return complex(math.fsum(re), math.fsum(im))


def check_q(q) -> float:
    """Validate a base ``0 < q < 1`` and return it as a float."""
    try:
        qf = float(q)
    except TypeError:
        raise DomainError(f"q must be real, got {q!r}") from None
    if not 0.0 < qf < 1.0:
        raise DomainError(f"q must satisfy 0 < q < 1, got {q!r}")
    return qf
