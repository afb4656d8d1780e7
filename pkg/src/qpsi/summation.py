"""Two-sided adaptive summation over ``nu in Z``.

Both directions are scanned independently, starting at ``nu = 0`` and
``nu = -1``. A direction stops once its last ``consecutive_small`` terms are
each below ``rel_tol * |partial|`` *and* the geometric tail bound built from
the largest recent term ratio is below half the relative budget. The two
tail bounds together form ``err_estimate``.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Callable, Iterator

from .errors import ConvergenceError
from .policy import CompensatedSum, SeriesValue, SumPolicy


def warmup_steps(q: float) -> int:
    """Lattice steps after which ``|q^nu|`` has dropped below ``e^-40``.

    Past this point every lattice factor with parameters of moderate size
    sits in its geometric regime, so sustained growth means divergence.
    """
    return max(8, math.ceil(40.0 / math.log(1.0 / q)))


class _Side:
    """One direction of a bilateral scan."""

    def __init__(self, terms: Iterator[tuple[int, complex]], policy: SumPolicy, warmup: int, label: str):
        self._terms = terms
        self.policy = policy
        self.warmup = warmup
        self.label = label
        self.acc = CompensatedSum()
        self.mags: deque[float] = deque(maxlen=policy.consecutive_small)
        self.ratios: deque[float] = deque(maxlen=policy.consecutive_small)
        self.prev_mag: float | None = None
        self.rising = 0
        self.exhausted = False
        self.first: int | None = None
        self.last: int | None = None

    def advance(self) -> None:
        try:
            nu, term = next(self._terms)
        except StopIteration:
            self.exhausted = True
            return
        term = complex(term)
        if not (math.isfinite(term.real) and math.isfinite(term.imag)):
            raise ConvergenceError(f"non-finite term at nu={nu} ({self.label} direction)", index=nu)
        self.acc.add(term)
        if self.first is None:
            self.first = nu
        self.last = nu
        mag = abs(term)
        if self.prev_mag is None:
            ratio = 0.0 if mag == 0 else math.inf
        elif self.prev_mag == 0:
            ratio = 0.0 if mag == 0 else math.inf
        else:
            ratio = mag / self.prev_mag
        if self.prev_mag is not None and mag > 0 and ratio >= 1.0:
            self.rising += 1
        else:
            self.rising = 0
        self.prev_mag = mag
        self.mags.append(mag)
        self.ratios.append(ratio)
        if self.acc.count > self.warmup and self.rising >= self.policy.consecutive_small:
            raise ConvergenceError(
                f"terms stopped decaying after {self.acc.count} steps ({self.label} direction)",
                history=tuple(self.mags), index=nu)

    def tail(self) -> float:
        if self.exhausted or not self.mags or self.mags[-1] == 0:
            return 0.0
        r = max(self.ratios)
        if r >= 1.0:
            return math.inf
        return self.mags[-1] * r / (1.0 - r)

    def satisfied(self, scale: float) -> bool:
        if self.exhausted:
            return True
        if len(self.mags) < self.policy.consecutive_small:
            return False
        limit = self.policy.rel_tol * scale
        if any(m >= limit for m in self.mags):
            return False
        return self.tail() <= 0.5 * limit


def bilateral_sum(pos_terms: Iterator[tuple[int, complex]],
                  neg_terms: Iterator[tuple[int, complex]],
                  policy: SumPolicy, q: float) -> SeriesValue:
    """Sum two term streams (``nu >= 0`` and ``nu < 0``) to policy tolerance."""
    warm = warmup_steps(q)
    pos = _Side(pos_terms, policy, warm, "positive")
    neg = _Side(neg_terms, policy, warm, "negative")
    floor = policy.abs_floor

    def scale() -> float:
        return max(abs(pos.acc.value + neg.acc.value), floor)

    while True:
        moved = False
        for side in (pos, neg):
            while not side.satisfied(scale()):
                if pos.acc.count + neg.acc.count >= policy.max_terms:
                    raise ConvergenceError(
                        f"max_terms={policy.max_terms} exhausted",
                        history=tuple(side.mags), index=side.last)
                side.advance()
                moved = True
        if not moved:
            break

    p, n = pos.acc.exact(), neg.acc.exact()
    value = p + n
    err = pos.tail() + neg.tail()
    lo = neg.last if neg.last is not None else 0
    hi = pos.last if pos.last is not None else -1
    return SeriesValue(
        value=value,
        err_estimate=err,
        terms_used=pos.acc.count + neg.acc.count,
        converged=err <= policy.rel_tol * max(abs(value), floor),
        truncation_window=((lo, hi),),
        split=(p, n),
    )


def site_streams(site: Callable[[int], complex]):
    """Turn a per-site function into the two directional term streams."""

    def pos():
        nu = 0
        while True:
            yield nu, site(nu)
            nu += 1

    def neg():
        nu = -1
        while True:
            yield nu, site(nu)
            nu -= 1

    return pos(), neg()
