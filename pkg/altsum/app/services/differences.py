from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Literal, Optional, Tuple

from altsum.app.errors import GuardExceeded, HypothesisRefused, OutOfRange, UsageError
from altsum.app.services.numerics import Scalar
from altsum.app.services.terms import ReciprocalLinear, SeriesSpec, TermSource, term, with_backend
from altsum.core.config import ORDER_GUARD

logger = logging.getLogger(__name__)

VerdictStatus = Literal["certified_by_family", "window_pass", "window_fail"]


@dataclass(frozen=True)
class DifferenceTable:
    """
    rows[r][j] = Δ^r a_{n_start + j}; row 0 holds `width` terms and row r
    holds width - r entries.
    """

    source: TermSource
    n_start: int
    width: int
    max_order: int
    rows: Tuple[Tuple[Scalar, ...], ...]

    def value(self, r: int, n: int) -> Scalar:
        j = n - self.n_start
        if not 0 <= r <= self.max_order or not 0 <= j < self.width - r:
            raise OutOfRange("cell outside the table", r=r, n=n)
        return self.rows[r][j]

    def cells(self) -> Iterator[Tuple[int, int, Scalar]]:
        for r, row in enumerate(self.rows):
            for j, v in enumerate(row):
                yield r, self.n_start + j, v


@dataclass(frozen=True)
class MonotoneVerdict:
    status: VerdictStatus
    order: Optional[int] = None
    n: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.status != "window_fail"


def _check_order(r: int) -> None:
    if r < 0:
        raise OutOfRange("difference order must be non-negative", r=r)
    if r > ORDER_GUARD:
        raise GuardExceeded(f"difference order {r} exceeds guard {ORDER_GUARD}", r=r, guard=ORDER_GUARD)


def _difference_rows(values: List[Scalar], max_order: int) -> Tuple[Tuple[Scalar, ...], ...]:
    rows = [tuple(values)]
    for _ in range(max_order):
        prev = rows[-1]
        rows.append(tuple(prev[j] - prev[j + 1] for j in range(len(prev) - 1)))
    return tuple(rows)


def build_table(src: TermSource, n_start: int, width: int, max_order: int) -> DifferenceTable:
    if n_start < 1:
        raise OutOfRange("n_start must be >= 1", n_start=n_start)
    _check_order(max_order)
    if width <= max_order:
        raise UsageError("width must exceed max_order", width=width, max_order=max_order)
    values = [term(src, n_start + j) for j in range(width)]
    return DifferenceTable(src, n_start, width, max_order, _difference_rows(values, max_order))


def forward_difference(src: TermSource, r: int, n: int) -> Scalar:
    """Δ^r a_n by the recurrence Δ^r a_n = Δ^(r-1) a_n - Δ^(r-1) a_(n+1)."""
    _check_order(r)
    if n < 1:
        raise OutOfRange("n must be >= 1", n=n)
    values = [term(src, n + i) for i in range(r + 1)]
    for _ in range(r):
        values = [values[i] - values[i + 1] for i in range(len(values) - 1)]
    return values[0]


def binomial_difference(src: TermSource, r: int, n: int) -> Scalar:
    """Δ^r a_n = sum_i (-1)^i C(r, i) a_(n+i)."""
    _check_order(r)
    total: Scalar = Fraction(0) if src.exact else 0.0
    for i in range(r + 1):
        c = math.comb(r, i) * term(src, n + i)
        total = total + c if i % 2 == 0 else total - c
    return total


def closed_form_delta(spec: SeriesSpec, r: int, n: int) -> Fraction:
    """Δ^r a_n = d^r r! / prod_{i=0..r} (c + d(n-1+i)) for a_n = 1/(c + d(n-1))."""
    _check_order(r)
    family = spec.family
    if not isinstance(family, ReciprocalLinear):
        raise UsageError("closed form only exists for reciprocal_linear series", series=spec.id)
    denom = Fraction(1)
    for i in range(r + 1):
        denom *= family.c + family.d * (n - 1 + i)
    return family.d**r * math.factorial(r) / denom


def closed_form_delta_pi4(n: int) -> Fraction:
    """Δ^n a_1 = 2^n n! / (1*3*5*...*(2n+1)) for a_n = 1/(2n-1); Δ^0 a_1 = a_1 = 1."""
    _check_order(n)
    odd = math.prod(range(1, 2 * n + 2, 2))
    return Fraction(2**n * math.factorial(n), odd)


# =========================
# Hypothesis checks
# =========================
def check_monotone_decreasing(src: TermSource, max_order: int, window: Tuple[int, int]) -> MonotoneVerdict:
    """
    Built-in families are completely monotone. Sampled sources are checked on the
    window only: Δ^r a_n >= Δ^r a_(n+1) >= 0 for r <= max_order, n_lo <= n <= n_hi.
    The verdict never says anything about terms outside the window.
    """
    n_lo, n_hi = window
    if n_lo < 1 or n_hi < n_lo:
        raise UsageError("window must be a non-empty range of indices >= 1", window=list(window))
    _check_order(max_order)
    if src.spec.completely_monotone:
        return MonotoneVerdict("certified_by_family")

    exact = with_backend(src, "exact")
    table = build_table(exact, n_lo, n_hi - n_lo + max_order + 2, max_order)
    for r in range(max_order + 1):
        for n in range(n_lo, n_hi + 1):
            here, nxt = table.value(r, n), table.value(r, n + 1)
            if not (here >= nxt >= 0):
                logger.debug("window check failed for %s at r=%d n=%d", src.spec.id, r, n)
                return MonotoneVerdict("window_fail", r, n)
    return MonotoneVerdict("window_pass")


def require_hypotheses(src: TermSource, order: int, window: Tuple[int, int]) -> MonotoneVerdict:
    verdict = check_monotone_decreasing(src, order, window)
    if not verdict.ok:
        raise HypothesisRefused(
            f"differences of order {verdict.order} are not monotone at n = {verdict.n}",
            series=src.spec.id,
            order=verdict.order,
            n=verdict.n,
        )
    return verdict
