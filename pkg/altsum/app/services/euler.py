"""
Euler transformation of a_1 - a_2 + a_3 - ...:

    E_n = a_1/2 + Δa_1/2^2 + ... + Δ^(n-1) a_1/2^n,   0 < L - E_n <= Δ^n a_1 / 2^n

and the hybrid scheme S_m + (-1)^m E_j[b] with b_n = a_(m+n).

Certified results always come from the exact backend. The float64 backend runs
the same difference recurrence in binary floats; higher differences lose relative
accuracy there, so its output is advisory only.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Tuple

from altsum.app.errors import GuardExceeded, OutOfRange, Unreachable
from altsum.app.services.differences import build_table, require_hypotheses
from altsum.app.services.numerics import Scalar
from altsum.app.services.terms import TermSource, partial_sum, shifted, with_backend
from altsum.core.config import ORDER_GUARD

logger = logging.getLogger(__name__)

AccelerationKind = Literal["euler", "hybrid"]


@dataclass(frozen=True)
class AccelerationResult:
    method: AccelerationKind
    value: Scalar
    error_upper: Scalar
    underestimates: bool
    terms_consumed: int
    backend: str
    n: Optional[int] = None
    m: Optional[int] = None
    j: Optional[int] = None

    @property
    def tag(self) -> str:
        if self.method == "euler":
            return f"euler({self.n})"
        return f"hybrid({self.m},{self.j})"


def _check_n(n: int) -> None:
    if n < 1:
        raise OutOfRange("n must be >= 1", n=n)
    if n > ORDER_GUARD:
        raise GuardExceeded(f"n = {n} exceeds the order guard {ORDER_GUARD}", n=n, guard=ORDER_GUARD)


def _euler_parts(src: TermSource, n: int) -> Tuple[Scalar, Scalar]:
    """(E_n, Δ^n a_1 / 2^n) in the backend of src, hypotheses checked on the exact view."""
    _check_n(n)
    require_hypotheses(with_backend(src, "exact"), n, (1, 1))
    table = build_table(src, 1, n + 1, n)
    head = [table.rows[r][0] for r in range(n + 1)]
    value = head[0] / 2
    for r in range(1, n):
        value = value + head[r] / 2 ** (r + 1)
    return value, head[n] / 2**n


def euler_partial_sum(src: TermSource, n: int) -> AccelerationResult:
    value, bound = _euler_parts(src, n)
    return AccelerationResult(
        method="euler",
        value=value,
        error_upper=bound,
        underestimates=True,
        terms_consumed=n,
        backend=src.backend,
        n=n,
    )


def euler_enclosure(src: TermSource, n: int) -> Tuple[Fraction, Fraction]:
    """E_n < L < E_n + Δ^n a_1 / 2^n."""
    value, bound = _euler_parts(with_backend(src, "exact"), n)
    return value, value + bound


def first_n_euler(src: TermSource, eps: Fraction) -> int:
    """Smallest n with Δ^n a_1 / 2^n <= eps (non-strict, like the bound itself)."""
    if eps <= 0:
        raise OutOfRange("eps must be positive", eps=eps)
    exact = with_backend(src, "exact")
    # the bound decreases in n for certified sources, so the first hit is the answer
    for n in range(1, ORDER_GUARD + 1):
        try:
            _, bound = _euler_parts(exact, n)
        except OutOfRange as e:
            # sampled source ran out of terms before the bound reached eps
            raise Unreachable(
                f"eps = {eps} not reached before the sampled terms run out",
                eps=eps,
                n=n,
            ) from e
        if bound <= eps:
            logger.debug("first_n_euler(%s, %s) = %d", src.spec.id, eps, n)
            return n
    raise Unreachable(f"eps = {eps} not reached within order {ORDER_GUARD}", eps=eps)


def hybrid_sum(src: TermSource, m: int, j: int) -> AccelerationResult:
    """
    S_m + (-1)^m E_j[b], b_n = a_(m+n). The tail after S_m is (-1)^m (a_(m+1) - a_(m+2) + ...),
    so the Euler transform runs on the positive shifted sequence and is re-signed:
    even m underestimates L, odd m overestimates it.
    """
    if m < 0:
        raise OutOfRange("m must be non-negative", m=m)
    tail = shifted(src, m)
    tail_value, bound = _euler_parts(tail, j)
    sign = 1 if m % 2 == 0 else -1
    return AccelerationResult(
        method="hybrid",
        value=partial_sum(src, m) + sign * tail_value,
        error_upper=bound,
        underestimates=(m % 2 == 0),
        terms_consumed=m + j,
        backend=src.backend,
        m=m,
        j=j,
    )


def hybrid_enclosure(src: TermSource, m: int, j: int) -> Tuple[Fraction, Fraction]:
    res = hybrid_sum(with_backend(src, "exact"), m, j)
    if res.underestimates:
        return res.value, res.value + res.error_upper
    return res.value - res.error_upper, res.value
