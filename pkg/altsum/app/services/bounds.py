from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Literal, Optional, Tuple

from altsum.app.errors import (
    GuardExceeded,
    NoKnownLimit,
    OutOfRange,
    Undecidable,
    Unreachable,
    UsageError,
)
from altsum.app.services.differences import build_table, require_hypotheses
from altsum.app.services.numerics import reference_value
from altsum.app.services.terms import TermSource, partial_sum, partial_sum_pair, term, with_backend
from altsum.core.config import EXACT_TERM_GUARD, ORDER_GUARD, TRUE_EPS_FLOOR_EXP

logger = logging.getLogger(__name__)

MethodName = Literal["leibniz", "johnsonbaugh", "true"]


@dataclass(frozen=True)
class Method:
    name: MethodName
    k: Optional[int] = None

    @property
    def tag(self) -> str:
        return f"jb:{self.k}" if self.name == "johnsonbaugh" else self.name


def parse_method(text: str) -> Method:
    """`leibniz`, `true`, `jb:k` or `johnsonbaugh(k)`."""
    s = (text or "").strip().lower()
    if s in ("leibniz", "true"):
        return Method(s)  # type: ignore[arg-type]
    k_text = None
    if s.startswith("jb:"):
        k_text = s[3:]
    elif s.startswith("johnsonbaugh(") and s.endswith(")"):
        k_text = s[len("johnsonbaugh("):-1]
    if k_text is None or not k_text.isdigit():
        raise UsageError(f"unknown method {text!r}; expected leibniz, jb:k or true", method=text)
    k = int(k_text)
    _check_k(k)
    return Method("johnsonbaugh", k)


@dataclass(frozen=True)
class RemainderInterval:
    """lower ⋖ |R_n| ⋖ upper (strictness per flag) and R_n * sign >= 0."""

    n: int
    method: Method
    lower: Fraction
    upper: Fraction
    lower_strict: bool
    upper_strict: bool
    sign: int

    @property
    def order_k(self) -> Optional[int]:
        return self.method.k

    def certifies_below(self, eps: Fraction) -> bool:
        if self.upper_strict:
            return self.upper <= eps
        return self.upper < eps

    def certifies_at_least(self, eps: Fraction) -> bool:
        if self.lower_strict:
            return self.lower >= eps
        return self.lower > eps

    def contains(self, abs_remainder: Fraction) -> bool:
        lo_ok = self.lower < abs_remainder if self.lower_strict else self.lower <= abs_remainder
        hi_ok = abs_remainder < self.upper if self.upper_strict else abs_remainder <= self.upper
        return lo_ok and hi_ok


@dataclass(frozen=True)
class TValue:
    n: int
    k: int
    value: Fraction


@dataclass(frozen=True)
class TrueRemainder:
    """L - S_n from a reference constant; |value - R_n| <= error_bound."""

    n: int
    value: Fraction
    error_bound: Fraction
    sign: int


def _check_k(k: int) -> None:
    if k < 0:
        raise OutOfRange("k must be non-negative", k=k)
    if k > ORDER_GUARD:
        raise GuardExceeded(f"k = {k} exceeds guard {ORDER_GUARD}", k=k, guard=ORDER_GUARD)


def _sign(n: int) -> int:
    return 1 if n % 2 == 0 else -1


def _certified(src: TermSource, n: int, k: int) -> TermSource:
    """Exact view of src once the order-(k+1) hypothesis holds around n."""
    exact = with_backend(src, "exact")
    require_hypotheses(exact, k + 1, (max(n, 1), n + k + 2))
    return exact


def _ladder_rows(src: TermSource, n: int, k: int) -> Tuple[List[Fraction], List[Fraction]]:
    """(Δ^r a_n for r <= k, Δ^r a_(n+1) for r <= k); n >= 1."""
    table = build_table(src, n, k + 2, k)
    return [table.rows[r][0] for r in range(k + 1)], [table.rows[r][1] for r in range(k + 1)]


# =========================
# Enclosures
# =========================
def leibniz_bound(src: TermSource, n: int) -> RemainderInterval:
    """|R_n| <= a_(n+1), R_n has the sign (-1)^n."""
    if n < 0:
        raise OutOfRange("n must be non-negative", n=n)
    exact = with_backend(src, "exact")
    length = exact.spec.length
    # a_(n+1) >= a_(n+2) is vacuous when a_(n+1) is the last sampled term
    if length is None or n + 2 <= length:
        require_hypotheses(exact, 0, (n + 1, n + 1))
    return RemainderInterval(
        n=n,
        method=Method("leibniz"),
        lower=Fraction(0),
        upper=term(exact, n + 1),
        lower_strict=True,
        upper_strict=False,
        sign=_sign(n),
    )


def johnsonbaugh_interval(src: TermSource, n: int, k: int) -> RemainderInterval:
    """
    sum_{r<=k} Δ^r a_(n+1)/2^(r+1) < |R_n| < a_n/2 - sum_{1<=r<=k} Δ^r a_n/2^(r+1).
    k = 0 gives a_(n+1)/2 < |R_n| < a_n/2.
    """
    if n < 1:
        raise OutOfRange("johnsonbaugh bounds need n >= 1", n=n)
    _check_k(k)
    exact = _certified(src, n, k)
    at_n, at_next = _ladder_rows(exact, n, k)

    lower = sum((at_next[r] / 2 ** (r + 1) for r in range(k + 1)), Fraction(0))
    upper = at_n[0] / 2 - sum((at_n[r] / 2 ** (r + 1) for r in range(1, k + 1)), Fraction(0))
    return RemainderInterval(
        n=n,
        method=Method("johnsonbaugh", k),
        lower=lower,
        upper=upper,
        lower_strict=True,
        upper_strict=True,
        sign=_sign(n),
    )


def remainder_interval(src: TermSource, n: int, method: Method) -> RemainderInterval:
    if method.name == "leibniz":
        return leibniz_bound(src, n)
    if method.name == "johnsonbaugh":
        return johnsonbaugh_interval(src, n, method.k or 0)
    raise UsageError("the true method has no interval", method=method.tag)


# =========================
# T ladder
# =========================
def t_value(src: TermSource, n: int, k: int) -> TValue:
    """T^(k)_n = T^(k-1)_n + (-1)^n Δ^k a_(n+1) / 2^(k+1), starting from T_n = S_n + (-1)^n a_(n+1)/2."""
    if n < 0:
        raise OutOfRange("n must be non-negative", n=n)
    _check_k(k)
    exact = _certified(src, n, k)
    table = build_table(exact, n + 1, k + 1, k)
    sign = _sign(n)
    value = partial_sum(exact, n)
    for r in range(k + 1):
        value += sign * table.rows[r][0] / 2 ** (r + 1)
    return TValue(n, k, value)


def t_error_bound(src: TermSource, n: int, k: int) -> Fraction:
    """|L - T^(k)_n| < Δ^(k+1) a_(n+1) / 2^(k+1)."""
    if n < 0:
        raise OutOfRange("n must be non-negative", n=n)
    _check_k(k)
    exact = _certified(src, n, k)
    table = build_table(exact, n + 1, k + 2, k + 1)
    return table.rows[k + 1][0] / 2 ** (k + 1)


def t_interval(src: TermSource, r: int, k: int) -> Tuple[Fraction, Fraction]:
    """[T^(k)_(2r), T^(k)_(2r-1)]."""
    if r < 1:
        raise OutOfRange("r must be >= 1", r=r)
    left = t_value(src, 2 * r, k).value
    right = t_value(src, 2 * r - 1, k).value
    if left > right:
        raise Undecidable("ladder interval is inverted; hypotheses do not hold", r=r, k=k)
    return left, right


def s_interval(src: TermSource, r: int) -> Tuple[Fraction, Fraction]:
    """[S_(2r), S_(2r-1)]."""
    if r < 1:
        raise OutOfRange("r must be >= 1", r=r)
    exact = with_backend(src, "exact")
    return partial_sum(exact, 2 * r), partial_sum(exact, 2 * r - 1)


def nested_chain(src: TermSource, r: int, k: int) -> List[Tuple[Fraction, Fraction]]:
    """[S_2r, S_2r-1] ⊇ [T_2r, T_2r-1] ⊇ [T'_2r, T'_2r-1] ⊇ ... ⊇ [T^(k)_2r, T^(k)_2r-1]."""
    _check_k(k)
    return [s_interval(src, r)] + [t_interval(src, r, j) for j in range(k + 1)]


# =========================
# True remainders
# =========================
def true_remainder(src: TermSource, n: int) -> TrueRemainder:
    exact = with_backend(src, "exact")
    limit = exact.spec.known_limit
    if not limit:
        raise NoKnownLimit(f"series {exact.spec.id} has no known limit", series=exact.spec.id)
    ref = reference_value(limit)
    value = ref.value - partial_sum(exact, n)
    if value > ref.abs_error_bound:
        sign = 1
    elif value < -ref.abs_error_bound:
        sign = -1
    else:
        raise Undecidable("remainder is below the reference constant's resolution", n=n)
    return TrueRemainder(n, value, ref.abs_error_bound, sign)


def _true_below(src: TermSource, n: int, eps: Fraction) -> bool:
    """|L - S_n| < eps, decided with unreduced integers against the reference constant."""
    ref = reference_value(src.spec.known_limit or "")
    p, q = partial_sum_pair(src, n)
    # |ref - p/q| scaled by q
    gap = abs(ref.value * q - p)
    slack = ref.abs_error_bound * q
    if gap + slack < eps * q:
        return True
    if gap - slack >= eps * q:
        return False
    raise Undecidable("eps is within the reference constant's resolution of |R_n|", n=n, eps=eps)


# =========================
# Solvers
# =========================
def _gallop(pred: Callable[[int], bool], start: int, guard: int) -> Optional[int]:
    """
    Smallest n >= start with pred(n), for pred monotone (False...False True...True).
    Exponential probing, then bisection.
    """
    if pred(start):
        return start
    lo, step = start, 1
    while True:
        hi = min(start + step, guard)
        if pred(hi):
            break
        if hi >= guard:
            return None
        lo, step = hi, step * 2
    logger.debug("gallop bracket (%d, %d]", lo, hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _scan(pred: Callable[[int], bool], start: int, stop: int) -> Optional[int]:
    for n in range(start, stop + 1):
        if pred(n):
            return n
    return None


def first_n_guaranteed(src: TermSource, eps: Fraction, method: Method) -> int:
    """Smallest n whose certified interval proves |R_n| < eps."""
    if eps <= 0:
        raise OutOfRange("eps must be positive", eps=eps)
    if method.name == "true":
        return first_n_true(src, eps)
    exact = with_backend(src, "exact")
    start = 0 if method.name == "leibniz" else 1

    def ok(n: int) -> bool:
        return remainder_interval(exact, n, method).certifies_below(eps)

    if exact.spec.completely_monotone:
        n = _gallop(ok, start, EXACT_TERM_GUARD)
    else:
        # sampled: linear scan while the window still has enough terms
        n = None
        for cand in range(start, EXACT_TERM_GUARD + 1):
            try:
                if ok(cand):
                    n = cand
                    break
            except OutOfRange:
                break
    if n is None:
        raise Unreachable(f"eps = {eps} not certified within the available range", eps=eps, method=method.tag)
    logger.debug("first_n_guaranteed(%s, %s, %s) = %d", src.spec.id, eps, method.tag, n)
    return n


def first_n_true(src: TermSource, eps: Fraction) -> int:
    """
    Smallest n with |L - S_n| < eps. For built-in families |R_n| is strictly
    decreasing (|R_n| + |R_(n+1)| = a_(n+1) and |R_n| > a_(n+1)/2), so galloping is valid.
    """
    exact = with_backend(src, "exact")
    if not exact.spec.known_limit:
        raise NoKnownLimit(f"series {exact.spec.id} has no known limit", series=exact.spec.id)
    if eps <= Fraction(1, 10**TRUE_EPS_FLOOR_EXP):
        raise OutOfRange(f"eps must exceed 1e-{TRUE_EPS_FLOOR_EXP}", eps=eps)

    def ok(n: int) -> bool:
        return _true_below(exact, n, eps)

    if exact.spec.completely_monotone:
        n = _gallop(ok, 0, EXACT_TERM_GUARD)
    else:
        n = _scan(ok, 0, exact.spec.length or 0)
    if n is None:
        raise Unreachable(f"eps = {eps} not reached within the exact guard", eps=eps)
    logger.debug("first_n_true(%s, %s) = %d", src.spec.id, eps, n)
    return n
