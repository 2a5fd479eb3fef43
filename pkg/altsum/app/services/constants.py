"""
Independent generators for the reference constants.

Every generator returns (value, bound) with |true - value| <= bound, computed in
exact rationals. `certify` only emits digits on which two unrelated generators
agree, which is how the bundled data file was produced.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from altsum.app.errors import Undecidable, UnknownName
from altsum.core.config import CERTIFIED_DIGITS_MIN

logger = logging.getLogger(__name__)

Enclosure = Tuple[Fraction, Fraction]

# extra decimal digits carried beyond the requested precision
_GUARD_DIGITS = 10


def arctan_inverse(x: int, digits: int) -> Enclosure:
    """
    atan(1/x) = sum (-1)^k / ((2k+1) x^(2k+1)); alternating with decreasing terms,
    so the tail is bounded by the first omitted term.
    """
    target = Fraction(1, 10 ** (digits + _GUARD_DIGITS))
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        if term < target:
            return total, term
        total += term if k % 2 == 0 else -term
        k += 1


def atanh_inverse(x: int, digits: int) -> Enclosure:
    """atanh(1/x) = sum 1/((2k+1) x^(2k+1)); tail <= next term / (1 - 1/x^2)."""
    target = Fraction(1, 10 ** (digits + _GUARD_DIGITS))
    ratio = 1 - Fraction(1, x * x)
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        tail = term / ratio
        if tail < target:
            return total, tail
        total += term
        k += 1


def pi_over_4_machin(digits: int) -> Enclosure:
    a, ea = arctan_inverse(5, digits + 1)
    b, eb = arctan_inverse(239, digits + 1)
    return 4 * a - b, 4 * ea + eb


def pi_over_4_euler_arctan(digits: int) -> Enclosure:
    a, ea = arctan_inverse(2, digits + 1)
    b, eb = arctan_inverse(3, digits + 1)
    return a + b, ea + eb


def ln2_atanh(digits: int) -> Enclosure:
    v, e = atanh_inverse(3, digits + 1)
    return 2 * v, 2 * e


def ln2_binary_series(digits: int) -> Enclosure:
    """ln 2 = sum_{k>=1} 1/(k 2^k); the tail after K terms is below 1/((K+1) 2^K)."""
    target = Fraction(1, 10 ** (digits + _GUARD_DIGITS))
    total = Fraction(0)
    k = 1
    while True:
        tail = Fraction(1, k * 2 ** (k - 1))
        if tail < target:
            return total, tail
        total += Fraction(1, k * 2**k)
        k += 1


GENERATORS: Dict[str, List[Tuple[str, Callable[[int], Enclosure]]]] = {
    "pi_over_4": [
        ("machin: 4*atan(1/5)-atan(1/239)", pi_over_4_machin),
        ("euler_arctan: atan(1/2)+atan(1/3)", pi_over_4_euler_arctan),
    ],
    "ln2": [
        ("atanh: 2*atanh(1/3)", ln2_atanh),
        ("binary_series: sum 1/(k*2^k)", ln2_binary_series),
    ],
}

# how the primary generator bounds its truncation error
TAIL_BOUNDS: Dict[str, str] = {
    "pi_over_4": "alternating tail bound",
    "ln2": "geometric tail bound",
}


def truncated_digits(value: Fraction, bound: Fraction, digits: int) -> str:
    """
    Decimal truncation valid for every point of [value - bound, value + bound];
    refuses when the enclosure straddles a digit boundary.
    """
    scale = 10**digits
    lo = (value - bound) * scale
    hi = (value + bound) * scale
    if lo < 0:
        raise Undecidable("only non-negative constants are supported", digits=digits)
    t_lo, t_hi = lo.numerator // lo.denominator, hi.numerator // hi.denominator
    if t_lo != t_hi:
        raise Undecidable("enclosure straddles a digit boundary", digits=digits)
    body = str(t_lo).rjust(digits + 1, "0")
    return f"{body[:-digits]}.{body[-digits:]}"


def certify(name: str, digits: int) -> str:
    if name not in GENERATORS:
        raise UnknownName(f"no generators for {name!r}", name=name)
    if digits < CERTIFIED_DIGITS_MIN:
        raise Undecidable(f"need at least {CERTIFIED_DIGITS_MIN} digits", digits=digits)

    strings = []
    for label, gen in GENERATORS[name]:
        value, bound = gen(digits)
        strings.append(truncated_digits(value, bound, digits))
        logger.debug("%s via %s: bound %.3e", name, label, float(bound))

    if len(set(strings)) != 1:
        raise Undecidable(f"independent methods disagree for {name}", name=name)
    return strings[0]


def data_line(name: str, digits: int) -> str:
    first, second = (label for label, _ in GENERATORS[name])
    provenance = f"{first} in exact rationals, {TAIL_BOUNDS[name]}; cross-checked by {second}"
    return f"{name} {certify(name, digits)} {provenance}"
