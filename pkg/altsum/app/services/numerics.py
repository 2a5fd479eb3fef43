from __future__ import annotations

import logging
import operator
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Optional, Union

from altsum.app.errors import DivisionByZero, OutOfRange, UnknownName, UsageError
from altsum.core.config import CERTIFIED_DIGITS_MIN, MAX_DIGITS, constants_path

logger = logging.getLogger(__name__)

# Fraction keeps numerator/denominator in lowest terms with a positive denominator.
ExactRational = Fraction
Scalar = Union[Fraction, float]

_BINARY_OPS: Dict[str, Callable[[Fraction, Fraction], Fraction]] = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


@dataclass(frozen=True)
class ReferenceConstant:
    name: str
    value: Fraction
    abs_error_bound: Fraction
    digits: int
    provenance: str

    def lower(self) -> Fraction:
        return self.value - self.abs_error_bound

    def upper(self) -> Fraction:
        return self.value + self.abs_error_bound

    def contained_in(self, left: Fraction, right: Fraction) -> bool:
        """True when the whole uncertainty band of the constant lies in [left, right]."""
        return left <= self.lower() and self.upper() <= right


# =========================
# Exact arithmetic
# =========================
def rational_arith(op: str, x: Fraction, y: Optional[Fraction] = None) -> Union[Fraction, int]:
    """
    Exact kernel operation. `cmp` returns -1/0/1, the others a canonical Fraction.
    Unary ops (neg, abs) ignore y.
    """
    x = Fraction(x)
    if op == "neg":
        return -x
    if op == "abs":
        return abs(x)
    if y is None:
        raise UsageError(f"operation {op!r} needs two operands", op=op)
    y = Fraction(y)
    if op == "cmp":
        return (x > y) - (x < y)
    if op not in _BINARY_OPS:
        raise UsageError(f"unknown operation {op!r}", op=op)
    if op == "div" and y == 0:
        raise DivisionByZero("division by zero", x=x)
    return _BINARY_OPS[op](x, y)


def parse_rational(text: str) -> Fraction:
    """
    `p/q`, integers and decimal/scientific literals, all parsed exactly
    (`5e-5` -> 1/20000, never through a binary float).
    """
    s = (text or "").strip()
    if not s:
        raise UsageError("empty rational literal")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not an exact rational literal: {text!r}", literal=text) from e
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def to_float(x: Fraction) -> float:
    # Fraction.__float__ is correctly rounded (nearest-even).
    return float(x)


def decimal_string(x: Fraction, digits: int) -> str:
    """Round-half-even rendering with exactly `digits` fractional digits."""
    if digits < 0 or digits > MAX_DIGITS:
        raise OutOfRange(f"digits must be in [0, {MAX_DIGITS}]", digits=digits)
    x = Fraction(x)
    scaled = round(x * 10**digits)  # Fraction.__round__ is half-even
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled))
    if digits == 0:
        return sign + body
    body = body.rjust(digits + 1, "0")
    return f"{sign}{body[:-digits]}.{body[-digits:]}"


def places_to_eps(places: int) -> Fraction:
    """Half a unit in the last place: |R| < 5*10^-(d+1) means d correct decimals."""
    if places < 0:
        raise OutOfRange("decimal places must be non-negative", places=places)
    return Fraction(5, 10 ** (places + 1))


# =========================
# Reference constants
# =========================
_LOCK = threading.Lock()
_LOADED: Dict[Path, Dict[str, ReferenceConstant]] = {}


def load_reference_constants(path: Path) -> Dict[str, ReferenceConstant]:
    """
    One constant per line: `<name> <decimal digits> <provenance-note>`.
    Digit strings are truncations, so the true value lies in [value, value + 10^-d].
    """
    out: Dict[str, ReferenceConstant] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 2)
        if len(parts) < 2:
            raise UsageError(f"{path}:{lineno}: expected '<name> <digits> <provenance>'", line=lineno)
        name, digit_str = parts[0], parts[1]
        provenance = parts[2] if len(parts) == 3 else ""
        if "." not in digit_str:
            raise UsageError(f"{path}:{lineno}: digits must be a decimal literal", line=lineno)
        digits = len(digit_str.split(".", 1)[1])
        if digits < CERTIFIED_DIGITS_MIN:
            raise UsageError(
                f"{path}:{lineno}: {name} has {digits} digits, need >= {CERTIFIED_DIGITS_MIN}",
                line=lineno,
            )
        out[name] = ReferenceConstant(
            name=name,
            value=Fraction(digit_str),
            abs_error_bound=Fraction(1, 10**digits),
            digits=digits,
            provenance=provenance,
        )
    logger.debug("loaded %d reference constants from %s", len(out), path)
    return out


def reference_value(name: str) -> ReferenceConstant:
    path = constants_path()
    with _LOCK:
        table = _LOADED.get(path)
        if table is None:
            table = load_reference_constants(path)
            _LOADED[path] = table
    if name not in table:
        raise UnknownName(f"unknown reference constant {name!r}", name=name, known=sorted(table))
    return table[name]
