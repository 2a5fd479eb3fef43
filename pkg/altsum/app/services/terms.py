from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from altsum.app.errors import GuardExceeded, NotExact, OutOfRange, UsageError
from altsum.app.services.numerics import Scalar, parse_rational, to_float
from altsum.core.config import EXACT_TERM_GUARD, FLOAT_TERM_GUARD

logger = logging.getLogger(__name__)

Backend = Literal["exact", "float64"]
BACKENDS = ("exact", "float64")


# =========================
# Families
# =========================
@dataclass(frozen=True)
class ReciprocalLinear:
    """a_n = 1/(c + d(n-1))"""

    c: Fraction
    d: Fraction

    kind = "reciprocal_linear"

    def __post_init__(self):
        if self.c <= 0 or self.d <= 0:
            raise UsageError("reciprocal_linear needs c > 0 and d > 0", c=self.c, d=self.d)

    def exact(self, n: int) -> Fraction:
        return 1 / (self.c + self.d * (n - 1))

    def approx(self, n: int) -> float:
        return to_float(self.exact(n))

    def shift(self, m: int) -> "ReciprocalLinear":
        return ReciprocalLinear(self.c + self.d * m, self.d)

    def describe(self) -> str:
        return f"1/({self.c} + {self.d}(n-1))"


@dataclass(frozen=True)
class ReciprocalPower:
    """a_n = 1/(n + offset)^s; offset > 0 only appears for shifted tails."""

    s: Fraction
    offset: int = 0

    kind = "reciprocal_power"

    def __post_init__(self):
        if self.s <= 0 or self.s > 4:
            raise UsageError("reciprocal_power needs 0 < s <= 4", s=self.s)
        if self.offset < 0:
            raise UsageError("offset must be non-negative", offset=self.offset)

    def exact(self, n: int) -> Fraction:
        if self.s.denominator != 1:
            raise NotExact(
                "exact evaluation of 1/n^s needs integer s; use the float64 backend",
                s=self.s,
            )
        return Fraction(1, (n + self.offset) ** self.s.numerator)

    def approx(self, n: int) -> float:
        if self.s.denominator == 1:
            return to_float(self.exact(n))
        return math.pow(n + self.offset, -to_float(self.s))

    def shift(self, m: int) -> "ReciprocalPower":
        return ReciprocalPower(self.s, self.offset + m)

    def describe(self) -> str:
        base = "n" if self.offset == 0 else f"(n + {self.offset})"
        return f"1/{base}^{self.s}"


@dataclass(frozen=True)
class Sampled:
    values: Tuple[Fraction, ...]

    kind = "sampled"

    def __post_init__(self):
        if not self.values:
            raise UsageError("sampled series needs at least one value")
        if any(v <= 0 for v in self.values):
            raise UsageError("sampled values must be strictly positive")

    def exact(self, n: int) -> Fraction:
        if n > len(self.values):
            raise OutOfRange(f"sampled series has {len(self.values)} terms", n=n, length=len(self.values))
        return self.values[n - 1]

    def approx(self, n: int) -> float:
        return to_float(self.exact(n))

    def shift(self, m: int) -> "Sampled":
        if m >= len(self.values):
            raise OutOfRange("shift leaves no sampled terms", m=m, length=len(self.values))
        return Sampled(self.values[m:])

    def describe(self) -> str:
        return f"sampled[{len(self.values)}]"


Family = Union[ReciprocalLinear, ReciprocalPower, Sampled]


@dataclass(frozen=True)
class SeriesSpec:
    id: str
    family: Family
    display_name: str
    known_limit: Optional[str] = None

    @property
    def completely_monotone(self) -> bool:
        # every built-in family is completely monotone in n
        return not isinstance(self.family, Sampled)

    @property
    def length(self) -> Optional[int]:
        if isinstance(self.family, Sampled):
            return len(self.family.values)
        return None


@dataclass(frozen=True)
class TermSource:
    spec: SeriesSpec
    backend: Backend = "exact"

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise UsageError(f"unknown backend {self.backend!r}", backend=self.backend)

    @property
    def hypothesis_order(self) -> Optional[int]:
        """Highest difference order guaranteed monotone; None means every order."""
        return None if self.spec.completely_monotone else 0

    @property
    def exact(self) -> bool:
        return self.backend == "exact"


# =========================
# Catalog
# =========================
_CATALOG: Tuple[SeriesSpec, ...] = (
    SeriesSpec("pi4", ReciprocalLinear(Fraction(1), Fraction(2)), "pi/4 = 1 - 1/3 + 1/5 - ...", "pi_over_4"),
    SeriesSpec("ln2", ReciprocalLinear(Fraction(1), Fraction(1)), "ln 2 = 1 - 1/2 + 1/3 - ...", "ln2"),
    SeriesSpec("eta2", ReciprocalPower(Fraction(2)), "pi^2/12 = 1 - 1/4 + 1/9 - ...", None),
    SeriesSpec("eta3", ReciprocalPower(Fraction(3)), "3 zeta(3)/4 = 1 - 1/8 + 1/27 - ...", None),
)


def catalog() -> List[SeriesSpec]:
    return list(_CATALOG)


def get_series(series_id: str) -> SeriesSpec:
    for spec in _CATALOG:
        if spec.id == series_id:
            return spec
    raise UsageError(f"unknown series {series_id!r}", series=series_id, known=[s.id for s in _CATALOG])


def parse_series(designator: str, backend: Backend = "exact") -> TermSource:
    """
    Designators: `pi4`, `ln2` (and the other catalog ids), `lin:c,d`, `pow:s`,
    `file:<path>` with one positive rational per line.
    """
    d = (designator or "").strip()
    if d.startswith("lin:"):
        parts = d[4:].split(",")
        if len(parts) != 2:
            raise UsageError("expected lin:c,d", series=designator)
        c, dd = (parse_rational(p) for p in parts)
        spec = SeriesSpec(d, ReciprocalLinear(c, dd), f"1/({c} + {dd}(n-1))")
    elif d.startswith("pow:"):
        s = parse_rational(d[4:])
        spec = SeriesSpec(d, ReciprocalPower(s), f"1/n^{s}")
    elif d.startswith("file:"):
        spec = SeriesSpec(d, Sampled(_read_samples(Path(d[5:]))), d[5:])
    else:
        spec = get_series(d)
    return TermSource(spec, backend)


def _read_samples(path: Path) -> Tuple[Fraction, ...]:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise UsageError(f"cannot read samples from {path}: {e}", path=str(path)) from e
    return tuple(parse_rational(line) for line in lines if line.strip() and not line.lstrip().startswith("#"))


def shifted(src: TermSource, m: int) -> TermSource:
    """Tail source b_n = a_{m+n}."""
    if m < 0:
        raise OutOfRange("shift must be non-negative", m=m)
    if m == 0:
        return src
    spec = src.spec
    tail = SeriesSpec(
        id=f"{spec.id}+{m}",
        family=spec.family.shift(m),
        display_name=f"tail of {spec.display_name} after {m} terms",
    )
    return TermSource(tail, src.backend)


def with_backend(src: TermSource, backend: Backend) -> TermSource:
    return src if src.backend == backend else replace(src, backend=backend)


# =========================
# Terms and partial sums
# =========================
def _guard(src: TermSource, n: int) -> None:
    limit = EXACT_TERM_GUARD if src.exact else FLOAT_TERM_GUARD
    if n > limit:
        hint = " (use the float64 backend)" if src.exact else ""
        raise GuardExceeded(f"n = {n} exceeds the {src.backend} guard {limit}{hint}", n=n, guard=limit)


def term(src: TermSource, n: int) -> Scalar:
    if n < 1:
        raise OutOfRange("terms are indexed from 1", n=n)
    if src.exact:
        return src.spec.family.exact(n)
    return src.spec.family.approx(n)


def _split_sum(src: TermSource, lo: int, hi: int) -> Tuple[int, int]:
    """
    Unreduced (p, q) with p/q = sum_{j=lo}^{hi-1} (-1)^(j-1) a_j, by binary splitting.
    """
    if hi - lo == 1:
        a = src.spec.family.exact(lo)
        p = a.numerator if lo % 2 == 1 else -a.numerator
        return p, a.denominator
    mid = (lo + hi) // 2
    p1, q1 = _split_sum(src, lo, mid)
    p2, q2 = _split_sum(src, mid, hi)
    return p1 * q2 + p2 * q1, q1 * q2


def partial_sum_pair(src: TermSource, n: int) -> Tuple[int, int]:
    """S_n as an unreduced integer pair (p, q), q > 0. Exact backend only."""
    if n < 0:
        raise OutOfRange("n must be non-negative", n=n)
    _guard(src, n)
    if n == 0:
        return 0, 1
    return _split_sum(src, 1, n + 1)


@lru_cache(maxsize=512)
def _exact_partial_sum(src: TermSource, n: int) -> Fraction:
    p, q = partial_sum_pair(src, n)
    return Fraction(p, q)


def partial_sum(src: TermSource, n: int) -> Scalar:
    """S_n = sum_{j=1}^{n} (-1)^(j-1) a_j; S_0 = 0."""
    if n < 0:
        raise OutOfRange("n must be non-negative", n=n)
    _guard(src, n)
    if src.exact:
        return _exact_partial_sum(src, n)
    return math.fsum(term(src, j) if j % 2 == 1 else -term(src, j) for j in range(1, n + 1))
