import math
from fractions import Fraction

import pytest

from altsum.app.errors import GuardExceeded, NotExact, OutOfRange, UsageError
from altsum.app.services.terms import (
    ReciprocalLinear,
    catalog,
    parse_series,
    partial_sum,
    partial_sum_pair,
    shifted,
    term,
    with_backend,
)


def test_catalog_ids_and_limits():
    ids = {s.id: s.known_limit for s in catalog()}
    assert ids == {"pi4": "pi_over_4", "ln2": "ln2", "eta2": None, "eta3": None}


def test_catalog_terms():
    pi4, ln2 = parse_series("pi4"), parse_series("ln2")
    assert term(pi4, 1) == 1
    assert term(pi4, 5000) == Fraction(1, 9999)
    assert term(ln2, 10000) == Fraction(1, 10000)
    assert term(parse_series("eta3"), 2) == Fraction(1, 8)


def test_terms_start_at_one():
    with pytest.raises(OutOfRange):
        term(parse_series("pi4"), 0)


def test_designators():
    assert parse_series("lin:1,2").spec.family == ReciprocalLinear(Fraction(1), Fraction(2))
    assert term(parse_series("pow:2"), 3) == Fraction(1, 9)
    with pytest.raises(UsageError):
        parse_series("lin:1")
    with pytest.raises(UsageError):
        parse_series("lin:0,1")
    with pytest.raises(UsageError):
        parse_series("zeta")


def test_fractional_power_is_float_only():
    src = parse_series("pow:1/2")
    with pytest.raises(NotExact):
        term(src, 4)
    assert term(with_backend(src, "float64"), 4) == pytest.approx(0.5)


def test_sampled_series_from_file(tmp_path):
    path = tmp_path / "terms.txt"
    path.write_text("# head\n1\n1/2\n0.25\n", encoding="utf-8")
    src = parse_series(f"file:{path}")
    assert src.spec.length == 3
    assert not src.spec.completely_monotone
    assert partial_sum(src, 3) == Fraction(3, 4)
    with pytest.raises(OutOfRange):
        term(src, 4)


def test_sampled_values_must_be_positive(tmp_path):
    path = tmp_path / "terms.txt"
    path.write_text("1\n0\n", encoding="utf-8")
    with pytest.raises(UsageError):
        parse_series(f"file:{path}")


def test_partial_sums_small():
    pi4 = parse_series("pi4")
    assert partial_sum(pi4, 0) == 0
    assert partial_sum(pi4, 1) == 1
    assert partial_sum(pi4, 2) == Fraction(2, 3)
    assert partial_sum(pi4, 3) == Fraction(13, 15)


def test_binary_splitting_matches_running_sum():
    src = parse_series("ln2")
    running = Fraction(0)
    for n in range(1, 101):
        running += Fraction(1, n) if n % 2 == 1 else -Fraction(1, n)
        p, q = partial_sum_pair(src, n)
        assert q > 0 and Fraction(p, q) == running


def test_exact_guard():
    with pytest.raises(GuardExceeded) as info:
        partial_sum(parse_series("ln2"), 10**6 + 1)
    assert "float64" in info.value.message


@pytest.mark.parametrize("n", [1, 10, 100, 1000, 10000])
def test_float_partial_sum_close_to_exact(n):
    for sid in ("pi4", "ln2"):
        exact = float(partial_sum(parse_series(sid), n))
        approx = partial_sum(parse_series(sid, "float64"), n)
        assert abs(approx - exact) <= 4 * math.ulp(exact)


def test_shifted_tail():
    pi4 = parse_series("pi4")
    tail = shifted(pi4, 10)
    assert tail.spec.id == "pi4+10"
    assert term(tail, 1) == Fraction(1, 21)
    assert term(shifted(parse_series("eta2"), 3), 1) == Fraction(1, 16)
    assert shifted(pi4, 0) is pi4


@pytest.mark.parametrize("sid", ["pi4", "ln2"])
def test_consecutive_partial_sums_differ_by_one_signed_term(sid):
    src = parse_series(sid)
    for n in range(201):
        sign = 1 if n % 2 == 0 else -1
        assert partial_sum(src, n + 1) - partial_sum(src, n) == sign * term(src, n + 1)


@pytest.mark.parametrize("sid", ["pi4", "ln2"])
def test_catalog_terms_positive_and_strictly_decreasing(sid):
    src = parse_series(sid)
    for n in range(1, 201):
        assert 0 < term(src, n + 1) < term(src, n)
