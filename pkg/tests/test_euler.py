from fractions import Fraction

import pytest

from altsum.app.errors import GuardExceeded, HypothesisRefused, OutOfRange, Unreachable
from altsum.app.services.bounds import t_value
from altsum.app.services.euler import (
    euler_enclosure,
    euler_partial_sum,
    first_n_euler,
    hybrid_enclosure,
    hybrid_sum,
)
from altsum.app.services.numerics import decimal_string, reference_value
from altsum.app.services.terms import parse_series

LIMITS = {"pi4": "pi_over_4", "ln2": "ln2"}


def test_first_terms_of_pi4():
    src = parse_series("pi4")
    e1 = euler_partial_sum(src, 1)
    assert (e1.value, e1.error_upper) == (Fraction(1, 2), Fraction(1, 3))
    assert e1.tag == "euler(1)" and e1.underestimates and e1.terms_consumed == 1
    assert euler_partial_sum(src, 2).value == Fraction(1, 2) + Fraction(1, 6)


def test_ln2_becomes_the_binary_series():
    src = parse_series("ln2")
    for n in range(1, 16):
        res = euler_partial_sum(src, n)
        assert res.value == sum(Fraction(1, k * 2**k) for k in range(1, n + 1))
        assert res.error_upper == Fraction(1, (n + 1) * 2**n)


@pytest.mark.parametrize("sid", ["pi4", "ln2"])
def test_euler_underestimates_within_bound(sid):
    src = parse_series(sid)
    ref = reference_value(LIMITS[sid])
    for n in range(1, 21):
        res = euler_partial_sum(src, n)
        gap = ref.value - res.value
        assert 0 < gap - ref.abs_error_bound
        assert gap + ref.abs_error_bound <= res.error_upper
        lo, hi = euler_enclosure(src, n)
        assert ref.contained_in(lo, hi)


@pytest.mark.parametrize("sid", ["pi4", "ln2"])
def test_euler_is_the_ladder_at_zero(sid):
    src = parse_series(sid)
    for k in range(1, 21):
        assert euler_partial_sum(src, k).value == t_value(src, 0, k - 1).value


def test_first_n_euler():
    pi4 = parse_series("pi4")
    assert first_n_euler(pi4, Fraction(1, 3)) == 1
    assert first_n_euler(pi4, Fraction(1, 10**15)) == 47
    assert euler_partial_sum(pi4, 46).error_upper > Fraction(1, 10**15)
    with pytest.raises(Unreachable):
        first_n_euler(pi4, Fraction(1, 10**30))
    with pytest.raises(OutOfRange):
        first_n_euler(pi4, Fraction(0))


def test_order_guard():
    with pytest.raises(GuardExceeded):
        euler_partial_sum(parse_series("pi4"), 65)
    with pytest.raises(OutOfRange):
        euler_partial_sum(parse_series("pi4"), 0)


def test_hybrid_without_head_is_plain_euler():
    pi4 = parse_series("pi4")
    assert hybrid_sum(pi4, 0, 13).value == euler_partial_sum(pi4, 13).value


def test_hybrid_direction_follows_head_parity():
    pi4 = parse_series("pi4")
    ref = reference_value("pi_over_4")
    even, odd = hybrid_sum(pi4, 10, 6), hybrid_sum(pi4, 11, 6)
    assert even.underestimates and even.value < ref.lower()
    assert not odd.underestimates and odd.value > ref.upper()
    assert even.tag == "hybrid(10,6)" and even.terms_consumed == 16


@pytest.mark.parametrize("sid", ["pi4", "ln2"])
def test_hybrid_shift_consistency(sid):
    src = parse_series(sid)
    ref = reference_value(LIMITS[sid])
    for m in range(0, 12):
        for j in (2, 5, 9):
            for head, tail in ((m, j), (m + 1, j - 1)):
                lo, hi = hybrid_enclosure(src, head, tail)
                assert ref.contained_in(lo, hi)


def test_hybrid_ln2():
    res = hybrid_sum(parse_series("ln2"), 10, 10)
    ref = reference_value("ln2")
    assert abs(ref.value - res.value) + ref.abs_error_bound <= res.error_upper


def test_float_backend_is_close_to_exact():
    exact = euler_partial_sum(parse_series("pi4"), 13)
    approx = euler_partial_sum(parse_series("pi4", "float64"), 13)
    assert approx.backend == "float64"
    assert approx.value == pytest.approx(float(exact.value), abs=1e-12)
    assert decimal_string(Fraction(approx.value), 8) == "0.78536991"


def test_sampled_hybrid_is_refused(tmp_path):
    path = tmp_path / "terms.txt"
    path.write_text("1\n1/2\n1/3\n1/5\n1/4\n1/6\n1/7\n1/8\n1/9\n", encoding="utf-8")
    with pytest.raises(HypothesisRefused):
        hybrid_sum(parse_series(f"file:{path}"), 2, 3)


def test_short_sample_makes_eps_unreachable(tmp_path):
    path = tmp_path / "terms.txt"
    path.write_text("\n".join(f"1/{n}" for n in range(1, 7)) + "\n", encoding="utf-8")
    with pytest.raises(Unreachable):
        first_n_euler(parse_series(f"file:{path}"), Fraction(1, 10**6))
