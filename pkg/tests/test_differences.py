from fractions import Fraction

import pytest

from altsum.app.errors import GuardExceeded, HypothesisRefused, UsageError
from altsum.app.services.differences import (
    binomial_difference,
    build_table,
    check_monotone_decreasing,
    closed_form_delta,
    closed_form_delta_pi4,
    forward_difference,
    require_hypotheses,
)
from altsum.app.services.terms import parse_series


def _sampled(tmp_path, values):
    path = tmp_path / "terms.txt"
    path.write_text("\n".join(values) + "\n", encoding="utf-8")
    return parse_series(f"file:{path}")


def test_table_shape_and_values():
    table = build_table(parse_series("pi4"), 1, 4, 2)
    assert [len(row) for row in table.rows] == [4, 3, 2]
    assert table.value(0, 2) == Fraction(1, 3)
    assert table.value(1, 1) == Fraction(2, 3)
    assert table.value(2, 1) == Fraction(8, 15)
    assert len(list(table.cells())) == 9


def test_table_needs_width_above_order():
    with pytest.raises(UsageError):
        build_table(parse_series("pi4"), 1, 3, 3)


def test_order_guard():
    with pytest.raises(GuardExceeded):
        forward_difference(parse_series("ln2"), 65, 1)


@pytest.mark.parametrize("sid", ["pi4", "ln2", "eta2", "eta3"])
def test_recurrence_matches_binomial_sum(sid):
    src = parse_series(sid)
    for r in range(11):
        for n in range(1, 21):
            assert forward_difference(src, r, n) == binomial_difference(src, r, n)


def test_closed_forms():
    pi4 = parse_series("pi4")
    for n in range(31):
        assert closed_form_delta_pi4(n) == forward_difference(pi4, n, 1)
        assert closed_form_delta_pi4(n) == binomial_difference(pi4, n, 1)
    ln2 = parse_series("ln2")
    for r in range(8):
        for n in range(1, 8):
            assert closed_form_delta(ln2.spec, r, n) == forward_difference(ln2, r, n)
    with pytest.raises(UsageError):
        closed_form_delta(parse_series("eta2").spec, 1, 1)


def test_float_table_tracks_exact():
    exact = build_table(parse_series("pi4"), 1, 8, 5)
    approx = build_table(parse_series("pi4", "float64"), 1, 8, 5)
    for (_, _, e), (_, _, a) in zip(exact.cells(), approx.cells()):
        assert a == pytest.approx(float(e), rel=1e-12)


def test_catalog_is_certified_by_family():
    verdict = check_monotone_decreasing(parse_series("eta3"), 10, (1, 50))
    assert verdict.status == "certified_by_family"


def test_window_pass(tmp_path):
    src = _sampled(tmp_path, ["1", "1/10", "1/11"])
    assert check_monotone_decreasing(src, 1, (1, 1)).status == "window_pass"


def test_window_fail_names_order_and_index(tmp_path):
    src = _sampled(tmp_path, ["1", "1/3", "1/2", "1/4", "1/5"])
    verdict = check_monotone_decreasing(src, 1, (1, 2))
    assert (verdict.status, verdict.order, verdict.n) == ("window_fail", 0, 2)
    with pytest.raises(HypothesisRefused) as info:
        require_hypotheses(src, 1, (1, 2))
    assert info.value.kind == "hypothesis_failed"
    assert info.value.context["n"] == 2


def test_second_order_failure(tmp_path):
    # decreasing, but the first differences are not
    src = _sampled(tmp_path, ["1", "9/10", "1/2", "2/5", "1/10"])
    verdict = check_monotone_decreasing(src, 1, (1, 3))
    assert verdict.status == "window_fail"
    assert verdict.order == 1


def test_small_tables():
    assert build_table(parse_series("pi4"), 1, 3, 1).rows[1][0] == Fraction(2, 3)
    assert build_table(parse_series("ln2"), 1, 3, 2).rows[2][0] == Fraction(1, 3)
    assert forward_difference(parse_series("ln2"), 1, 1) == Fraction(1, 2)
    assert closed_form_delta_pi4(0) == 1
    assert closed_form_delta_pi4(1) == Fraction(2, 3)
    assert Fraction(285, 10**7) < closed_form_delta_pi4(13) / 2**13 < Fraction(292, 10**7)


def test_window_pass_on_harmonic_samples(tmp_path):
    src = _sampled(tmp_path, ["1", "1/2", "1/3", "1/4"])
    assert check_monotone_decreasing(src, 1, (1, 2)).status == "window_pass"


@pytest.mark.parametrize("sid", ["pi4", "ln2", "eta2"])
def test_every_table_cell_matches_the_recurrence(sid):
    src = parse_series(sid)
    table = build_table(src, 3, 9, 6)
    for r, n, value in table.cells():
        assert value == forward_difference(src, r, n)
