from fractions import Fraction

import mpmath
import pytest

from altsum.app.errors import UsageError
from altsum.app.services.constants import GENERATORS, certify, data_line
from altsum.app.services.numerics import load_reference_constants, reference_value
from altsum.core.config import constants_path


@pytest.mark.parametrize("name", ["pi_over_4", "ln2"])
def test_independent_generators_agree(name):
    (_, first), (_, second) = GENERATORS[name]
    v1, e1 = first(60)
    v2, e2 = second(60)
    assert abs(v1 - v2) <= e1 + e2
    assert e1 < Fraction(1, 10**60) and e2 < Fraction(1, 10**60)


@pytest.mark.parametrize("name", ["pi_over_4", "ln2"])
def test_bundled_digits_are_certified(name):
    ref = reference_value(name)
    digits = format(ref.value.numerator * 10**ref.digits // ref.value.denominator)
    assert certify(name, ref.digits) == "0." + digits.rjust(ref.digits, "0")


def test_bundled_digits_match_mpmath():
    with mpmath.workdps(120):
        expected = {"pi_over_4": mpmath.pi / 4, "ln2": mpmath.log(2)}
        for name, value in expected.items():
            ref = reference_value(name)
            approx = mpmath.mpf(ref.value.numerator) / ref.value.denominator
            assert abs(approx - value) <= mpmath.mpf(10) ** (-ref.digits)


def test_data_line_round_trips(tmp_path):
    path = tmp_path / "constants.txt"
    path.write_text(data_line("ln2", 55) + "\n", encoding="utf-8")
    table = load_reference_constants(path)
    assert table["ln2"].digits == 55
    assert "binary_series" in table["ln2"].provenance


def test_short_constants_are_refused(tmp_path):
    path = tmp_path / "constants.txt"
    path.write_text("ln2 0.6931471805 too short\n", encoding="utf-8")
    with pytest.raises(UsageError):
        load_reference_constants(path)


def test_constants_file_override(tmp_path, monkeypatch):
    path = tmp_path / "constants.txt"
    path.write_text(data_line("pi_over_4", 60) + "\n", encoding="utf-8")
    monkeypatch.setenv("ALTSUM_CONSTANTS_FILE", str(path))
    assert reference_value("pi_over_4").digits == 60


def test_generated_lines_reproduce_the_bundled_file():
    bundled = [
        line
        for line in constants_path().read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
    for line in bundled:
        name = line.split()[0]
        assert data_line(name, reference_value(name).digits) == line
