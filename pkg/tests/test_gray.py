# tests/test_gray.py
import pytest

from src.core.cdc.gray import (bin_to_gray, check_gray_sequence, gray_sequence, gray_to_bin, parse_word,
                               read_trace)
from src.core.errors import ParseError, TimingLensError


def test_conversion_examples():
    assert bin_to_gray(0, 4) == 0
    assert bin_to_gray(5, 3) == 7
    assert gray_to_bin(7, 3) == 5
    assert gray_to_bin(0, 3) == 0


def test_msb_preserved():
    for x in range(16):
        assert bin_to_gray(x, 4) >> 3 == x >> 3


@pytest.mark.parametrize("width", range(1, 13))
def test_bijection_and_single_bit_steps(width):
    codes = gray_sequence(width)
    assert sorted(codes) == list(range(1 << width))
    assert [gray_to_bin(g, width) for g in codes] == list(range(1 << width))
    assert check_gray_sequence(codes, width) is None


def test_wide_words():
    x = (1 << 63) + 12345
    assert gray_to_bin(bin_to_gray(x, 64), 64) == x


@pytest.mark.parametrize("x, width", [(8, 3), (-1, 4), (0, 0), (0, 65)])
def test_out_of_range(x, width):
    with pytest.raises(TimingLensError):
        bin_to_gray(x, width)


def test_sequence_violations():
    assert check_gray_sequence([0, 1, 2], 2) == 1
    assert check_gray_sequence([5], 3) is None
    # full cycle whose wrap step flips two bits
    assert check_gray_sequence([0, 1, 3, 2], 2) is None
    assert check_gray_sequence([0, 1, 3, 7, 6, 4, 5, 2], 3) == 6
    assert check_gray_sequence([1, 3, 2, 0], 2) is None
    assert check_gray_sequence([0, 1, 3, 2, 6, 4, 5, 7], 3) == 7
    # partial sequences never check the wrap
    assert check_gray_sequence([0, 1, 3], 2) is None
    with pytest.raises(TimingLensError):
        check_gray_sequence([], 2)


@pytest.mark.parametrize("token, value", [
    ("0x1f", 31), ("0b101", 5), ("101", 5), ("ff", 255), ("0", 0), ("1_0", 2), ("12", 18),
])
def test_parse_word(token, value):
    assert parse_word(token) == value


def test_trace_files(designs):
    gray = read_trace((designs / "gray4.trace").read_text())
    assert len(gray) == 16
    assert check_gray_sequence(gray, 4) is None
    binary = read_trace((designs / "binary_count.trace").read_text())
    assert check_gray_sequence(binary, 4) == 1


def test_trace_error_names_line():
    with pytest.raises(ParseError) as exc:
        read_trace("0x1\n# note\nzz\n", "t.trace")
    assert exc.value.line == 3
    assert "t.trace" in str(exc.value)
