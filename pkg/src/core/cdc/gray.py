# src/core/cdc/gray.py
import logging
from typing import List, Optional, Sequence

from src.core.errors import ParseError, TimingLensError

logger = logging.getLogger(__name__)

MAX_WIDTH = 64


def _check_word(x: int, width: int) -> None:
    if not 1 <= width <= MAX_WIDTH:
        raise TimingLensError(f"width must be in 1..{MAX_WIDTH}, got {width}")
    if not 0 <= x < (1 << width):
        raise TimingLensError(f"word {x} out of range for width {width}")


def bin_to_gray(x: int, width: int) -> int:
    _check_word(x, width)
    return (x ^ (x >> 1)) & ((1 << width) - 1)


def gray_to_bin(g: int, width: int) -> int:
    _check_word(g, width)
    x = g
    shift = 1
    while shift < width:
        x ^= x >> shift
        shift <<= 1
    return x


def gray_sequence(width: int) -> List[int]:
    """Gray counter values 0 .. 2**width - 1 in count order"""
    if not 1 <= width <= 24:
        raise TimingLensError(f"sequence width must be in 1..24, got {width}")
    return [bin_to_gray(i, width) for i in range(1 << width)]


def _one_bit_apart(a: int, b: int) -> bool:
    diff = a ^ b
    return diff != 0 and diff & (diff - 1) == 0


def check_gray_sequence(words: Sequence[int], width: int) -> Optional[int]:
    """
    None when every step flips exactly one bit, else the index i of the first
    bad step words[i] -> words[i+1]. The last -> first step is checked only
    for a full cycle (len == 2**width) and reported as index len - 1.
    """
    if not words:
        raise TimingLensError("gray sequence check needs at least one word")
    for word in words:
        _check_word(word, width)
    for i in range(len(words) - 1):
        if not _one_bit_apart(words[i], words[i + 1]):
            return i
    if len(words) == 1 << width and len(words) > 1 and not _one_bit_apart(words[-1], words[0]):
        return len(words) - 1
    return None


def parse_word(token: str, line_no: Optional[int] = None) -> int:
    """`0x`/`0b` prefixes are explicit; bare tokens of only 0/1 are binary, anything else hex"""
    text = token.strip().lower().replace("_", "")
    try:
        if text.startswith("0x"):
            return int(text[2:], 16)
        if text.startswith("0b"):
            return int(text[2:], 2)
        if text and set(text) <= {"0", "1"}:
            return int(text, 2)
        return int(text, 16)
    except ValueError:
        raise ParseError(f"not a binary or hex word: {token!r}", line_no) from None


def read_trace(text: str, source: str = "") -> List[int]:
    """One word per line; `#` comments and blank lines are skipped"""
    words = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            words.append(parse_word(line, line_no))
        except ParseError as e:
            raise ParseError(e.message, e.line, source) from None
    logger.debug(f"Read {len(words)} words from trace {source or '<text>'}")
    return words
