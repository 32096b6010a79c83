# src/core/constraints/sdc_parser.py
import logging
import re
from typing import Dict, List, Optional, Set, Tuple

from src.core.errors import ConstraintError, ParseError
from src.models.constraints import ClockDef, ConstraintSet, IoDelay

logger = logging.getLogger(__name__)

TOKEN = re.compile(r"\[[^\]]*\]|\S+")
QUERY = re.compile(r"^\[\s*(get_ports|get_clks|get_clocks|get_cells|get_pins)\s+([^\s\]]+)\s*\]$")
WILDCARD = re.compile(r"[*?]")
PORT_QUERIES = ("get_ports",)
CLOCK_QUERIES = ("get_clks", "get_clocks")
CELL_QUERIES = ("get_cells",)

class UnsupportedCommand(ConstraintError):
    """A construct outside the supported subset; --lenient skips these"""


SUPPORTED = (
    "create_clock",
    "set_input_delay",
    "set_output_delay",
    "set_false_path",
    "set_multicycle_path",
)


def _logical_lines(text: str) -> List[Tuple[int, str]]:
    """Join backslash continuations and drop comments; keeps the first line number"""
    result: List[Tuple[int, str]] = []
    pending: List[str] = []
    start = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not pending:
            start = line_no
            if line.lstrip().startswith("#"):
                continue
        if line.endswith("\\"):
            pending.append(line[:-1])
            continue
        pending.append(line)
        joined = " ".join(part.strip() for part in pending).strip()
        # trailing `;# comment` form
        joined = re.split(r";\s*#", joined, maxsplit=1)[0].rstrip(";").strip()
        pending = []
        if joined:
            result.append((start, joined))
    if pending:
        joined = " ".join(part.strip() for part in pending).strip()
        if joined:
            result.append((start, joined))
    return result


def _query(token: str, allowed: Tuple[str, ...], line_no: int) -> str:
    match = QUERY.match(token)
    if not match:
        if token.startswith("["):
            raise ParseError(f"malformed query {token}", line_no)
        raise ParseError(f"expected one of {', '.join('[' + q + ' X]' for q in allowed)}, got '{token}'", line_no)
    kind, name = match.groups()
    if kind not in allowed:
        raise ParseError(f"query {kind} not allowed here (expected {' or '.join(allowed)})", line_no)
    if WILDCARD.search(name):
        raise ParseError(f"wildcards are not supported: {name}", line_no)
    return name


def _flags(tokens: List[str], with_value: Set[str], bare: Set[str], line_no: int) -> Tuple[Dict[str, str], List[str]]:
    flags: Dict[str, str] = {}
    positional: List[str] = []
    idx = 0
    while idx < len(tokens):
        token = tokens[idx]
        if token.startswith("-") and not _is_number(token):
            if token in with_value:
                if idx + 1 >= len(tokens):
                    raise ParseError(f"flag {token} needs a value", line_no)
                if token in flags:
                    raise ParseError(f"flag {token} given twice", line_no)
                flags[token] = tokens[idx + 1]
                idx += 2
                continue
            if token in bare:
                flags[token] = ""
                idx += 1
                continue
            raise UnsupportedCommand(f"line {line_no}: unsupported option {token}")
        positional.append(token)
        idx += 1
    return flags, positional


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _number(token: str, what: str, line_no: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"{what}: expected a number, got '{token}'", line_no) from None


def _endpoint(token: str, line_no: int) -> str:
    """Register reference in -from/-to: bare instance name or [get_cells X]"""
    if token.startswith("["):
        return _query(token, CELL_QUERIES, line_no)
    if WILDCARD.search(token):
        raise ParseError(f"wildcards are not supported: {token}", line_no)
    return token


class SdcParser:
    def __init__(self, lenient: bool = False):
        self.lenient = lenient
        self.clocks: List[ClockDef] = []
        self.input_delays: Dict[str, IoDelay] = {}
        self.output_delays: Dict[str, IoDelay] = {}
        self.false_paths: Set[Tuple[str, str]] = set()
        self.multicycle: Dict[Tuple[str, str], int] = {}
        self.warnings: List[str] = []

    def parse(self, text: str, source: str = "") -> ConstraintSet:
        for line_no, line in _logical_lines(text):
            tokens = TOKEN.findall(line)
            command, args = tokens[0], tokens[1:]
            try:
                if command not in SUPPORTED:
                    self._unsupported(f"unknown command '{command}'", line_no)
                    continue
                getattr(self, f"_{command}")(args, line_no)
            except ParseError as e:
                raise ParseError(e.message, e.line, source) from None
            except UnsupportedCommand as e:
                if not self.lenient:
                    raise
                self._unsupported(str(e), line_no)

        return ConstraintSet(
            clocks=tuple(self.clocks),
            input_delays=dict(self.input_delays),
            output_delays=dict(self.output_delays),
            false_paths=frozenset(self.false_paths),
            multicycle=dict(self.multicycle),
            warnings=tuple(self.warnings),
        )

    def _unsupported(self, message: str, line_no: int) -> None:
        if not self.lenient:
            raise UnsupportedCommand(f"line {line_no}: {message}")
        warning = message if message.startswith("line ") else f"line {line_no}: {message}"
        logger.warning(f"Skipping SDC command ({warning})")
        self.warnings.append(warning)

    def _create_clock(self, args: List[str], line_no: int) -> None:
        flags, positional = _flags(args, {"-period", "-name"}, set(), line_no)
        if "-period" not in flags:
            raise ParseError("create_clock requires -period", line_no)
        period = _number(flags["-period"], "-period", line_no)
        if period <= 0:
            raise ParseError(f"clock period must be positive, got {period}", line_no)
        if len(positional) != 1:
            raise ParseError("create_clock needs exactly one [get_ports X] source", line_no)
        port = _query(positional[0], PORT_QUERIES, line_no)
        name = flags.get("-name", port)
        if any(c.name == name for c in self.clocks):
            raise ConstraintError(f"line {line_no}: duplicate clock {name}")
        self.clocks.append(ClockDef(name, period, port, line_no))

    def _io_delay(self, args: List[str], line_no: int, target: Dict[str, IoDelay], command: str) -> None:
        flags, positional = _flags(args, {"-clock"}, set(), line_no)
        if "-clock" not in flags:
            raise ParseError(f"{command} requires -clock", line_no)
        clock = flags["-clock"]
        if clock.startswith("["):
            clock = _query(clock, CLOCK_QUERIES, line_no)
        if len(positional) != 2:
            raise ParseError(f"usage: {command} -clock CLK VALUE [get_ports X]", line_no)
        delay = _number(positional[0], "delay", line_no)
        if delay < 0:
            raise ParseError(f"negative I/O delay {delay}", line_no)
        port = _query(positional[1], PORT_QUERIES, line_no)
        if port in target:
            raise ConstraintError(f"line {line_no}: duplicate {command} on {port}")
        target[port] = IoDelay(clock, delay)

    def _set_input_delay(self, args: List[str], line_no: int) -> None:
        self._io_delay(args, line_no, self.input_delays, "set_input_delay")

    def _set_output_delay(self, args: List[str], line_no: int) -> None:
        self._io_delay(args, line_no, self.output_delays, "set_output_delay")

    def _set_false_path(self, args: List[str], line_no: int) -> None:
        flags, positional = _flags(args, {"-from", "-to"}, set(), line_no)
        if positional or "-from" not in flags or "-to" not in flags:
            raise ParseError("usage: set_false_path -from [get_clks A] -to [get_clks B]", line_no)
        src, dst = flags["-from"], flags["-to"]
        if not (QUERY.match(src) and QUERY.match(src).group(1) in CLOCK_QUERIES):
            raise UnsupportedCommand(f"line {line_no}: unsupported false path endpoint {src} (only clock-to-clock false paths)")
        if not (QUERY.match(dst) and QUERY.match(dst).group(1) in CLOCK_QUERIES):
            raise UnsupportedCommand(f"line {line_no}: unsupported false path endpoint {dst} (only clock-to-clock false paths)")
        pair = (_query(src, CLOCK_QUERIES, line_no), _query(dst, CLOCK_QUERIES, line_no))
        if pair in self.false_paths:
            raise ConstraintError(f"line {line_no}: duplicate false path {pair[0]} -> {pair[1]}")
        self.false_paths.add(pair)

    def _set_multicycle_path(self, args: List[str], line_no: int) -> None:
        flags, positional = _flags(args, {"-from", "-to"}, {"-setup"}, line_no)
        if "-setup" not in flags:
            raise ParseError("set_multicycle_path requires -setup", line_no)
        if len(positional) != 1 or "-from" not in flags or "-to" not in flags:
            raise ParseError("usage: set_multicycle_path -setup N -from REG -to REG", line_no)
        value = _number(positional[0], "multiplier", line_no)
        if value != int(value) or value < 1:
            raise ParseError(f"multicycle multiplier must be an integer >= 1, got {positional[0]}", line_no)
        pair = (_endpoint(flags["-from"], line_no), _endpoint(flags["-to"], line_no))
        if pair in self.multicycle:
            raise ConstraintError(f"line {line_no}: duplicate multicycle path {pair[0]} -> {pair[1]}")
        self.multicycle[pair] = int(value)


def parse_sdc(text: str, lenient: bool = False, source: str = "") -> ConstraintSet:
    """Parse the supported SDC subset into an unresolved ConstraintSet"""
    return SdcParser(lenient=lenient).parse(text, source)


def constraints_to_dict(cs: ConstraintSet) -> Dict:
    """Stable, JSON-ready view of a constraint set"""
    return {
        "clocks": [
            {"name": c.name, "period": c.period, "source_port": c.source_port}
            for c in sorted(cs.clocks, key=lambda c: c.name)
        ],
        "input_delays": {
            port: {"clock": d.clock, "delay": d.delay}
            for port, d in sorted(cs.input_delays.items())
        },
        "output_delays": {
            port: {"clock": d.clock, "delay": d.delay}
            for port, d in sorted(cs.output_delays.items())
        },
        "false_paths": [{"from": a, "to": b} for a, b in sorted(cs.false_paths)],
        "multicycle": [
            {"from": a, "to": b, "setup": n}
            for (a, b), n in sorted(cs.multicycle.items())
        ],
        "domains": dict(sorted(cs.domains.items())),
    }
