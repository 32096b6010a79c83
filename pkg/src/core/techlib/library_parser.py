# src/core/techlib/library_parser.py
import logging
import re
from typing import Dict, Optional

from src.core.errors import ParseError, UnresolvedCellError
from src.models.library import CellKind, CellSpec, Library

logger = logging.getLogger(__name__)

IDENT = re.compile(r"^[A-Za-z0-9_]+$")
FF_REQUIRED = ("setup", "hold", "cq")
FF_OPTIONAL = ("cqmin", "tau", "tw")
COMB_REQUIRED = ("delay", "inputs")
COMB_OPTIONAL = ("dmin",)


def _fields(tokens, required, optional, line_no) -> Dict[str, str]:
    values: Dict[str, str] = {}
    for token in tokens:
        if "=" not in token:
            raise ParseError(f"expected KEY=VALUE, got '{token}'", line_no)
        key, value = token.split("=", 1)
        if key not in required and key not in optional:
            raise ParseError(f"unknown field '{key}'", line_no)
        if key in values:
            raise ParseError(f"duplicate field '{key}'", line_no)
        values[key] = value
    missing = [k for k in required if k not in values]
    if missing:
        raise ParseError(f"missing field(s) {', '.join(missing)}", line_no)
    return values


def _time(values: Dict[str, str], key: str, line_no: int) -> Optional[float]:
    if key not in values:
        return None
    try:
        value = float(values[key])
    except ValueError:
        raise ParseError(f"{key}: expected a number, got '{values[key]}'", line_no) from None
    if value < 0:
        raise ParseError(f"negative time {key}={value}", line_no)
    return value


def parse_library(text: str, source: str = "") -> Library:
    """Parse a `.tlib` library; cq_min and delay_min default to their max values"""
    name = None
    cells: Dict[str, CellSpec] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive = tokens[0]
        try:
            if name is None:
                if directive != "library" or len(tokens) != 2 or not IDENT.match(tokens[1]):
                    raise ParseError("'library NAME' must be the first directive", line_no)
                name = tokens[1]
                continue
            if directive not in ("ff", "comb"):
                raise ParseError(f"unknown directive '{directive}'", line_no)
            if len(tokens) < 2 or not IDENT.match(tokens[1]):
                raise ParseError(f"usage: {directive} NAME KEY=VALUE ...", line_no)
            cell_name = tokens[1]
            if cell_name in cells:
                raise ParseError(f"duplicate cell '{cell_name}'", line_no)

            if directive == "ff":
                values = _fields(tokens[2:], FF_REQUIRED, FF_OPTIONAL, line_no)
                cq = _time(values, "cq", line_no)
                cq_min = _time(values, "cqmin", line_no)
                cq_min = cq if cq_min is None else cq_min
                if cq_min > cq:
                    raise ParseError(f"cqmin {cq_min} exceeds cq {cq}", line_no)
                tau = _time(values, "tau", line_no)
                tw = _time(values, "tw", line_no)
                for key, value in (("tau", tau), ("tw", tw)):
                    if value is not None and value <= 0:
                        raise ParseError(f"{key} must be positive", line_no)
                cells[cell_name] = CellSpec(
                    cell_name, CellKind.SEQUENTIAL,
                    setup=_time(values, "setup", line_no),
                    hold=_time(values, "hold", line_no),
                    cq_max=cq, cq_min=cq_min, tau=tau, tw=tw,
                )
            else:
                values = _fields(tokens[2:], COMB_REQUIRED, COMB_OPTIONAL, line_no)
                delay = _time(values, "delay", line_no)
                dmin = _time(values, "dmin", line_no)
                dmin = delay if dmin is None else dmin
                if dmin > delay:
                    raise ParseError(f"dmin {dmin} exceeds delay {delay}", line_no)
                try:
                    inputs = int(values["inputs"])
                except ValueError:
                    raise ParseError(f"inputs: expected an integer, got '{values['inputs']}'", line_no) from None
                if inputs < 1:
                    raise ParseError("inputs must be at least 1", line_no)
                cells[cell_name] = CellSpec(
                    cell_name, CellKind.COMBINATIONAL,
                    delay_max=delay, delay_min=dmin, inputs=inputs,
                )
        except ParseError as e:
            raise ParseError(e.message, e.line, source) from None

    if name is None:
        raise ParseError("empty library (no library directive)", None, source)
    logger.debug(f"Parsed library {name} with {len(cells)} cells")
    return Library(name, cells)


def serialize_library(lib: Library) -> str:
    lines = [f"library {lib.name}"]
    for cell in lib.cells.values():
        if cell.is_sequential:
            line = (f"ff {cell.name} setup={cell.setup!r} hold={cell.hold!r} "
                    f"cq={cell.cq_max!r} cqmin={cell.cq_min!r}")
            if cell.tau is not None:
                line += f" tau={cell.tau!r}"
            if cell.tw is not None:
                line += f" tw={cell.tw!r}"
        else:
            line = (f"comb {cell.name} delay={cell.delay_max!r} "
                    f"dmin={cell.delay_min!r} inputs={cell.inputs}")
        lines.append(line)
    return "\n".join(lines) + "\n"


def lookup(lib: Library, cell: str) -> CellSpec:
    spec = lib.cells.get(cell)
    if spec is None:
        raise UnresolvedCellError(cell, lib.name)
    return spec
