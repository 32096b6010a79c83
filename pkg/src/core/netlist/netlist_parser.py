# src/core/netlist/netlist_parser.py
import logging
import re
from typing import Dict, List, Set, Tuple

from src.core.errors import ParseError
from src.models.netlist import FfInst, GateInst, Netlist, Port, PortDirection

logger = logging.getLogger(__name__)

IDENT = re.compile(r"^[A-Za-z0-9_]+$")
FF_KEYS = ("clk", "d", "q")


def _ident(token: str, line_no: int, what: str) -> str:
    if not IDENT.match(token):
        raise ParseError(f"invalid {what} '{token}'", line_no)
    return token


def _key_values(tokens: List[str], line_no: int) -> Dict[str, str]:
    pairs: Dict[str, str] = {}
    for token in tokens:
        if "=" not in token:
            raise ParseError(f"expected KEY=VALUE, got '{token}'", line_no)
        key, value = token.split("=", 1)
        if key in pairs:
            raise ParseError(f"duplicate key '{key}'", line_no)
        pairs[key] = value
    return pairs


def _float(token: str, line_no: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"expected a number, got '{token}'", line_no) from None


def parse_netlist(text: str, source: str = "") -> Netlist:
    """
    Parse the line-oriented `.tnl` netlist format.

    Args:
        text: netlist source
        source: file name used in error messages

    Returns:
        Netlist: structurally complete design (not yet validated)
    """
    name = None
    ports: List[Port] = []
    ffs: List[FfInst] = []
    gates: List[GateInst] = []
    net_delays: Dict[str, float] = {}
    buses: Dict[str, Tuple[str, ...]] = {}
    attrs: Dict[Tuple[str, str], str] = {}
    instances: Set[str] = set()
    port_names: Set[str] = set()

    try:
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            directive = tokens[0]

            if name is None:
                if directive != "design":
                    raise ParseError("'design NAME' must be the first directive", line_no)
                if len(tokens) != 2:
                    raise ParseError("usage: design NAME", line_no)
                name = _ident(tokens[1], line_no, "design name")
                continue

            if directive == "design":
                raise ParseError("duplicate design directive", line_no)

            elif directive == "port":
                if len(tokens) != 3 or tokens[1] not in ("in", "out"):
                    raise ParseError("usage: port in|out NAME", line_no)
                port = _ident(tokens[2], line_no, "port name")
                if port in port_names:
                    raise ParseError(f"duplicate port '{port}'", line_no)
                port_names.add(port)
                ports.append(Port(port, PortDirection(tokens[1])))

            elif directive == "ff":
                if len(tokens) != 6:
                    raise ParseError("usage: ff INST CELL clk=NET d=NET q=NET", line_no)
                inst = _ident(tokens[1], line_no, "instance name")
                cell = _ident(tokens[2], line_no, "cell name")
                pins = _key_values(tokens[3:], line_no)
                missing = [k for k in FF_KEYS if k not in pins]
                if missing:
                    raise ParseError(f"ff {inst} missing {', '.join(k + '=' for k in missing)}", line_no)
                extra = sorted(set(pins) - set(FF_KEYS))
                if extra:
                    raise ParseError(f"ff {inst} has unknown pin '{extra[0]}'", line_no)
                if inst in instances:
                    raise ParseError(f"duplicate instance '{inst}'", line_no)
                instances.add(inst)
                ffs.append(FfInst(
                    inst, cell,
                    clk=_ident(pins["clk"], line_no, "net"),
                    d=_ident(pins["d"], line_no, "net"),
                    q=_ident(pins["q"], line_no, "net"),
                ))

            elif directive == "gate":
                if len(tokens) != 5:
                    raise ParseError("usage: gate INST CELL in=NET[,NET...] out=NET", line_no)
                inst = _ident(tokens[1], line_no, "instance name")
                cell = _ident(tokens[2], line_no, "cell name")
                pins = _key_values(tokens[3:], line_no)
                if set(pins) != {"in", "out"}:
                    raise ParseError(f"gate {inst} needs exactly in= and out=", line_no)
                inputs = tuple(_ident(n, line_no, "net") for n in pins["in"].split(","))
                if inst in instances:
                    raise ParseError(f"duplicate instance '{inst}'", line_no)
                instances.add(inst)
                gates.append(GateInst(inst, cell, inputs, _ident(pins["out"], line_no, "net")))

            elif directive == "netdelay":
                if len(tokens) != 3:
                    raise ParseError("usage: netdelay NET FLOAT_NS", line_no)
                net = _ident(tokens[1], line_no, "net")
                if net in net_delays:
                    raise ParseError(f"duplicate netdelay for '{net}'", line_no)
                net_delays[net] = _float(tokens[2], line_no)

            elif directive == "bus":
                if len(tokens) < 3:
                    raise ParseError("usage: bus BUSNAME NET NET ...", line_no)
                bus = _ident(tokens[1], line_no, "bus name")
                if bus in buses:
                    raise ParseError(f"duplicate bus '{bus}'", line_no)
                buses[bus] = tuple(_ident(n, line_no, "net") for n in tokens[2:])

            elif directive == "attr":
                if len(tokens) != 3 or "=" not in tokens[2]:
                    raise ParseError("usage: attr OBJECT KEY=VALUE", line_no)
                obj = _ident(tokens[1], line_no, "object name")
                key, value = tokens[2].split("=", 1)
                if (obj, key) in attrs:
                    raise ParseError(f"duplicate attribute {key} on '{obj}'", line_no)
                attrs[(obj, key)] = value

            else:
                raise ParseError(f"unknown directive '{directive}'", line_no)
    except ParseError as e:
        if source and not e.source:
            raise ParseError(e.message, e.line, source) from None
        raise

    if name is None:
        raise ParseError("empty netlist (no design directive)", None, source)

    logger.debug(f"Parsed netlist {name}: {len(ffs)} ffs, {len(gates)} gates, {len(ports)} ports")
    return Netlist(
        name=name,
        ports=tuple(ports),
        ffs=tuple(ffs),
        gates=tuple(gates),
        net_delays=net_delays,
        buses=buses,
        attrs=attrs,
    )


def _fmt_ns(value: float) -> str:
    return repr(float(value))


def serialize_netlist(n: Netlist) -> str:
    """Inverse of parse_netlist on the structural content"""
    lines = [f"design {n.name}"]
    lines += [f"port {p.direction.value} {p.name}" for p in n.ports]
    lines += [f"ff {f.name} {f.cell} clk={f.clk} d={f.d} q={f.q}" for f in n.ffs]
    lines += [f"gate {g.name} {g.cell} in={','.join(g.inputs)} out={g.out}" for g in n.gates]
    lines += [f"netdelay {net} {_fmt_ns(d)}" for net, d in n.net_delays.items()]
    lines += [f"bus {bus} {' '.join(nets)}" for bus, nets in n.buses.items()]
    lines += [f"attr {obj} {key}={value}" for (obj, key), value in n.attrs.items()]
    return "\n".join(lines) + "\n"
