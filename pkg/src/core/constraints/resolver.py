# src/core/constraints/resolver.py
import logging
from dataclasses import replace
from typing import Dict, List, Set

import networkx as nx

from src.core.errors import ConstraintError
from src.models.constraints import ConstraintSet
from src.models.netlist import Netlist, PortDirection

logger = logging.getLogger(__name__)


def _clock_roots(n: Netlist, net: str, clock_ports: Dict[str, str]) -> Set[str]:
    """Clocks reaching `net` backward through combinational drivers only"""
    # a flip-flop output is a generated clock, which is not supported
    reach = nx.ancestors(n.comb_graph, net) | {net}
    return {clock_ports[source] for source in reach if source in clock_ports}


def resolve(raw: ConstraintSet, n: Netlist) -> ConstraintSet:
    """
    Bind every constraint reference to the netlist and assign each flip-flop
    its clock domain.

    Raises:
        ConstraintError: listing every unresolved reference
    """
    problems: List[str] = []
    clock_names = {c.name for c in raw.clocks}

    clock_ports: Dict[str, str] = {}
    for clk in raw.clocks:
        port = n.port_by_name.get(clk.source_port)
        if port is None or port.direction is not PortDirection.IN:
            problems.append(f"clock {clk.name}: unknown input port {clk.source_port}")
            continue
        if clk.source_port in clock_ports:
            problems.append(f"port {clk.source_port} carries two clocks")
            continue
        clock_ports[clk.source_port] = clk.name

    for table, direction, label in (
        (raw.input_delays, PortDirection.IN, "set_input_delay"),
        (raw.output_delays, PortDirection.OUT, "set_output_delay"),
    ):
        for port_name, io in sorted(table.items()):
            port = n.port_by_name.get(port_name)
            if port is None or port.direction is not direction:
                problems.append(f"{label}: unknown port {port_name}")
            if io.clock not in clock_names:
                problems.append(f"{label} on {port_name}: unknown clock {io.clock}")

    for a, b in sorted(raw.false_paths):
        for clk in (a, b):
            if clk not in clock_names:
                problems.append(f"set_false_path: unknown clock {clk}")

    for (src, dst), mult in sorted(raw.multicycle.items()):
        for inst in (src, dst):
            if inst not in n.ff_by_name:
                problems.append(f"set_multicycle_path: unknown flip-flop {inst}")
        if mult < 1:
            problems.append(f"set_multicycle_path {src} -> {dst}: multiplier must be >= 1")

    domains: Dict[str, str] = {}
    for ff in n.ffs:
        roots = _clock_roots(n, ff.clk, clock_ports)
        if not roots:
            problems.append(f"unconstrained clock: flip-flop {ff.name} (clock net {ff.clk}) is not reached by any create_clock")
        elif len(roots) > 1:
            problems.append(f"flip-flop {ff.name} is clocked by several clocks: {', '.join(sorted(roots))}")
        else:
            domains[ff.name] = next(iter(roots))

    if problems:
        for p in problems:
            logger.error(f"Constraint resolution failed: {p}")
        raise ConstraintError("; ".join(problems))

    logger.info(f"Resolved {len(raw.clocks)} clocks over {len(domains)} flip-flops")
    return replace(raw, domains=domains, resolved=True)


def domain_of(cs: ConstraintSet, ff: str) -> str:
    if not cs.resolved:
        raise ConstraintError("constraints are not resolved against a netlist")
    try:
        return cs.domains[ff]
    except KeyError:
        raise ConstraintError(f"unknown flip-flop {ff}") from None
