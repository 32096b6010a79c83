# src/core/netlist/netlist_validator.py
import logging
from collections import Counter
from typing import List

from src.core.netlist.fanin import combinational_cycle
from src.models.library import Library
from src.models.netlist import Diagnostic, Netlist, Severity

logger = logging.getLogger(__name__)


def validate(n: Netlist, lib: Library) -> List[Diagnostic]:
    """Check the netlist invariants and cell resolution; empty list means clean"""
    diags: List[Diagnostic] = []

    def error(obj: str, message: str) -> None:
        diags.append(Diagnostic(Severity.ERROR, obj, message))

    names = Counter([f.name for f in n.ffs] + [g.name for g in n.gates])
    for inst, count in sorted(names.items()):
        if count > 1:
            error(inst, "duplicate instance name")
    for port, count in sorted(Counter(p.name for p in n.ports).items()):
        if count > 1:
            error(port, "duplicate port name")

    for ff in n.ffs:
        cell = lib.cells.get(ff.cell)
        if cell is None:
            error(ff.name, f"unresolved cell {ff.cell}")
        elif not cell.is_sequential:
            error(ff.name, f"cell {ff.cell} is not sequential")

    for gate in n.gates:
        cell = lib.cells.get(gate.cell)
        if cell is None:
            error(gate.name, f"unresolved cell {gate.cell}")
        elif cell.is_sequential:
            error(gate.name, f"cell {gate.cell} is not combinational")
        elif cell.inputs != len(gate.inputs):
            error(gate.name, f"cell {gate.cell} expects {cell.inputs} inputs, got {len(gate.inputs)}")

    for net, drivers in sorted(n.drivers.items()):
        if len(drivers) > 1:
            who = ", ".join(d.pin for d in drivers)
            error(net, f"multiple drivers ({who})")

    for net in sorted(n.loads):
        if net not in n.drivers:
            error(net, "undriven net")

    known_nets = set(n.nets)
    for net, delay in sorted(n.net_delays.items()):
        if net not in known_nets:
            error(net, "netdelay on undefined net")
        if delay < 0:
            error(net, f"negative net delay {delay}")

    for bus, members in sorted(n.buses.items()):
        for net in members:
            if net not in known_nets:
                error(bus, f"bus member {net} is not a net")

    cycle = combinational_cycle(n.comb_graph)
    if cycle is not None:
        error(cycle[0], f"combinational loop: {' -> '.join(cycle)}")

    objects = known_nets | set(n.buses) | set(n.ff_by_name) | set(n.gate_by_name)
    for (obj, key) in sorted(n.attrs):
        if obj not in objects:
            diags.append(Diagnostic(Severity.WARNING, obj, f"attribute {key} on unknown object"))

    for d in diags:
        logger.debug(str(d))
    return diags


def errors_only(diags: List[Diagnostic]) -> List[Diagnostic]:
    return [d for d in diags if d.severity is Severity.ERROR]
