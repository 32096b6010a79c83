# src/core/netlist/fanin.py
from typing import List, Optional, Set

import networkx as nx

from src.core.errors import CombinationalLoopError, NetlistError
from src.models.netlist import Netlist


def pin_net(n: Netlist, pin: str) -> str:
    """Net attached to an instance input pin (`INST/D`, `INST/CK`, `INST/I<k>`) or output port"""
    if "/" not in pin:
        port = n.port_by_name.get(pin)
        if port is None:
            raise NetlistError(f"unknown pin {pin}")
        return port.name
    inst, pin_name = pin.split("/", 1)
    ff = n.ff_by_name.get(inst)
    if ff is not None:
        if pin_name == "D":
            return ff.d
        if pin_name == "CK":
            return ff.clk
        raise NetlistError(f"{pin} is not an input pin")
    gate = n.gate_by_name.get(inst)
    if gate is not None and pin_name.startswith("I") and pin_name[1:].isdigit():
        idx = int(pin_name[1:])
        if idx < len(gate.inputs):
            return gate.inputs[idx]
    raise NetlistError(f"unknown pin {pin}")


def combinational_cycle(graph: nx.DiGraph) -> Optional[List[str]]:
    """Gates around one combinational loop, closed on the first gate; None when acyclic"""
    try:
        edges = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return None
    gates = [graph.edges[u, v]["gate"] for u, v in edges]
    return gates + [gates[0]]


def fanin_cone(n: Netlist, pin: str) -> Set[str]:
    """
    Start points (flip-flop `Q` pins and input ports) reaching `pin` through
    combinational gates only. Never crosses a flip-flop.
    """
    net = pin_net(n, pin)
    g = n.comb_graph
    cone = nx.ancestors(g, net) | {net}
    cycle = combinational_cycle(g.subgraph(cone))
    if cycle is not None:
        raise CombinationalLoopError(cycle)
    sources: Set[str] = set()
    for member in cone:
        driver = n.driver_of(member)
        if driver is not None and driver.kind != "gate":
            sources.add(driver.pin)
    return sources
