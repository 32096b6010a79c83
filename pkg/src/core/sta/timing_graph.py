# src/core/sta/timing_graph.py
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Tuple

import networkx as nx

from src.core.errors import CombinationalLoopError, TimingLensError
from src.core.techlib.library_parser import lookup
from src.models.library import Library
from src.models.netlist import Netlist

logger = logging.getLogger(__name__)

STARTPOINT_KINDS = ("ff_ck", "port_in")
ENDPOINT_KINDS = ("ff_d", "port_out")


@dataclass
class TimingGraph:
    """
    Pin-level timing graph. Nodes carry `kind` and `owner`; edges carry
    `delay_min`, `delay_max`, `kind` (cell|net) and the report `label`.
    """
    graph: nx.DiGraph
    netlist: Netlist
    library: Library
    topo_levels: List[List[str]] = field(default_factory=list)
    derate: float = 1.0

    @cached_property
    def order(self) -> List[str]:
        return [node for level in self.topo_levels for node in level]

    @cached_property
    def position(self) -> Dict[str, int]:
        return {node: idx for idx, node in enumerate(self.order)}

    def nodes_of_kind(self, *kinds: str) -> List[str]:
        return sorted(n for n, data in self.graph.nodes(data=True) if data["kind"] in kinds)

    @property
    def startpoints(self) -> List[str]:
        return self.nodes_of_kind(*STARTPOINT_KINDS)

    @property
    def endpoints(self) -> List[str]:
        return self.nodes_of_kind(*ENDPOINT_KINDS)

    def kind(self, node: str) -> str:
        return self.graph.nodes[node]["kind"]

    def owner(self, node: str) -> str:
        return self.graph.nodes[node]["owner"]

    def arc(self, u: str, v: str) -> Dict:
        return self.graph.edges[u, v]

    def propagate(self, source: str, init: float, use_max: bool) -> Tuple[Dict[str, float], Dict[str, str]]:
        """
        Single-source arrival propagation in level order.

        Each node's arrival is its best predecessor arrival plus the arc
        delay, so a path's arrival is accumulated in path order. Ties keep
        the lexicographically first predecessor.
        """
        weight = "delay_max" if use_max else "delay_min"
        reach = nx.descendants(self.graph, source)
        arrival: Dict[str, float] = {source: init}
        pred: Dict[str, str] = {}
        for node in sorted(reach, key=self.position.__getitem__):
            best = None
            best_pred = None
            for u in sorted(self.graph.predecessors(node)):
                if u not in arrival:
                    continue
                value = arrival[u] + self.graph.edges[u, node][weight]
                if best is None or (value > best if use_max else value < best):
                    best, best_pred = value, u
            arrival[node] = best
            pred[node] = best_pred
        return arrival, pred


def _cell_arc(g: nx.DiGraph, u: str, v: str, dmin: float, dmax: float, label: str) -> None:
    g.add_edge(u, v, delay_min=dmin, delay_max=dmax, kind="cell", label=label)


def build_graph(n: Netlist, lib: Library) -> TimingGraph:
    """
    Build and levelize the timing graph of a validated netlist.

    Clock pins are timing startpoints only: the clock network is ideal, so
    nets feeding `CK` pins contribute no arcs.
    """
    g = nx.DiGraph()

    for port in n.input_ports():
        g.add_node(port, kind="port_in", owner=port)
    for port in n.output_ports():
        g.add_node(port, kind="port_out", owner=port)

    for ff in n.ffs:
        cell = lookup(lib, ff.cell)
        g.add_node(f"{ff.name}/CK", kind="ff_ck", owner=ff.name)
        g.add_node(f"{ff.name}/Q", kind="ff_q", owner=ff.name)
        g.add_node(f"{ff.name}/D", kind="ff_d", owner=ff.name)
        _cell_arc(g, f"{ff.name}/CK", f"{ff.name}/Q", cell.cq_min, cell.cq_max, "clock_to_q")

    for gate in n.gates:
        cell = lookup(lib, gate.cell)
        out = f"{gate.name}/O"
        g.add_node(out, kind="gate_out", owner=gate.name)
        for idx in range(len(gate.inputs)):
            pin = f"{gate.name}/I{idx}"
            g.add_node(pin, kind="gate_in", owner=gate.name)
            _cell_arc(g, pin, out, cell.delay_min, cell.delay_max, "logic")

    for net, loads in n.loads.items():
        driver = n.driver_of(net)
        if driver is None:
            continue
        delay = n.net_delay(net)
        for load in loads:
            if load.pin == "CK":
                continue
            g.add_edge(driver.pin, load.pin_name, delay_min=delay, delay_max=delay,
                       kind="net", label="routing")

    if not nx.is_directed_acyclic_graph(g):
        cycle_edges = nx.find_cycle(g)
        owners: List[str] = []
        for u, _ in cycle_edges:
            owner = g.nodes[u]["owner"]
            if not owners or owners[-1] != owner:
                owners.append(owner)
        if owners[0] != owners[-1]:
            owners.append(owners[0])
        raise CombinationalLoopError(owners)

    levels = [sorted(level) for level in nx.topological_generations(g)]
    logger.debug(f"Timing graph for {n.name}: {g.number_of_nodes()} pins, "
                 f"{g.number_of_edges()} arcs, {len(levels)} levels")
    return TimingGraph(graph=g, netlist=n, library=lib, topo_levels=levels)


def apply_derate(tg: TimingGraph, factor: float) -> TimingGraph:
    """Scale every max delay by `factor`; min delays are left untouched"""
    if not factor > 0:
        raise TimingLensError(f"derate factor must be positive, got {factor}")
    g = tg.graph.copy()
    for _, _, data in g.edges(data=True):
        data["delay_max"] = data["delay_max"] * factor
    return TimingGraph(
        graph=g,
        netlist=tg.netlist,
        library=tg.library,
        topo_levels=tg.topo_levels,
        derate=tg.derate * factor,
    )
