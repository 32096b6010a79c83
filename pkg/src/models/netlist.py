# src/models/netlist.py
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import networkx as nx


class PortDirection(Enum):
    IN = "in"
    OUT = "out"


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Port:
    name: str
    direction: PortDirection


@dataclass(frozen=True)
class FfInst:
    name: str
    cell: str
    clk: str
    d: str
    q: str


@dataclass(frozen=True)
class GateInst:
    name: str
    cell: str
    inputs: Tuple[str, ...]
    out: str


@dataclass(frozen=True)
class Driver:
    """What drives a net: an input port, a flip-flop Q or a gate output"""
    kind: str  # "port" | "ff" | "gate"
    name: str

    @property
    def pin(self) -> str:
        if self.kind == "port":
            return self.name
        return f"{self.name}/{'Q' if self.kind == 'ff' else 'O'}"


@dataclass(frozen=True)
class Load:
    kind: str  # "ff" | "gate" | "port"
    name: str
    pin: str   # "D", "CK", "I<k>" or the port name

    @property
    def pin_name(self) -> str:
        if self.kind == "port":
            return self.name
        return f"{self.name}/{self.pin}"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    obj: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.value}: {self.obj}: {self.message}"


@dataclass(frozen=True)
class Netlist:
    """Gate-level design; treat every container as read-only after parse"""
    name: str
    ports: Tuple[Port, ...] = ()
    ffs: Tuple[FfInst, ...] = ()
    gates: Tuple[GateInst, ...] = ()
    net_delays: Dict[str, float] = field(default_factory=dict)
    buses: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    attrs: Dict[Tuple[str, str], str] = field(default_factory=dict)

    @cached_property
    def ff_by_name(self) -> Dict[str, FfInst]:
        return {ff.name: ff for ff in self.ffs}

    @cached_property
    def gate_by_name(self) -> Dict[str, GateInst]:
        return {g.name: g for g in self.gates}

    @cached_property
    def port_by_name(self) -> Dict[str, Port]:
        return {p.name: p for p in self.ports}

    @cached_property
    def drivers(self) -> Dict[str, List[Driver]]:
        """Every driver of every net, in declaration order"""
        result: Dict[str, List[Driver]] = {}
        for port in self.ports:
            if port.direction is PortDirection.IN:
                result.setdefault(port.name, []).append(Driver("port", port.name))
        for ff in self.ffs:
            result.setdefault(ff.q, []).append(Driver("ff", ff.name))
        for gate in self.gates:
            result.setdefault(gate.out, []).append(Driver("gate", gate.name))
        return result

    @cached_property
    def loads(self) -> Dict[str, List[Load]]:
        result: Dict[str, List[Load]] = {}
        for ff in self.ffs:
            result.setdefault(ff.clk, []).append(Load("ff", ff.name, "CK"))
            result.setdefault(ff.d, []).append(Load("ff", ff.name, "D"))
        for gate in self.gates:
            for idx, net in enumerate(gate.inputs):
                result.setdefault(net, []).append(Load("gate", gate.name, f"I{idx}"))
        for port in self.ports:
            if port.direction is PortDirection.OUT:
                result.setdefault(port.name, []).append(Load("port", port.name, port.name))
        return result

    @cached_property
    def comb_graph(self) -> nx.DiGraph:
        """Net-level graph with one edge per gate input (`gate` names the cell instance); flip-flops cut it"""
        g = nx.DiGraph()
        g.add_nodes_from(sorted(set(self.drivers) | set(self.loads)))
        for gate in self.gates:
            for net in gate.inputs:
                g.add_edge(net, gate.out, gate=gate.name)
        return g

    @property
    def nets(self) -> List[str]:
        return sorted(set(self.drivers) | set(self.loads))

    def driver_of(self, net: str) -> Optional[Driver]:
        drivers = self.drivers.get(net)
        return drivers[0] if drivers else None

    def net_delay(self, net: str) -> float:
        return self.net_delays.get(net, 0.0)

    def attr(self, obj: str, key: str) -> Optional[str]:
        return self.attrs.get((obj, key))

    def input_ports(self) -> List[str]:
        return [p.name for p in self.ports if p.direction is PortDirection.IN]

    def output_ports(self) -> List[str]:
        return [p.name for p in self.ports if p.direction is PortDirection.OUT]

    def bus_of(self, net: str) -> Optional[str]:
        for bus, members in sorted(self.buses.items()):
            if net in members:
                return bus
        return None
