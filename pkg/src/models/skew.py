# src/models/skew.py
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import networkx as nx

from src.models.timing import SkewTable

ANCHOR = "@anchor"


@dataclass(frozen=True)
class SkewConstraint:
    """s_u - s_v <= weight"""
    u: str
    v: str
    weight: float
    provenance: str


@dataclass
class SkewConstraintGraph:
    """
    Difference constraints as a weighted digraph: s_u - s_v <= w is the
    edge v -> u with weight w, so shortest distances from the anchor are a
    feasible schedule.
    """
    graph: nx.DiGraph
    clock: str
    period: float
    bound: float
    registers: Tuple[str, ...]
    constraints: List[SkewConstraint] = field(default_factory=list)


@dataclass(frozen=True)
class SkewSchedule:
    skews: Dict[str, float]
    period: float
    bound: float

    def table(self) -> SkewTable:
        return SkewTable(dict(self.skews))


@dataclass(frozen=True)
class Infeasible:
    """Negative cycle over the constraint graph, in traversal order"""
    witness: Tuple[str, ...]
    period: float

    def __str__(self) -> str:
        return f"infeasible at period {self.period:.3f} ns: cycle {' -> '.join(self.witness)}"
