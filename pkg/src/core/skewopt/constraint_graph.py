# src/core/skewopt/constraint_graph.py
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx

from src.core.config import settings
from src.core.errors import ConstraintError, TimingLensError
from src.core.sta.analyzer import TimingAnalyzer
from src.core.sta.timing_graph import TimingGraph
from src.models.constraints import ConstraintSet
from src.models.skew import ANCHOR, SkewConstraint, SkewConstraintGraph
from src.models.timing import PathReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TimingPaths:
    """Zero-skew setup and hold reports of a single-domain design"""
    clock: str
    registers: Tuple[str, ...]
    setup: Tuple[PathReport, ...]
    hold: Tuple[PathReport, ...]


def single_clock(cs: ConstraintSet) -> str:
    clocks = sorted(set(cs.domains.values()))
    if len(clocks) > 1:
        raise ConstraintError(f"skew scheduling needs a single clock domain, found {', '.join(clocks)}")
    if not clocks:
        raise ConstraintError("skew scheduling needs at least one clocked flip-flop")
    return clocks[0]


def collect_paths(g: TimingGraph, cs: ConstraintSet) -> TimingPaths:
    clock = single_clock(cs)
    analyzer = TimingAnalyzer(g, cs)
    registers = tuple(sorted(ff for ff, clk in cs.domains.items() if clk == clock))
    return TimingPaths(clock, registers, tuple(analyzer.setup_check()), tuple(analyzer.hold_check()))


def _node(report: PathReport, end: str, registers: Tuple[str, ...]) -> str:
    name = report.launch if end == "launch" else report.capture
    return name if name in registers else ANCHOR


def _snap(weight: float) -> float:
    return 0.0 if abs(weight) < settings.TIME_TOLERANCE_NS else weight


def constraints_from_paths(paths: TimingPaths, period: float, bound: float) -> SkewConstraintGraph:
    if not period > 0:
        raise TimingLensError(f"period must be positive, got {period}")
    if bound < 0:
        raise TimingLensError(f"skew bound must be nonnegative, got {bound}")

    items: List[SkewConstraint] = []
    for r in paths.setup:
        u, v = _node(r, "launch", paths.registers), _node(r, "capture", paths.registers)
        weight = _snap(r.multicycle * period - r.arrival - r.requirement)
        items.append(SkewConstraint(u, v, weight, f"setup {r.launch}->{r.capture}"))
    for r in paths.hold:
        u, v = _node(r, "launch", paths.registers), _node(r, "capture", paths.registers)
        # hold capture stays at edge 0; `required` is H, or -output_delay at a port
        weight = _snap(r.arrival - r.required)
        items.append(SkewConstraint(v, u, weight, f"hold {r.launch}->{r.capture}"))
    for reg in paths.registers:
        items.append(SkewConstraint(reg, ANCHOR, bound, f"bound {reg}"))
        items.append(SkewConstraint(ANCHOR, reg, bound, f"bound {reg}"))

    graph = nx.DiGraph()
    graph.add_node(ANCHOR)
    graph.add_nodes_from(paths.registers)
    for c in items:
        if c.u == c.v == ANCHOR:
            continue
        # s_u - s_v <= w  is edge v -> u
        if graph.has_edge(c.v, c.u):
            data = graph.edges[c.v, c.u]
            if c.weight < data["weight"]:
                data["weight"] = c.weight
                data["provenance"] = c.provenance
        else:
            graph.add_edge(c.v, c.u, weight=c.weight, provenance=c.provenance)

    logger.debug(f"Skew constraint graph at {period:.3f} ns: {graph.number_of_nodes()} nodes, "
                 f"{graph.number_of_edges()} edges")
    return SkewConstraintGraph(graph, paths.clock, period, bound, paths.registers, items)


def build_constraints(g: TimingGraph, cs: ConstraintSet, period: float, bound: float) -> SkewConstraintGraph:
    """Setup and hold checks rewritten as s_u - s_v <= w difference constraints"""
    return constraints_from_paths(collect_paths(g, cs), period, bound)


def period_floor(report: PathReport, registers: Tuple[str, ...], bound: float) -> float:
    """Smallest period at which this setup edge alone can be met within the skew bound"""
    ends = {_node(report, "launch", registers), _node(report, "capture", registers)}
    if len(ends) == 1:
        room = 0.0
    elif ANCHOR in ends:
        room = bound
    else:
        room = 2 * bound
    return (report.arrival + report.requirement - room) / report.multicycle


def edge_weights(scg: SkewConstraintGraph) -> Dict[Tuple[str, str], float]:
    return {(u, v): data["weight"] for u, v, data in scg.graph.edges(data=True)}
