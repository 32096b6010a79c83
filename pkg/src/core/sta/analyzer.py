# src/core/sta/analyzer.py
import logging
import math
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from src.core.config import settings
from src.core.errors import TimingLensError
from src.core.sta.timing_graph import TimingGraph
from src.core.techlib.library_parser import lookup
from src.models.constraints import ConstraintSet
from src.models.netlist import Diagnostic, Severity
from src.models.timing import CheckKind, PathReport, Segment, SkewTable

logger = logging.getLogger(__name__)


class TimingAnalyzer:
    """Setup/hold/Fmax analysis of one timing graph under one constraint set"""

    def __init__(self, graph: TimingGraph, constraints: ConstraintSet, skew: Optional[SkewTable] = None):
        if not constraints.resolved:
            raise TimingLensError("constraints must be resolved before timing analysis")
        self.graph = graph
        self.constraints = constraints
        self.skew = skew or SkewTable.zero()
        self.diagnostics: List[Diagnostic] = []
        self.skipped_cross_domain: Set[Tuple[str, str]] = set()
        self._reported: Set[Tuple[str, str]] = set()
        self._clock_ports = {c.source_port for c in constraints.clocks}

    def _diag(self, obj: str, message: str, severity: Severity = Severity.WARNING) -> None:
        if (obj, message) in self._reported:
            return
        self._reported.add((obj, message))
        diag = Diagnostic(severity, obj, message)
        self.diagnostics.append(diag)
        logger.warning(str(diag))

    def _launch(self, start: str) -> Optional[Tuple[str, str, float, float]]:
        """(launch name, clock, propagation init, launch_time) or None when unconstrained"""
        tg, cs = self.graph, self.constraints
        owner = tg.owner(start)
        if tg.kind(start) == "ff_ck":
            t = self.skew[owner]
            return owner, cs.domains[owner], t, t
        if owner in self._clock_ports:
            return None
        io = cs.input_delays.get(owner)
        if io is None:
            if self._reaches_endpoint(start):
                self._diag(owner, "unconstrained startpoint (no set_input_delay); paths skipped")
            return None
        return owner, io.clock, io.delay, 0.0

    def _reaches_endpoint(self, start: str) -> bool:
        tg = self.graph
        return any(tg.kind(n) in ("ff_d", "port_out") for n in nx.descendants(tg.graph, start))

    def _segments(self, start: str, end: str, pred: Dict[str, str], use_max: bool) -> Tuple[Segment, ...]:
        weight = "delay_max" if use_max else "delay_min"
        chain: List[Segment] = []
        node = end
        while node != start:
            u = pred[node]
            arc = self.graph.arc(u, node)
            chain.append(Segment(arc["label"], arc[weight], node))
            node = u
        chain.reverse()
        if self.graph.kind(start) == "port_in":
            io = self.constraints.input_delays[self.graph.owner(start)]
            chain.insert(0, Segment("input_delay", io.delay, start))
        return tuple(chain)

    def _check(self, check: CheckKind) -> List[PathReport]:
        tg, cs = self.graph, self.constraints
        use_max = check is CheckKind.SETUP
        reports: List[PathReport] = []

        for start in tg.startpoints:
            launch = self._launch(start)
            if launch is None:
                continue
            launch_name, launch_clock, init, launch_time = launch
            arrival, pred = tg.propagate(start, init, use_max)

            for end in tg.endpoints:
                if end not in arrival:
                    continue
                capture = tg.owner(end)
                is_port = tg.kind(end) == "port_out"
                if is_port:
                    io = cs.output_delays.get(capture)
                    if io is None:
                        self._diag(capture, "unconstrained endpoint (no set_output_delay); paths skipped")
                        continue
                    capture_clock = io.clock
                else:
                    capture_clock = cs.domains[capture]

                if capture_clock != launch_clock:
                    if not cs.is_false_path(launch_clock, capture_clock):
                        if (launch_name, capture) not in self.skipped_cross_domain:
                            logger.info(f"Cross-domain path {launch_name} ({launch_clock}) -> "
                                        f"{capture} ({capture_clock}) left to CDC analysis")
                        self.skipped_cross_domain.add((launch_name, capture))
                    continue

                period = cs.period(capture_clock)
                both_ffs = tg.kind(start) == "ff_ck" and not is_port
                n_cycles = cs.multicycle.get((launch_name, capture), 1) if both_ffs else 1
                at = arrival[end]

                if is_port:
                    capture_time = 0.0
                    requirement = io.delay
                    if use_max:
                        required = period - io.delay
                    else:
                        required = -io.delay
                else:
                    cell = lookup(tg.library, tg.netlist.ff_by_name[capture].cell)
                    capture_time = self.skew[capture]
                    if use_max:
                        requirement = cell.setup
                        required = n_cycles * period + capture_time - cell.setup
                    else:
                        # hold is checked at edge 0 whatever the setup multiplier
                        requirement = cell.hold
                        required = capture_time + cell.hold

                slack = required - at if use_max else at - required
                reports.append(PathReport(
                    launch=launch_name,
                    capture=capture,
                    clock=capture_clock,
                    check=check,
                    segments=self._segments(start, end, pred, use_max),
                    arrival=at,
                    required=required,
                    slack=slack,
                    multicycle=n_cycles,
                    launch_time=launch_time,
                    capture_time=capture_time,
                    requirement=requirement,
                    period=period,
                ))

        for end in tg.endpoints:
            if tg.kind(end) == "port_out" and tg.owner(end) not in cs.output_delays \
                    and any(True for _ in tg.graph.predecessors(end)):
                self._diag(tg.owner(end), "unconstrained endpoint (no set_output_delay); paths skipped")

        return sort_reports(reports)

    def setup_check(self) -> List[PathReport]:
        return self._check(CheckKind.SETUP)

    def hold_check(self) -> List[PathReport]:
        return self._check(CheckKind.HOLD)

    def fmax(self) -> Dict[str, float]:
        """Per-clock maximum frequency in MHz, rounded to 0.1 MHz"""
        worst: Dict[str, float] = {}
        for report in self.setup_check():
            needed = report.required_period
            if report.clock not in worst or needed > worst[report.clock]:
                worst[report.clock] = needed

        result: Dict[str, float] = {}
        for clk in sorted(c.name for c in self.constraints.clocks):
            if clk not in worst:
                self._diag(clk, "no constrained paths; Fmax not reported", Severity.WARNING)
                continue
            if worst[clk] <= 0:
                self._diag(clk, "every path meets timing at any period; Fmax unbounded", Severity.WARNING)
                continue
            result[clk] = round(1000.0 / worst[clk], 1)
        return result


def sort_reports(reports: List[PathReport]) -> List[PathReport]:
    digits = -int(round(math.log10(settings.TIME_TOLERANCE_NS)))
    return sorted(reports, key=lambda r: (round(r.slack, digits), r.launch, r.capture))


def setup_check(g: TimingGraph, cs: ConstraintSet, skew: Optional[SkewTable] = None) -> List[PathReport]:
    return TimingAnalyzer(g, cs, skew).setup_check()


def hold_check(g: TimingGraph, cs: ConstraintSet, skew: Optional[SkewTable] = None) -> List[PathReport]:
    return TimingAnalyzer(g, cs, skew).hold_check()


def fmax(g: TimingGraph, cs: ConstraintSet, skew: Optional[SkewTable] = None) -> Dict[str, float]:
    return TimingAnalyzer(g, cs, skew).fmax()


def top_paths(reports: List[PathReport], k: int) -> List[PathReport]:
    if k < 1:
        raise TimingLensError(f"k must be at least 1, got {k}")
    return sort_reports(reports)[:k]


def worst_slack(reports: List[PathReport]) -> Optional[float]:
    return min((r.slack for r in reports), default=None)
