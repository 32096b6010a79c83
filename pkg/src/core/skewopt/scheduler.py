# src/core/skewopt/scheduler.py
import logging
from dataclasses import replace
from typing import List, Tuple, Union

import networkx as nx

from src.core.errors import InfeasibleScheduleError, TimingLensError
from src.core.skewopt.constraint_graph import TimingPaths, collect_paths, constraints_from_paths, period_floor
from src.core.sta.analyzer import TimingAnalyzer
from src.core.sta.timing_graph import TimingGraph
from src.models.constraints import ConstraintSet
from src.models.skew import ANCHOR, Infeasible, SkewConstraintGraph, SkewSchedule
from src.models.timing import PathReport

logger = logging.getLogger(__name__)


def feasible(scg: SkewConstraintGraph) -> Union[SkewSchedule, Infeasible]:
    """Shortest-path potentials from the anchor, or the negative cycle that rules them out"""
    try:
        dist = nx.single_source_bellman_ford_path_length(scg.graph, ANCHOR, weight="weight")
    except nx.NetworkXUnbounded:
        cycle = nx.find_negative_cycle(scg.graph, ANCHOR, weight="weight")
        logger.debug(f"Negative cycle at {scg.period:.6f} ns: {cycle}")
        return Infeasible(tuple(cycle), scg.period)
    skews = {reg: dist[reg] + 0.0 for reg in scg.registers}
    return SkewSchedule(skews=skews, period=scg.period, bound=scg.bound)


def zero_skew_period(paths: TimingPaths) -> float:
    if not paths.setup:
        raise TimingLensError(f"no constrained setup paths on clock {paths.clock}")
    return max(period_floor(r, paths.registers, 0.0) for r in paths.setup)


def optimize_period(g: TimingGraph, cs: ConstraintSet, bound: float, tol: float) -> Tuple[float, SkewSchedule]:
    """
    Binary search for the smallest period with a feasible skew schedule.

    The search runs between the largest single-edge period floor and the
    zero-skew period; hold constraints must stay feasible at every probe.
    """
    if not tol > 0:
        raise TimingLensError(f"tolerance must be positive, got {tol}")
    paths = collect_paths(g, cs)
    hi = zero_skew_period(paths)
    if not hi > 0:
        raise TimingLensError(f"zero-skew period {hi} is not positive")
    lo = max(0.0, max(period_floor(r, paths.registers, bound) for r in paths.setup))

    best = feasible(constraints_from_paths(paths, hi, bound))
    if isinstance(best, Infeasible):
        raise InfeasibleScheduleError(
            f"no skew schedule within +/-{bound} ns even at the zero-skew period {hi:.3f} ns",
            best.witness,
        )
    probes = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        result = feasible(constraints_from_paths(paths, mid, bound))
        probes += 1
        if isinstance(result, Infeasible):
            lo = mid
        else:
            hi, best = mid, result
    logger.info(f"Useful skew on {paths.clock}: period {hi:.4f} ns after {probes} probes "
                f"(zero-skew {zero_skew_period(paths):.4f} ns)")
    return hi, best


def verify_schedule(g: TimingGraph, cs: ConstraintSet, sched: SkewSchedule) -> Tuple[List[PathReport], List[PathReport]]:
    """Setup and hold reports at the schedule's period with its skews applied"""
    clocks = tuple(replace(clk, period=sched.period) for clk in cs.clocks)
    analyzer = TimingAnalyzer(g, replace(cs, clocks=clocks), sched.table())
    return analyzer.setup_check(), analyzer.hold_check()
