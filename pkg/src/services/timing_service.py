# src/services/timing_service.py
import asyncio
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.core.sta.analyzer import TimingAnalyzer
from src.core.sta.timing_graph import TimingGraph
from src.models.constraints import ConstraintSet
from src.models.netlist import Diagnostic
from src.models.timing import PathReport, SkewTable
from src.services.design_loader import Design

logger = logging.getLogger(__name__)


@dataclass
class TimingResult:
    setup: List[PathReport] = field(default_factory=list)
    hold: List[PathReport] = field(default_factory=list)
    fmax: Dict[str, float] = field(default_factory=dict)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def worst_slack(self) -> Optional[float]:
        return min((r.slack for r in self.setup + self.hold), default=None)


class TimingService:
    """Runs the independent analyses of one design concurrently on worker threads"""

    def __init__(self, design: Design, derate: float = 1.0, skew: Optional[SkewTable] = None):
        self.design = design
        self.skew = skew
        self.graph: TimingGraph = design.timing_graph(derate)

    def _analyzer(self, constraints: Optional[ConstraintSet] = None) -> TimingAnalyzer:
        return TimingAnalyzer(self.graph, constraints or self.design.constraints, self.skew)

    async def _run(self, what: str) -> tuple:
        # one analyzer per task so diagnostics are never shared across threads
        analyzer = self._analyzer()
        method = {"setup": analyzer.setup_check, "hold": analyzer.hold_check, "fmax": analyzer.fmax}[what]
        result = await asyncio.to_thread(method)
        return result, analyzer.diagnostics

    async def analyze(self, check: str = "both", with_fmax: bool = False) -> TimingResult:
        tasks = []
        if check in ("setup", "both"):
            tasks.append("setup")
        if check in ("hold", "both"):
            tasks.append("hold")
        if with_fmax:
            tasks.append("fmax")

        outcomes = await asyncio.gather(*(self._run(what) for what in tasks))

        result = TimingResult()
        seen = set()
        for what, (value, diags) in zip(tasks, outcomes):
            setattr(result, what, value)
            for diag in diags:
                if diag not in seen:
                    seen.add(diag)
                    result.diagnostics.append(diag)
        logger.info(f"Timing analysis of {self.design.netlist.name} done: "
                    f"{len(result.setup)} setup, {len(result.hold)} hold paths")
        return result

    async def fmax(self) -> Dict[str, float]:
        return (await self.analyze(check="none", with_fmax=True)).fmax
