# src/core/cdc/cdc_checker.py
import logging
from dataclasses import replace
from typing import List, Optional

from src.core.cdc.classifier import classify
from src.core.cdc.crossing_finder import find_crossings
from src.core.cdc.depth import frequency_ratio, recommend_depth
from src.core.cdc.mtbf import crossing_mtbf, min_depth_for_target
from src.core.errors import MetastabilityParamsError
from src.core.techlib.library_parser import lookup
from src.models.constraints import ConstraintSet
from src.models.crossing import CdcFinding, SyncKind
from src.models.library import Library
from src.models.netlist import Netlist

logger = logging.getLogger(__name__)


def analyze_crossings(n: Netlist, lib: Library, cs: ConstraintSet, f_data: float,
                      mtbf_target: Optional[float] = None) -> List[CdcFinding]:
    """Find, classify and rate every crossing of a resolved design"""
    findings: List[CdcFinding] = []
    for crossing in find_crossings(n, lib, cs):
        verdict = classify(n, crossing, cs)
        crossing = replace(crossing, classification=verdict)
        for warning in verdict.warnings:
            logger.warning(f"Crossing {crossing.signal}: {warning}")

        ratio = frequency_ratio(1.0 / cs.period(crossing.src_domain), 1.0 / cs.period(crossing.dst_domain))
        rating = None
        if verdict.kind in (SyncKind.TWO_FLOP_CHAIN, SyncKind.GRAY_BUS) and (verdict.depth or 0) >= 2:
            try:
                rating = crossing_mtbf(crossing, lib, cs, f_data)
            except MetastabilityParamsError as e:
                logger.warning(f"Crossing {crossing.signal}: {e}")

        meets = target_depth = None
        if mtbf_target is not None and rating is not None:
            meets = rating.mtbf.seconds >= mtbf_target
            target_depth = min_depth_for_target(lookup(lib, crossing.entry_cell), cs.period(crossing.dst_domain),
                                                f_data, mtbf_target, width=rating.width)
            if not meets:
                logger.warning(f"Crossing {crossing.signal}: MTBF {rating.mtbf.seconds:.3e} s "
                               f"below target {mtbf_target:.3e} s")
        findings.append(CdcFinding(
            crossing=crossing,
            classification=verdict,
            mtbf=rating,
            recommended_depth=recommend_depth(ratio),
            meets_target=meets,
            target_depth=target_depth,
        ))
    return findings
