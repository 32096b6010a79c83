# src/core/cdc/mtbf.py
import logging
import math
from typing import Optional

from pydantic import ValidationError

from src.core.config import settings
from src.core.errors import MetastabilityParamsError
from src.core.techlib.library_parser import lookup
from src.models.constraints import ConstraintSet
from src.models.crossing import Classification, Crossing, CrossingMtbf, MtbfParams, MtbfValue, SyncKind
from src.models.library import CellSpec, Library

logger = logging.getLogger(__name__)

NS = 1e-9
SATURATION_LOG10 = 300.0


def make_params(**kwargs: float) -> MtbfParams:
    try:
        return MtbfParams(**kwargs)
    except ValidationError as e:
        raise MetastabilityParamsError(f"invalid MTBF parameters: {e.errors()[0]['loc'][0]} "
                                       f"{e.errors()[0]['msg']}") from e


def log_mtbf(p: MtbfParams) -> float:
    """Natural log of the synchronizer MTBF in seconds"""
    return p.t_res / p.tau - math.log(p.f_data) - math.log(p.f_clock) - math.log(p.t_w)


def mtbf(p: MtbfParams) -> MtbfValue:
    """
    exp(t_res / tau) / (f_data * f_clock * t_w), evaluated in log space.

    Values past 1e+/-300 s are clamped to the bound and flagged saturated;
    `log10` always carries the unclamped magnitude.
    """
    ln_value = log_mtbf(p)
    log10 = ln_value / math.log(10)
    if log10 > SATURATION_LOG10:
        return MtbfValue(10.0 ** SATURATION_LOG10, log10, saturated=True)
    if log10 < -SATURATION_LOG10:
        return MtbfValue(10.0 ** -SATURATION_LOG10, log10, saturated=True)
    exponent = p.t_res / p.tau
    if exponent < 700:
        seconds = math.exp(exponent) / (p.f_data * p.f_clock * p.t_w)
    else:
        seconds = math.exp(ln_value)
    return MtbfValue(seconds, log10)


def resolution_time_ns(cell: CellSpec, period_ns: float, depth: int) -> float:
    """Each stage after the first adds one destination period of settling time"""
    return max((depth - 1) * period_ns - cell.setup, 0.0)


def chain_params(cell: CellSpec, period_ns: float, depth: int, f_data: float) -> MtbfParams:
    if not cell.has_metastability_params:
        raise MetastabilityParamsError(f"library lacks metastability parameters for cell {cell.name}")
    return make_params(
        t_res=resolution_time_ns(cell, period_ns, depth) * NS,
        tau=cell.tau * NS,
        f_data=f_data,
        f_clock=1.0 / (period_ns * NS),
        t_w=cell.tw * NS,
    )


def crossing_mtbf(crossing: Crossing, lib: Library, cs: ConstraintSet, f_data: float,
                  classification: Optional[Classification] = None) -> CrossingMtbf:
    verdict = classification or crossing.classification
    if verdict is None or verdict.kind not in (SyncKind.TWO_FLOP_CHAIN, SyncKind.GRAY_BUS) or not verdict.depth \
            or verdict.depth < 2:
        raise MetastabilityParamsError(f"crossing {crossing.signal} is not a synchronizer chain; MTBF undefined")
    cell = lookup(lib, crossing.entry_cell)
    period = cs.period(crossing.dst_domain)
    params = chain_params(cell, period, verdict.depth, f_data)
    per_bit = mtbf(params)
    width = crossing.width if crossing.is_bus else 1
    notes = [f"tau={cell.tau} ns", f"tw={cell.tw} ns", f"t_res={resolution_time_ns(cell, period, verdict.depth):.3f} ns"]
    if width > 1:
        # bits fail independently
        value = MtbfValue(per_bit.seconds / width, per_bit.log10 - math.log10(width), per_bit.saturated)
        notes.append(f"bus of {width} bits, independent-bit combination")
    else:
        value = per_bit
    logger.debug(f"MTBF {crossing.signal}: {value.seconds:.3e} s (depth {verdict.depth}, width {width})")
    return CrossingMtbf(mtbf=value, params=params, cell=cell.name, depth=verdict.depth,
                        width=width, notes=tuple(notes))


def min_depth_for_target(cell: CellSpec, period_ns: float, f_data: float, target_s: float,
                         width: int = 1, max_depth: Optional[int] = None) -> Optional[int]:
    """Smallest chain depth whose MTBF reaches `target_s`, or None within the depth cap"""
    cap = max_depth or settings.MAX_SYNC_DEPTH
    goal = math.log10(target_s) + math.log10(width)
    for depth in range(2, cap + 1):
        if mtbf(chain_params(cell, period_ns, depth, f_data)).log10 >= goal:
            return depth
    return None
