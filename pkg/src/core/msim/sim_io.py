# src/core/msim/sim_io.py
import json
from typing import Dict, List, Optional

import pandas as pd

from src.models.simulation import DepthSample, SimResult


def _sci(value: Optional[float]) -> Optional[float]:
    return None if value is None else float(f"{value:.6e}")


def result_to_dict(result: SimResult) -> Dict:
    low, high = result.ci95
    return {
        "events": result.events,
        "failures": result.failures,
        "sim_time_s": _sci(result.sim_time),
        "empirical_mtbf_s": _sci(result.empirical_mtbf),
        "ci95_s": [_sci(low), _sci(high)],
        "analytic_mtbf_s": _sci(result.analytic_mtbf),
        "failure_fraction": round(result.failure_fraction, 6),
        "stopped_by": result.stopped_by,
    }


def result_to_json(result: SimResult, meta: Optional[Dict] = None) -> str:
    doc = {**(meta or {}), **result_to_dict(result)}
    return json.dumps(doc, indent=2) + "\n"


def event_log_frame(result: SimResult) -> pd.DataFrame:
    if result.event_log is None:
        raise ValueError("simulation was run without record_events")
    log = result.event_log
    return pd.DataFrame({
        "event_time_s": log.event_time_s,
        "resolved_s": log.resolved_s,
        "failed_bool": log.failed.astype(bool),
    })


def depth_trace_frame(trace: List[DepthSample]) -> pd.DataFrame:
    return pd.DataFrame(
        [(s.window, s.depth, s.events) for s in trace],
        columns=["window", "depth", "events"],
    )


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n", float_format="%.9e")
