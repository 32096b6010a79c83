# src/core/msim/adaptive_depth.py
import logging
import math
from typing import List, Optional

from src.core.errors import TimingLensError
from src.core.msim.metastability_simulator import WINDOW_STREAM, event_rate, rng_streams
from src.models.simulation import AdaptivePolicy, DepthSample, SimConfig

logger = logging.getLogger(__name__)

# numpy rejects larger Poisson means; far above any threshold anyway
POISSON_MEAN_CAP = 1e15


def window_count(policy: AdaptivePolicy, cfg: SimConfig) -> int:
    return max(1, math.floor(cfg.max_sim_time * cfg.params.f_clock / policy.window))


def simulate_adaptive_depth(policy: AdaptivePolicy, cfg: SimConfig,
                            n_windows: Optional[int] = None) -> List[DepthSample]:
    """
    Run the depth controller window by window.

    Each window observes the unresolved metastable events of the current
    depth: Poisson with mean rate * window_time * exp(-t_res(depth) / tau),
    where every stage beyond two adds one destination clock period to
    t_res. More than `reliability_mode` events deepens the chain, none
    shortens it.
    """
    if n_windows is not None and n_windows < 1:
        raise TimingLensError(f"window count must be positive, got {n_windows}")
    p = cfg.params
    rng = rng_streams(cfg.seed)[WINDOW_STREAM]
    windows = n_windows or window_count(policy, cfg)
    window_time = policy.window / p.f_clock
    period = 1.0 / p.f_clock

    depth = policy.min_depth
    trace: List[DepthSample] = []
    for index in range(windows):
        t_res = p.t_res + (depth - 2) * period
        mean = min(event_rate(p) * window_time * math.exp(-t_res / p.tau), POISSON_MEAN_CAP)
        events = int(rng.poisson(mean))
        trace.append(DepthSample(index, depth, events))
        if events > policy.reliability_mode:
            depth = min(depth + 1, policy.max_depth)
        elif events == 0:
            depth = max(depth - 1, policy.min_depth)
    logger.debug(f"Adaptive depth trace: {windows} windows, final depth {depth}")
    return trace
