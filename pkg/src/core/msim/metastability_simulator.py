# src/core/msim/metastability_simulator.py
import logging
from typing import List

import numpy as np

from src.core.cdc.mtbf import mtbf
from src.core.msim.statistics import mtbf_ci
from src.models.crossing import MtbfParams
from src.models.simulation import EventLog, SimConfig, SimResult

logger = logging.getLogger(__name__)

# child streams of SeedSequence(seed): arrivals, resolution times, adaptive windows
ARRIVAL_STREAM, RESOLUTION_STREAM, WINDOW_STREAM = 0, 1, 2

# events drawn per batch
CHUNK_SIZE = 1 << 16


def rng_streams(seed: int) -> List[np.random.Generator]:
    """Independent PCG64 generators spawned from one seed, in a fixed order"""
    children = np.random.SeedSequence(seed).spawn(3)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def event_rate(p: MtbfParams) -> float:
    """Metastable events per second: data edges landing inside the window around a clock edge"""
    return p.f_data * p.f_clock * p.t_w


def simulate_mtbf(cfg: SimConfig) -> SimResult:
    """
    Monte Carlo estimate of synchronizer MTBF.

    Data transitions are Poisson at f_data; thinning by the probability
    f_clock * t_w of hitting a capture window leaves a Poisson stream of
    metastable events. Each resolves after an Exponential(tau) time and
    fails when that exceeds t_res.

    The run ends at `min_events` events, or at the `min_failures`-th failure
    when that is set, or at `max_sim_time` seconds, whichever comes first.
    Events are drawn in batches so the time cap bounds memory as well.
    """
    p = cfg.params
    arrivals_rng, resolution_rng, _ = rng_streams(cfg.seed)
    rate = event_rate(p)
    by_failures = cfg.min_failures is not None

    events = failures = 0
    clock = 0.0
    kept_times, kept_resolution = [], []
    while True:
        size = CHUNK_SIZE if by_failures else min(CHUNK_SIZE, cfg.min_events - events)
        times = clock + np.cumsum(arrivals_rng.exponential(1.0 / rate, size=size))
        resolution = resolution_rng.exponential(p.tau, size=size)

        keep = int(np.searchsorted(times, cfg.max_sim_time, side="right"))
        stopped_by = "time" if keep < size else None
        if by_failures:
            hits = np.flatnonzero(resolution[:keep] > p.t_res)
            needed = cfg.min_failures - failures
            if len(hits) >= needed:
                keep = int(hits[needed - 1]) + 1
                stopped_by = "failures"
        elif keep == size and events + size == cfg.min_events:
            stopped_by = "events"

        events += keep
        failures += int(np.count_nonzero(resolution[:keep] > p.t_res))
        if cfg.record_events:
            kept_times.append(times[:keep])
            kept_resolution.append(resolution[:keep])
        if stopped_by is not None:
            break
        clock = float(times[-1])

    if stopped_by == "time":
        sim_time = float(cfg.max_sim_time)
        logger.info(f"Simulation capped at {cfg.max_sim_time:g} s after {events} events")
    else:
        sim_time = float(times[keep - 1])

    event_log = None
    if cfg.record_events:
        all_times = np.concatenate(kept_times)
        all_resolution = np.concatenate(kept_resolution)
        event_log = EventLog(all_times, all_resolution, all_resolution > p.t_res)

    result = SimResult(
        events=events,
        failures=failures,
        sim_time=sim_time,
        empirical_mtbf=sim_time / failures if failures else None,
        ci95=mtbf_ci(failures, sim_time, failure_stopped=stopped_by == "failures"),
        analytic_mtbf=mtbf(p).seconds,
        stopped_by=stopped_by,
        event_log=event_log,
    )
    logger.debug(f"Simulated {result.events} events, {result.failures} failures over {sim_time:.3e} s")
    return result
