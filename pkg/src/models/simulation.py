# src/models/simulation.py
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.crossing import MtbfParams


class SimConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: MtbfParams
    seed: int = Field(default=1, ge=0, lt=2**64)
    min_events: int = Field(default=1000, ge=1)
    # when set, run to this many failures instead of min_events events
    min_failures: Optional[int] = Field(default=None, ge=1)
    max_sim_time: float = Field(default=1e6, gt=0)
    record_events: bool = False


class AdaptivePolicy(BaseModel):
    model_config = ConfigDict(frozen=True)

    min_depth: int = Field(default=2, ge=2)
    max_depth: int = Field(default=5, ge=2)
    reliability_mode: int = Field(default=0, ge=0, le=7)
    # destination clock cycles per evaluation window
    window: int = Field(default=2**24, ge=1)

    @model_validator(mode="after")
    def _check_depths(self) -> "AdaptivePolicy":
        if self.min_depth > self.max_depth:
            raise ValueError(
                f"min_depth {self.min_depth} exceeds max_depth {self.max_depth}"
            )
        return self


@dataclass(frozen=True)
class EventLog:
    event_time_s: np.ndarray
    resolved_s: np.ndarray
    failed: np.ndarray


@dataclass(frozen=True)
class SimResult:
    events: int
    failures: int
    sim_time: float
    empirical_mtbf: Optional[float]
    ci95: Tuple[Optional[float], Optional[float]]
    analytic_mtbf: float
    # "events", "failures" or "time": which cap ended the run
    stopped_by: str = "events"
    event_log: Optional[EventLog] = None

    @property
    def failure_fraction(self) -> float:
        return self.failures / self.events if self.events else 0.0


@dataclass(frozen=True)
class DepthSample:
    window: int
    depth: int
    events: int
