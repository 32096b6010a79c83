# src/models/timing.py
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple

SEGMENT_LABELS = ("clock_to_q", "input_delay", "logic", "routing")


class CheckKind(Enum):
    SETUP = "setup"
    HOLD = "hold"


@dataclass(frozen=True)
class Segment:
    label: str
    ns: float
    pin: str = ""


@dataclass(frozen=True)
class PathReport:
    """One timing path; negative slack is a violation"""
    launch: str
    capture: str
    clock: str
    check: CheckKind
    segments: Tuple[Segment, ...]
    arrival: float
    required: float
    slack: float
    multicycle: int = 1
    launch_time: float = 0.0
    capture_time: float = 0.0
    # capture setup/hold time, or the output delay for port endpoints
    requirement: float = 0.0
    period: float = 0.0

    def components(self) -> Dict[str, float]:
        totals = {label: 0.0 for label in SEGMENT_LABELS}
        for seg in self.segments:
            totals[seg.label] += seg.ns
        return totals

    @property
    def path_delay(self) -> float:
        total = 0.0
        for seg in self.segments:
            total += seg.ns
        return total

    @property
    def logic_levels(self) -> int:
        return sum(1 for seg in self.segments if seg.label == "logic")

    @property
    def required_period(self) -> float:
        """Smallest period at which this path meets setup"""
        return (self.arrival - self.capture_time + self.requirement) / self.multicycle


@dataclass
class SkewTable:
    skews: Dict[str, float] = field(default_factory=dict)

    def __getitem__(self, ff: str) -> float:
        return self.skews.get(ff, 0.0)

    @classmethod
    def zero(cls) -> "SkewTable":
        return cls()
