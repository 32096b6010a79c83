# src/models/constraints.py
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple


@dataclass(frozen=True)
class ClockDef:
    name: str
    period: float
    source_port: str
    line: Optional[int] = None


@dataclass(frozen=True)
class IoDelay:
    clock: str
    delay: float


@dataclass(frozen=True)
class ConstraintSet:
    """SDC constraints; `domains` is filled in by resolve()"""
    clocks: Tuple[ClockDef, ...] = ()
    input_delays: Dict[str, IoDelay] = field(default_factory=dict)
    output_delays: Dict[str, IoDelay] = field(default_factory=dict)
    false_paths: FrozenSet[Tuple[str, str]] = frozenset()
    multicycle: Dict[Tuple[str, str], int] = field(default_factory=dict)
    domains: Dict[str, str] = field(default_factory=dict)
    resolved: bool = False
    warnings: Tuple[str, ...] = ()

    def clock(self, name: str) -> Optional[ClockDef]:
        for clk in self.clocks:
            if clk.name == name:
                return clk
        return None

    def period(self, name: str) -> float:
        clk = self.clock(name)
        if clk is None:
            raise KeyError(name)
        return clk.period

    def is_false_path(self, launch_clock: str, capture_clock: str) -> bool:
        return (launch_clock, capture_clock) in self.false_paths
