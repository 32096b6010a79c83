# src/models/library.py
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional


class CellKind(Enum):
    SEQUENTIAL = "sequential"
    COMBINATIONAL = "combinational"


@dataclass(frozen=True)
class CellSpec:
    """Timing view of one library cell; all times in ns"""
    name: str
    kind: CellKind
    setup: float = 0.0
    hold: float = 0.0
    cq_max: float = 0.0
    cq_min: float = 0.0
    delay_max: float = 0.0
    delay_min: float = 0.0
    inputs: int = 0
    tau: Optional[float] = None
    tw: Optional[float] = None

    @property
    def is_sequential(self) -> bool:
        return self.kind is CellKind.SEQUENTIAL

    @property
    def has_metastability_params(self) -> bool:
        return self.tau is not None and self.tw is not None


@dataclass(frozen=True)
class Library:
    name: str
    cells: Dict[str, CellSpec] = field(default_factory=dict)
