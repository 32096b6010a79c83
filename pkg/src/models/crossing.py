# src/models/crossing.py
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class SyncKind(Enum):
    UNSYNCHRONIZED = "Unsynchronized"
    TWO_FLOP_CHAIN = "TwoFlopChain"
    GRAY_BUS = "GrayBus"
    HANDSHAKE = "Handshake"
    COMB_BEFORE_SYNC = "CombBeforeSync"
    MULTI_FANOUT_SYNC = "MultiFanoutSync"


UNSAFE_KINDS = frozenset({
    SyncKind.UNSYNCHRONIZED,
    SyncKind.COMB_BEFORE_SYNC,
    SyncKind.MULTI_FANOUT_SYNC,
})


@dataclass(frozen=True)
class Classification:
    kind: SyncKind
    depth: Optional[int] = None
    width: Optional[int] = None
    warnings: Tuple[str, ...] = ()

    @property
    def is_safe(self) -> bool:
        return self.kind not in UNSAFE_KINDS and not self.warnings

    def __str__(self) -> str:
        if self.kind is SyncKind.GRAY_BUS:
            return f"GrayBus({self.width},{self.depth})"
        if self.kind is SyncKind.TWO_FLOP_CHAIN:
            return f"TwoFlopChain({self.depth})"
        return self.kind.value


@dataclass(frozen=True)
class Crossing:
    signal: str
    src_domain: str
    dst_domain: str
    dst_entry_ffs: Tuple[str, ...]
    source_nets: Tuple[str, ...] = ()
    is_bus: bool = False
    entry_cell: str = ""
    classification: Optional[Classification] = None

    @property
    def width(self) -> int:
        return len(self.source_nets)


class MtbfParams(BaseModel):
    """Eq. inputs in SI units (seconds, Hz)"""
    model_config = ConfigDict(frozen=True)

    t_res: float = Field(ge=0)
    tau: float = Field(gt=0)
    f_data: float = Field(gt=0)
    f_clock: float = Field(gt=0)
    t_w: float = Field(gt=0)


@dataclass(frozen=True)
class MtbfValue:
    seconds: float
    log10: float
    saturated: bool = False

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.seconds)


@dataclass(frozen=True)
class CrossingMtbf:
    mtbf: MtbfValue
    params: MtbfParams
    cell: str
    depth: int
    width: int = 1
    notes: Tuple[str, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class CdcFinding:
    """One crossing with its verdict, as reported by the `cdc` command"""
    crossing: Crossing
    classification: Classification
    mtbf: Optional[CrossingMtbf] = None
    recommended_depth: Optional[int] = None
    meets_target: Optional[bool] = None
    # smallest chain depth reaching the MTBF target; None when none within MAX_SYNC_DEPTH
    target_depth: Optional[int] = None

    @property
    def is_safe(self) -> bool:
        return self.classification.is_safe and self.meets_target is not False
