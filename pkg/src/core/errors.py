# src/core/errors.py
from typing import List, Optional, Sequence


class TimingLensError(ValueError):
    """Base class for every analysis/input error raised by the toolkit"""


class ParseError(TimingLensError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = ""):
        self.message = message
        self.line = line
        self.source = source
        where = f"{source}:" if source else ""
        prefix = f"{where}line {line}: " if line is not None else where
        super().__init__(f"{prefix}{message}")


class NetlistError(TimingLensError):
    pass


class CombinationalLoopError(NetlistError):
    def __init__(self, cycle: Sequence[str]):
        self.cycle: List[str] = list(cycle)
        super().__init__(f"combinational loop: {' -> '.join(self.cycle)}")


class UnresolvedCellError(TimingLensError):
    def __init__(self, cell: str, library: str = ""):
        self.cell = cell
        self.library = library
        lib = f" in library {library}" if library else ""
        super().__init__(f"unresolved cell {cell}{lib}")


class ConstraintError(TimingLensError):
    pass


class MetastabilityParamsError(TimingLensError):
    pass


class InfeasibleScheduleError(TimingLensError):
    def __init__(self, message: str, witness: Sequence[str] = ()):
        self.witness: List[str] = list(witness)
        if self.witness:
            message = f"{message} (cycle: {' -> '.join(self.witness)})"
        super().__init__(message)
