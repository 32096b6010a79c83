# src/models/run_config.py
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

BUILTIN_LIBRARIES = ("fpga", "asic")


def _readable(path: Optional[Path], what: str) -> Optional[Path]:
    if path is not None and not path.is_file():
        raise ValueError(f"{what} file not found: {path}")
    return path


class RunConfig(BaseModel):
    """Options shared by the design-level commands"""
    model_config = ConfigDict(frozen=True)

    netlist: Path
    lib: str = "fpga"
    sdc: Path
    check: Literal["setup", "hold", "both"] = "setup"
    max_paths: int = Field(default=1, ge=1)
    format: Literal["text", "json"] = "text"
    derate: float = Field(default=1.0, gt=0)
    skew: Optional[Path] = None
    lenient: bool = False

    @field_validator("netlist")
    @classmethod
    def _netlist_readable(cls, v: Path) -> Path:
        return _readable(v, "netlist")

    @field_validator("sdc")
    @classmethod
    def _sdc_readable(cls, v: Path) -> Path:
        return _readable(v, "sdc")

    @field_validator("skew")
    @classmethod
    def _skew_readable(cls, v: Optional[Path]) -> Optional[Path]:
        return _readable(v, "skew schedule")

    @field_validator("lib")
    @classmethod
    def _lib_source(cls, v: str) -> str:
        if v not in BUILTIN_LIBRARIES and not Path(v).is_file():
            raise ValueError(f"library must be one of {', '.join(BUILTIN_LIBRARIES)} or a readable file, got {v}")
        return v
