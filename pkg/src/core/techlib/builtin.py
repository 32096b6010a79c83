# src/core/techlib/builtin.py
from typing import Dict

from src.core.errors import TimingLensError
from src.core.techlib.library_parser import lookup
from src.models.library import CellKind, CellSpec, Library

# tau/tw are not characterized in the source tables; these are placeholders
# and every MTBF report prints the values it used.
FPGA_TAU_NS = 0.100
FPGA_TW_NS = 0.100
ASIC_TAU_NS = 0.020
ASIC_TW_NS = 0.020


def _ff(name: str, setup: float, hold: float, cq: float, tau: float, tw: float) -> CellSpec:
    return CellSpec(name, CellKind.SEQUENTIAL, setup=setup, hold=hold,
                    cq_max=cq, cq_min=cq, tau=tau, tw=tw)


def _comb(name: str, delay: float, inputs: int) -> CellSpec:
    return CellSpec(name, CellKind.COMBINATIONAL, delay_max=delay,
                    delay_min=delay, inputs=inputs)


def builtin_fpga() -> Library:
    """UltraScale+-class CLB cells"""
    cells = [
        _ff("FDRE", setup=0.180, hold=0.120, cq=0.450, tau=FPGA_TAU_NS, tw=FPGA_TW_NS),
        _comb("LUT6", 0.320, 6),
        _comb("LUT1", 0.320, 1),
        _comb("BUFG", 0.0, 1),
    ]
    return Library("fpga", {c.name: c for c in cells})


def builtin_asic() -> Library:
    """7nm SVT standard cells; NOR2 is the per-level logic reference"""
    cells = [
        _ff("DFF_SVT", setup=0.045, hold=0.035, cq=0.085, tau=ASIC_TAU_NS, tw=ASIC_TW_NS),
        _comb("NAND2", 0.025, 2),
        _comb("NOR2", 0.035, 2),
        _comb("INV", 0.015, 1),
        _comb("BUF", 0.020, 1),
        _comb("AOI21", 0.040, 3),
        _comb("XOR2", 0.055, 2),
    ]
    return Library("asic", {c.name: c for c in cells})


BUILTINS = {
    "fpga": builtin_fpga,
    "asic": builtin_asic,
}


def builtin(name: str) -> Library:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise TimingLensError(f"unknown built-in library '{name}' (choose from {', '.join(BUILTINS)})") from None


def table_ratios(
    fpga: Library,
    asic: Library,
    fpga_ff: str = "FDRE",
    asic_ff: str = "DFF_SVT",
    fpga_level: str = "LUT6",
    asic_level: str = "NOR2",
) -> Dict[str, float]:
    """FPGA/ASIC ratio of each headline timing parameter (ASIC advantage)"""
    f_ff, a_ff = lookup(fpga, fpga_ff), lookup(asic, asic_ff)
    f_lvl, a_lvl = lookup(fpga, fpga_level), lookup(asic, asic_level)
    return {
        "setup": f_ff.setup / a_ff.setup,
        "hold": f_ff.hold / a_ff.hold,
        "clock_to_q": f_ff.cq_max / a_ff.cq_max,
        "logic_per_level": f_lvl.delay_max / a_lvl.delay_max,
    }
