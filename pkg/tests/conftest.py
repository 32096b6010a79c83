# tests/conftest.py
from pathlib import Path

import pytest

from src.services.design_loader import Design, load_design

DESIGNS = Path(__file__).resolve().parent.parent / "designs"


@pytest.fixture
def designs() -> Path:
    return DESIGNS


@pytest.fixture
def load():
    """load(name, lib, sdc) -> Design from the shipped fixtures"""
    def _load(name: str, lib: str, sdc: str) -> Design:
        lib_spec = lib if lib in ("fpga", "asic") else str(DESIGNS / lib)
        return load_design(DESIGNS / f"{name}.tnl", lib_spec, DESIGNS / sdc)
    return _load


@pytest.fixture
def fpga_ref(load) -> Design:
    return load("fpga_ref", "fpga", "fpga_ref.sdc")


@pytest.fixture
def asic_ref(load) -> Design:
    return load("asic_ref", "asic", "asic_ref.sdc")


@pytest.fixture
def build():
    """build(tnl_text, lib, sdc_text) -> Design from inline sources"""
    from src.core.constraints.resolver import resolve
    from src.core.constraints.sdc_parser import parse_sdc
    from src.core.netlist.netlist_parser import parse_netlist
    from src.core.techlib.library_parser import parse_library
    from src.core.techlib.builtin import builtin

    def _build(tnl: str, lib: str, sdc: str) -> Design:
        library = builtin(lib) if lib in ("fpga", "asic") else parse_library(lib)
        netlist = parse_netlist(tnl)
        return Design(netlist, library, resolve(parse_sdc(sdc), netlist))
    return _build
