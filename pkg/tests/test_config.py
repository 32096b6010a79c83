# tests/test_config.py
import logging

import pytest
from pydantic import ValidationError

from src.core.config import Settings
from src.core.logging_setup import configure_logging
from src.models.run_config import RunConfig


def test_defaults():
    s = Settings(_env_file=None)
    assert s.TIME_TOLERANCE_NS == 1e-9
    assert s.REPORT_DECIMALS == 3
    assert s.DEFAULT_LIB == "fpga"


def test_env_prefix(monkeypatch):
    monkeypatch.setenv("TIMINGLENS_REPORT_DECIMALS", "4")
    monkeypatch.setenv("TIMINGLENS_LOG_LEVEL", "DEBUG")
    s = Settings(_env_file=None)
    assert s.REPORT_DECIMALS == 4
    assert s.LOG_LEVEL == "DEBUG"


def test_configure_logging_level():
    configure_logging("info")
    assert logging.getLogger().level == logging.INFO
    configure_logging("warning")


def test_run_config_validation(designs):
    cfg = RunConfig(netlist=designs / "fpga_ref.tnl", sdc=designs / "fpga_ref.sdc")
    assert cfg.lib == "fpga"
    assert RunConfig(netlist=designs / "skew_loop.tnl", sdc=designs / "skew_loop.sdc",
                     lib=str(designs / "skew_loop.tlib")).lib.endswith("skew_loop.tlib")
    with pytest.raises(ValidationError):
        RunConfig(netlist=designs / "nope.tnl", sdc=designs / "fpga_ref.sdc")
    with pytest.raises(ValidationError):
        RunConfig(netlist=designs / "fpga_ref.tnl", sdc=designs / "fpga_ref.sdc", derate=0)
    with pytest.raises(ValidationError):
        RunConfig(netlist=designs / "fpga_ref.tnl", sdc=designs / "fpga_ref.sdc", format="xml")
