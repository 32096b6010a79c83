# tests/test_constraints.py
import json

import pytest

from src.core.constraints.resolver import domain_of, resolve
from src.core.constraints.sdc_parser import UnsupportedCommand, constraints_to_dict, parse_sdc
from src.core.errors import ConstraintError, ParseError
from src.core.netlist.netlist_parser import parse_netlist
from src.services.design_loader import load_netlist

GOLDEN = {
    "clocks": [{"name": "clk", "period": 2.35, "source_port": "clk"}],
    "input_delays": {"data_in": {"clock": "clk", "delay": 0.5}},
    "output_delays": {"data_out": {"clock": "clk", "delay": 0.8}},
    "false_paths": [{"from": "clk_a", "to": "clk_b"}],
    "multicycle": [{"from": "reg_a", "to": "reg_b", "setup": 2}],
    "domains": {},
}


def test_constraint_block_golden(designs):
    cs = parse_sdc((designs / "example_constraints.sdc").read_text())
    assert constraints_to_dict(cs) == GOLDEN
    first = json.dumps(constraints_to_dict(cs), sort_keys=True)
    again = parse_sdc((designs / "example_constraints.sdc").read_text())
    assert json.dumps(constraints_to_dict(again), sort_keys=True) == first


def test_two_clock_block_resolves(designs):
    n = load_netlist(designs / "two_domain.tnl")
    cs = resolve(parse_sdc((designs / "two_domain.sdc").read_text()), n)
    assert cs.resolved
    assert sorted(c.name for c in cs.clocks) == ["clk", "clk_a", "clk_b"]
    assert cs.multicycle == {("reg_a", "reg_b"): 2}
    assert cs.is_false_path("clk_a", "clk_b")
    assert not cs.is_false_path("clk_b", "clk_a")
    assert domain_of(cs, "sa") == "clk_a"
    assert domain_of(cs, "reg_b") == "clk"


def test_false_path_needs_defined_clocks(designs):
    n = load_netlist(designs / "two_domain.tnl")
    with pytest.raises(ConstraintError) as exc:
        resolve(parse_sdc((designs / "example_constraints.sdc").read_text()), n)
    assert "unknown clock clk_b" in str(exc.value)


def test_resolve_is_idempotent(designs):
    n = load_netlist(designs / "two_domain.tnl")
    cs = resolve(parse_sdc((designs / "two_domain.sdc").read_text()), n)
    assert resolve(cs, n) == cs


def test_unconstrained_clock():
    n = parse_netlist("design x\nport in clk\nport in other\nff r1 FDRE clk=other d=q q=q\n")
    with pytest.raises(ConstraintError) as exc:
        resolve(parse_sdc("create_clock -period 2 [get_ports clk]\n"), n)
    assert "unconstrained clock" in str(exc.value)


def test_clock_through_buffer():
    n = parse_netlist("design x\nport in clk\ngate bg BUFG in=clk out=gclk\nff r1 FDRE clk=gclk d=q q=q\n")
    cs = resolve(parse_sdc("create_clock -name core -period 2 [get_ports clk]\n"), n)
    assert cs.clocks[0].name == "core"
    assert cs.domains == {"r1": "core"}


def test_unknown_references():
    n = parse_netlist("design x\nport in clk\nff r1 FDRE clk=clk d=q q=q\n")
    sdc = ("create_clock -period 2 [get_ports clk]\n"
           "set_input_delay -clock clk 0.3 [get_ports nope]\n"
           "set_multicycle_path -setup 2 -from r1 -to r9\n")
    with pytest.raises(ConstraintError) as exc:
        resolve(parse_sdc(sdc), n)
    assert "unknown port nope" in str(exc.value)
    assert "unknown flip-flop r9" in str(exc.value)


@pytest.mark.parametrize("text, fragment", [
    ("create_clock [get_ports clk]\n", "requires -period"),
    ("create_clock -period -1 [get_ports clk]\n", "must be positive"),
    ("create_clock -period 2 [get_ports clk*]\n", "wildcards"),
    ("set_input_delay 0.5 [get_ports a]\n", "requires -clock"),
    ("set_multicycle_path -setup 1.5 -from a -to b\n", "integer"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_sdc(text)
    assert fragment in str(exc.value)
    assert exc.value.line == 1


def test_duplicate_clock():
    with pytest.raises(ConstraintError):
        parse_sdc("create_clock -period 2 [get_ports clk]\ncreate_clock -period 3 [get_ports clk]\n")


def test_lenient_skips_unsupported():
    text = "create_clock -period 2 [get_ports clk]\nset_clock_uncertainty 0.1 [get_clocks clk]\n"
    with pytest.raises(UnsupportedCommand):
        parse_sdc(text)
    cs = parse_sdc(text, lenient=True)
    assert len(cs.clocks) == 1
    assert len(cs.warnings) == 1
    assert cs.warnings[0].startswith("line 2")


def test_cell_query_in_multicycle():
    cs = parse_sdc("set_multicycle_path -setup 3 -from [get_cells a] -to b\n")
    assert cs.multicycle == {("a", "b"): 3}
