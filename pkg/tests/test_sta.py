# tests/test_sta.py
import json

import pytest

from src.core.errors import TimingLensError
from src.core.sta.analyzer import TimingAnalyzer, fmax, hold_check, setup_check, top_paths, worst_slack
from src.core.sta.report import breakdown, format_json, format_text, path_to_dict
from src.models.timing import CheckKind, SkewTable

WIRE_SDC = "create_clock -period 2.0 [get_ports clk]\n"

ASIC_WIRE = """\
design asic_wire
port in clk
port in din
ff r1 DFF_SVT clk=clk d=din q=w
ff r2 DFF_SVT clk=clk d=w q=x
"""

SELF_LOOP = """\
design self_loop
port in clk
ff r FDRE clk=clk d=n q=q
gate l LUT6 in=q,q,q,q,q,q out=n
"""

MULTICYCLE_LIB = """\
library mc
ff FF setup=0.18 hold=0.12 cq=0.45
comb DLY delay=2.55 inputs=1
"""

MULTICYCLE_NET = """\
design mc
port in clk
ff a FF clk=clk d=qb q=qa
gate g DLY in=qa out=n
ff b FF clk=clk d=n q=qb
"""


def _pair(reports, launch, capture):
    return next(r for r in reports if r.launch == launch and r.capture == capture)


def test_fpga_reference_zero_slack(fpga_ref):
    reports = setup_check(fpga_ref.timing_graph(), fpga_ref.constraints)
    worst = reports[0]
    assert (worst.launch, worst.capture) == ("r1", "r2")
    assert worst.arrival == pytest.approx(2.35)
    assert worst.required == pytest.approx(2.35)
    assert worst.slack == pytest.approx(0.0, abs=1e-9)
    parts = worst.components()
    assert parts["clock_to_q"] == pytest.approx(0.45)
    assert parts["logic"] == pytest.approx(1.28)
    assert parts["routing"] == pytest.approx(0.62)
    assert worst.logic_levels == 4


def test_asic_reference_zero_slack(asic_ref):
    worst = setup_check(asic_ref.timing_graph(), asic_ref.constraints)[0]
    assert worst.arrival == pytest.approx(0.755)
    assert worst.slack == pytest.approx(0.0, abs=1e-9)
    parts = breakdown(worst)
    assert parts["logic"] == pytest.approx(0.425)
    assert parts["routing"] == pytest.approx(0.245)
    assert parts["setup"] == pytest.approx(0.045)


def test_fmax_references(fpga_ref, asic_ref, build):
    assert fmax(fpga_ref.timing_graph(), fpga_ref.constraints) == {"clk": 395.3}
    assert fmax(asic_ref.timing_graph(), asic_ref.constraints) == {"clk": 1250.0}
    loop = build(SELF_LOOP, "fpga", WIRE_SDC)
    assert fmax(loop.timing_graph(), loop.constraints) == {"clk": 1052.6}


def test_input_and_output_ports(fpga_ref):
    reports = setup_check(fpga_ref.timing_graph(), fpga_ref.constraints)
    din = _pair(reports, "din", "r1")
    assert din.segments[0].label == "input_delay"
    assert din.arrival == pytest.approx(0.5)
    assert din.slack == pytest.approx(2.53 - 0.18 - 0.5)
    dout = _pair(reports, "r2", "dout")
    assert dout.required == pytest.approx(2.53 - 0.8)
    assert dout.slack == pytest.approx(2.53 - 0.8 - 0.45)


def test_multicycle_moves_setup_edge_only(build):
    d = build(MULTICYCLE_NET, MULTICYCLE_LIB, WIRE_SDC.replace("2.0", "2.35")
              + "set_multicycle_path -setup 2 -from a -to b\n")
    g = d.timing_graph()
    setup = _pair(setup_check(g, d.constraints), "a", "b")
    assert setup.multicycle == 2
    assert setup.arrival == pytest.approx(3.0)
    assert setup.required == pytest.approx(4.52)
    assert setup.slack == pytest.approx(1.52)
    hold = _pair(hold_check(g, d.constraints), "a", "b")
    assert hold.required == pytest.approx(0.12)
    assert hold.slack == pytest.approx(2.88)
    # the reverse path is single-cycle
    assert _pair(setup_check(g, d.constraints), "b", "a").multicycle == 1


def test_hold_direct_wire(load, build):
    d = load("fpga_wire", "fpga", "fpga_ref.sdc")
    g = d.timing_graph()
    assert _pair(hold_check(g, d.constraints), "r1", "r2").slack == pytest.approx(0.330)
    skewed = hold_check(g, d.constraints, SkewTable({"r2": 0.5}))
    assert skewed[0].slack == pytest.approx(-0.170)
    assert worst_slack(skewed) == pytest.approx(-0.170)

    asic = build(ASIC_WIRE, "asic", WIRE_SDC)
    assert _pair(hold_check(asic.timing_graph(), asic.constraints), "r1", "r2").slack == pytest.approx(0.050)


def test_hold_output_port_rule(load):
    d = load("fpga_wire", "fpga", "fpga_ref.sdc")
    dout = _pair(hold_check(d.timing_graph(), d.constraints), "r2", "dout")
    assert dout.required == pytest.approx(-0.8)
    assert dout.slack == pytest.approx(0.45 + 0.8)


def test_hold_is_period_independent(build):
    a = build(MULTICYCLE_NET, MULTICYCLE_LIB, WIRE_SDC)
    b = build(MULTICYCLE_NET, MULTICYCLE_LIB, WIRE_SDC.replace("2.0", "7.5"))
    slacks_a = [(r.launch, r.capture, r.slack) for r in hold_check(a.timing_graph(), a.constraints)]
    slacks_b = [(r.launch, r.capture, r.slack) for r in hold_check(b.timing_graph(), b.constraints)]
    assert slacks_a == slacks_b


def test_setup_slack_grows_with_period(build):
    previous = None
    for period in (1.0, 2.0, 3.5, 8.0):
        d = build(SELF_LOOP, "fpga", f"create_clock -period {period} [get_ports clk]\n")
        slack = worst_slack(setup_check(d.timing_graph(), d.constraints))
        if previous is not None:
            assert slack > previous
        previous = slack


def test_min_equals_max_by_default(fpga_ref):
    g = fpga_ref.timing_graph()
    setup = {(r.launch, r.capture): r.arrival for r in setup_check(g, fpga_ref.constraints)}
    hold = {(r.launch, r.capture): r.arrival for r in hold_check(g, fpga_ref.constraints)}
    assert setup == hold


def test_arrival_is_sum_of_segments(fpga_ref):
    skew = SkewTable({"r1": 0.25})
    for r in setup_check(fpga_ref.timing_graph(), fpga_ref.constraints, skew):
        total = r.launch_time
        for seg in r.segments:
            total += seg.ns
        assert r.arrival == pytest.approx(total, abs=1e-12)
        assert r.slack == pytest.approx(r.required - r.arrival)


def test_derate_scales_max_only(fpga_ref):
    g = fpga_ref.timing_graph(derate=1.2)
    assert _pair(setup_check(g, fpga_ref.constraints), "r1", "r2").arrival == pytest.approx(2.82)
    assert _pair(hold_check(g, fpga_ref.constraints), "r1", "r2").arrival == pytest.approx(2.35)
    with pytest.raises(TimingLensError):
        fpga_ref.timing_graph(derate=0.0)


def test_top_paths_ordering(fpga_ref):
    reports = setup_check(fpga_ref.timing_graph(), fpga_ref.constraints)
    top = top_paths(reports, 2)
    assert len(top) == 2
    assert top[0].slack <= top[1].slack
    assert top_paths(reports, 50) == reports
    with pytest.raises(TimingLensError):
        top_paths(reports, 0)


def test_cross_domain_and_false_path_skipped(load):
    d = load("two_domain", "fpga", "two_domain.sdc")
    analyzer = TimingAnalyzer(d.timing_graph(), d.constraints)
    reports = analyzer.setup_check()
    pairs = {(r.launch, r.capture) for r in reports}
    assert ("reg_a", "sa") not in pairs
    assert ("sa", "sb") not in pairs
    assert ("reg_a", "sa") in analyzer.skipped_cross_domain
    # sa -> sb is declared false, so it is not even handed to CDC
    assert ("sa", "sb") not in analyzer.skipped_cross_domain
    assert _pair(reports, "reg_a", "reg_b").multicycle == 2


def test_fmax_reports_unconstrained_clocks(load):
    d = load("two_domain", "fpga", "two_domain.sdc")
    analyzer = TimingAnalyzer(d.timing_graph(), d.constraints)
    result = analyzer.fmax()
    # reg_a -> reg_b needs (0.45 + 6 * 0.32 + 0.18) / 2
    assert result == {"clk": round(1000.0 / 1.275, 1)}
    assert any(diag.obj == "clk_a" for diag in analyzer.diagnostics)


def test_unconstrained_ports_diagnosed(build):
    text = "design x\nport in clk\nport in a\nport out y\nff r FDRE clk=clk d=a q=y\n"
    d = build(text, "fpga", WIRE_SDC)
    analyzer = TimingAnalyzer(d.timing_graph(), d.constraints)
    assert analyzer.setup_check() == []
    objects = {diag.obj for diag in analyzer.diagnostics}
    assert objects == {"a", "y"}


def test_json_report_shape(fpga_ref):
    reports = setup_check(fpga_ref.timing_graph(), fpga_ref.constraints)
    doc = json.loads(format_json(reports[:1], {"design": "fpga_ref"}))
    assert doc["design"] == "fpga_ref"
    path = doc["paths"][0]
    assert set(path) == {"clock", "check", "launch", "capture", "multicycle",
                         "segments", "arrival", "required", "slack"}
    assert path["arrival"] == 2.35
    assert path["slack"] == 0.0
    assert path["segments"][0] == {"label": "clock_to_q", "ns": 0.45}
    assert path_to_dict(reports[0])["check"] == CheckKind.SETUP.value


def test_text_report(fpga_ref):
    reports = hold_check(fpga_ref.timing_graph(), fpga_ref.constraints)
    text = format_text(reports, "hold")
    assert text.startswith("hold\n")
    assert "breakdown:" in text
    assert "VIOLATED" not in text
    assert format_text([]).strip() == "no constrained paths"
