# tests/test_cdc.py
import json
import math

import numpy as np
import pytest

from src.core.cdc.cdc_checker import analyze_crossings
from src.core.cdc.classifier import classify
from src.core.cdc.crossing_finder import find_crossings
from src.core.cdc.depth import frequency_ratio, recommend_depth
from src.core.cdc.mtbf import (chain_params, crossing_mtbf, make_params, min_depth_for_target, mtbf,
                               resolution_time_ns)
from src.core.cdc.report import finding_to_dict, format_json, format_text
from src.core.errors import MetastabilityParamsError, TimingLensError
from src.core.techlib.builtin import builtin
from src.core.techlib.library_parser import lookup, parse_library
from src.models.crossing import SyncKind


def _findings(load, name, f_data=1e6, target=None):
    d = load(name, "fpga", "cdc.sdc")
    return analyze_crossings(d.netlist, d.library, d.constraints, f_data, target)


def _only(findings):
    assert len(findings) == 1
    return findings[0]


@pytest.mark.parametrize("name, kind, depth, safe", [
    ("cdc_two_ff", SyncKind.TWO_FLOP_CHAIN, 2, True),
    ("cdc_three_ff", SyncKind.TWO_FLOP_CHAIN, 3, True),
    ("cdc_comb_before_sync", SyncKind.COMB_BEFORE_SYNC, 1, False),
    ("cdc_fanout", SyncKind.MULTI_FANOUT_SYNC, 1, False),
    ("cdc_raw", SyncKind.UNSYNCHRONIZED, 1, False),
])
def test_single_bit_classification(load, name, kind, depth, safe):
    finding = _only(_findings(load, name))
    assert finding.crossing.src_domain == "clk_a"
    assert finding.crossing.dst_domain == "clk_b"
    assert finding.classification.kind is kind
    assert finding.classification.depth == depth
    assert finding.is_safe is safe
    assert (finding.mtbf is not None) == (kind is SyncKind.TWO_FLOP_CHAIN)


def test_two_flop_crossing_details(load):
    finding = _only(_findings(load, "cdc_two_ff"))
    assert finding.crossing.signal == "a_sig"
    assert finding.crossing.dst_entry_ffs == ("s1",)
    assert str(finding.classification) == "TwoFlopChain(2)"
    # 250 MHz against 100 MHz rounds to ratio 2
    assert finding.recommended_depth == 3
    params = finding.mtbf.params
    assert params.t_res == pytest.approx(9.82e-9)
    assert params.f_clock == pytest.approx(1e8)
    assert finding.mtbf.mtbf.log10 == pytest.approx(98.2 / math.log(10) - 4)


def test_gray_bus(load):
    finding = _only(_findings(load, "cdc_gray_bus"))
    assert finding.crossing.signal == "wr_ptr"
    assert finding.crossing.source_nets == ("wp0", "wp1", "wp2", "wp3")
    assert str(finding.classification) == "GrayBus(4,2)"
    assert finding.is_safe
    per_bit = mtbf(chain_params(lookup(builtin("fpga"), "FDRE"), 10.0, 2, 1e6))
    assert finding.mtbf.mtbf.seconds == pytest.approx(per_bit.seconds / 4, rel=1e-12)
    assert finding.mtbf.width == 4


def test_binary_bus_needs_gray_attribute(load):
    finding = _only(_findings(load, "cdc_bin_bus"))
    assert finding.classification.kind is SyncKind.TWO_FLOP_CHAIN
    assert not finding.is_safe
    assert any("coherency" in w for w in finding.classification.warnings)


def test_handshake_pair(load):
    findings = _findings(load, "cdc_handshake")
    assert [f.crossing.signal for f in findings] == ["ack", "req"]
    assert all(f.classification.kind is SyncKind.HANDSHAKE for f in findings)
    assert all(f.is_safe for f in findings)
    ack = findings[0]
    assert (ack.crossing.src_domain, ack.crossing.dst_domain) == ("clk_b", "clk_a")


def test_half_handshake_is_flagged(build, designs):
    text = (designs / "cdc_handshake.tnl").read_text().replace("attr ack handshake=ack\n", "")
    d = build(text, "fpga", (designs / "cdc.sdc").read_text())
    crossings = {c.signal: c for c in find_crossings(d.netlist, d.library, d.constraints)}
    verdict = classify(d.netlist, crossings["req"], d.constraints)
    assert verdict.kind is SyncKind.TWO_FLOP_CHAIN
    assert any("no synchronized partner" in w for w in verdict.warnings)


def test_one_bit_captured_twice(build, designs):
    text = (designs / "cdc_two_ff.tnl").read_text() + "ff t1 FDRE clk=clk_b d=a_sig q=t1q\n"
    d = build(text, "fpga", (designs / "cdc.sdc").read_text())
    finding = _only(analyze_crossings(d.netlist, d.library, d.constraints, 1e6))
    assert finding.crossing.dst_entry_ffs == ("s1", "t1")
    assert finding.classification.kind is SyncKind.MULTI_FANOUT_SYNC


def test_classification_ignores_names(build, designs):
    text = (designs / "cdc_three_ff.tnl").read_text()
    for old, new in (("s1", "meta_x"), ("s2", "meta_y"), ("s3", "meta_z"), ("a_sig", "async_bit"), ("src", "launcher")):
        text = text.replace(old, new)
    d = build(text, "fpga", (designs / "cdc.sdc").read_text())
    finding = _only(analyze_crossings(d.netlist, d.library, d.constraints, 1e6))
    assert str(finding.classification) == "TwoFlopChain(3)"
    assert finding.crossing.signal == "async_bit"


def test_mtbf_target(load):
    missed = _only(_findings(load, "cdc_two_ff", target=1e50))
    assert missed.meets_target is False
    assert not missed.is_safe
    # one more stage closes the gap
    assert missed.target_depth == 3
    assert "target MISSED (min depth 3)" in format_text([missed])
    met = _only(_findings(load, "cdc_two_ff", target=1e30))
    assert met.meets_target is True
    assert met.is_safe
    assert met.target_depth == 2
    assert _only(_findings(load, "cdc_two_ff", target=1e305)).target_depth is None
    assert _only(_findings(load, "cdc_raw", target=1e30)).meets_target is None


def test_mtbf_closed_form():
    base = dict(tau=2e-10, f_data=1e6, f_clock=1e8, t_w=1e-10)
    zero = mtbf(make_params(t_res=0.0, **base))
    assert zero.seconds == pytest.approx(1e-4, rel=1e-12)
    value = mtbf(make_params(t_res=9.82e-9, **base))
    assert value.seconds == pytest.approx(math.exp(49.1) / 1e4, rel=1e-9)
    assert value.seconds == pytest.approx(2.11e17, rel=0.01)
    doubled = mtbf(make_params(t_res=2 * 9.82e-9, **base))
    assert doubled.seconds / value.seconds == pytest.approx(math.exp(49.1), rel=1e-9)


def test_mtbf_saturates_with_log():
    value = mtbf(make_params(t_res=1e-6, tau=1e-10, f_data=1e6, f_clock=1e8, t_w=1e-10))
    assert value.saturated
    assert value.seconds == pytest.approx(1e300)
    assert value.log10 == pytest.approx(1e4 / math.log(10) - 4)
    tiny = mtbf(make_params(t_res=0.0, tau=1e-10, f_data=1e200, f_clock=1e200, t_w=1.0))
    assert tiny.saturated
    assert tiny.log10 == pytest.approx(-400)


def test_mtbf_monotonic():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        p = dict(t_res=float(rng.uniform(0, 2e-8)), tau=float(rng.uniform(1e-11, 1e-9)),
                 f_data=float(rng.uniform(1e3, 1e8)), f_clock=float(rng.uniform(1e6, 1e9)),
                 t_w=float(rng.uniform(1e-12, 1e-9)))
        base = mtbf(make_params(**p)).log10
        assert mtbf(make_params(**{**p, "t_res": p["t_res"] * 1.5 + 1e-12})).log10 > base
        for key in ("f_data", "f_clock", "t_w"):
            assert mtbf(make_params(**{**p, key: p[key] * 1.5})).log10 < base


@pytest.mark.parametrize("field, value", [("tau", 0.0), ("t_res", -1e-9), ("f_data", 0.0), ("t_w", -1.0)])
def test_invalid_params(field, value):
    params = dict(t_res=1e-9, tau=1e-10, f_data=1e6, f_clock=1e8, t_w=1e-10)
    params[field] = value
    with pytest.raises(MetastabilityParamsError):
        make_params(**params)


def test_depth_adds_one_period():
    fdre = lookup(builtin("fpga"), "FDRE")
    assert resolution_time_ns(fdre, 10.0, 2) == pytest.approx(9.82)
    assert resolution_time_ns(fdre, 10.0, 3) == pytest.approx(19.82)
    two = mtbf(chain_params(fdre, 10.0, 2, 1e6))
    three = mtbf(chain_params(fdre, 10.0, 3, 1e6))
    assert three.log10 - two.log10 == pytest.approx(100 / math.log(10))


def test_missing_metastability_params():
    lib = parse_library("library bare\nff PLAIN setup=0.1 hold=0.05 cq=0.2\n")
    with pytest.raises(MetastabilityParamsError) as exc:
        chain_params(lookup(lib, "PLAIN"), 10.0, 2, 1e6)
    assert "library lacks metastability parameters for cell PLAIN" in str(exc.value)


def test_crossing_mtbf_rejects_unsynchronized(load):
    d = load("cdc_raw", "fpga", "cdc.sdc")
    crossing = find_crossings(d.netlist, d.library, d.constraints)[0]
    with pytest.raises(MetastabilityParamsError):
        crossing_mtbf(crossing, d.library, d.constraints, 1e6, classify(d.netlist, crossing, d.constraints))


def test_min_depth_for_target():
    fdre = lookup(builtin("fpga"), "FDRE")
    assert min_depth_for_target(fdre, 10.0, 1e6, 1e30) == 2
    assert min_depth_for_target(fdre, 10.0, 1e6, 1e50) == 3
    assert min_depth_for_target(fdre, 10.0, 1e6, 1e50, width=10 ** 40) == 4
    assert min_depth_for_target(fdre, 10.0, 1e6, 1e50, max_depth=2) is None


@pytest.mark.parametrize("ratio, depth", [(1, 2), (2, 3), (3, 3), (4, 3), (5, 4), (16, 4)])
def test_recommend_depth(ratio, depth):
    assert recommend_depth(ratio) == depth


def test_frequency_ratio():
    assert frequency_ratio(250e6, 100e6) == 2
    assert frequency_ratio(100e6, 300e6) == 3
    assert frequency_ratio(100e6, 100e6) == 1
    with pytest.raises(TimingLensError):
        recommend_depth(0)
    with pytest.raises(TimingLensError):
        frequency_ratio(0, 1)


def test_reports(load):
    findings = _findings(load, "cdc_two_ff") + _findings(load, "cdc_raw")
    doc = json.loads(format_json(findings))
    first = doc["crossings"][0]
    assert {"signal", "src_clock", "dst_clock", "class", "depth", "width", "mtbf_s", "mtbf_log10"} <= set(first)
    assert first["class"] == "TwoFlopChain"
    assert first["mtbf_params"]["cell"] == "FDRE"
    assert doc["crossings"][1]["mtbf_s"] is None
    assert finding_to_dict(findings[1])["class"] == "Unsynchronized"
    text = format_text(findings)
    assert "[ok]" in text
    assert "[UNSAFE]" in text
    assert format_text([]) == "no clock-domain crossings\n"
