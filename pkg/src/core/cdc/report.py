# src/core/cdc/report.py
import json
from typing import Dict, List

from src.models.crossing import CdcFinding


def _sci(value: float) -> str:
    return f"{value:.3e}"


def finding_to_dict(f: CdcFinding) -> Dict:
    c, v = f.crossing, f.classification
    doc = {
        "signal": c.signal,
        "src_clock": c.src_domain,
        "dst_clock": c.dst_domain,
        "class": v.kind.value,
        "depth": v.depth,
        "width": v.width if v.width is not None else c.width,
        "mtbf_s": float(_sci(f.mtbf.mtbf.seconds)) if f.mtbf else None,
        "mtbf_log10": round(f.mtbf.mtbf.log10, 3) if f.mtbf else None,
        "entry_ffs": list(c.dst_entry_ffs),
        "recommended_depth": f.recommended_depth,
        "warnings": list(v.warnings),
    }
    if f.mtbf:
        p = f.mtbf.params
        doc["mtbf_params"] = {"cell": f.mtbf.cell, "t_res_s": float(_sci(p.t_res)), "tau_s": float(_sci(p.tau)),
                              "t_w_s": float(_sci(p.t_w)), "f_data_hz": float(_sci(p.f_data)),
                              "f_clock_hz": float(_sci(p.f_clock))}
        doc["saturated"] = f.mtbf.mtbf.saturated
    if f.meets_target is not None:
        doc["meets_target"] = f.meets_target
        doc["target_depth"] = f.target_depth
    return doc


def format_json(findings: List[CdcFinding]) -> str:
    return json.dumps({"crossings": [finding_to_dict(f) for f in findings]}, indent=2) + "\n"


def format_text(findings: List[CdcFinding]) -> str:
    if not findings:
        return "no clock-domain crossings\n"
    lines = []
    for f in findings:
        c, v = f.crossing, f.classification
        status = "ok" if f.is_safe else "UNSAFE"
        line = f"{c.signal}: {c.src_domain} -> {c.dst_domain}  {v}  [{status}]"
        if f.mtbf:
            p = f.mtbf.params
            bound = ">= " if f.mtbf.mtbf.saturated and f.mtbf.mtbf.log10 > 0 else ""
            line += (f"\n  mtbf {bound}{_sci(f.mtbf.mtbf.seconds)} s (log10 {f.mtbf.mtbf.log10:.3f})"
                     f"  t_res={_sci(p.t_res)} s tau={_sci(p.tau)} s t_w={_sci(p.t_w)} s "
                     f"f_data={_sci(p.f_data)} Hz f_clock={_sci(p.f_clock)} Hz")
            if f.meets_target is not None:
                line += "  target met" if f.meets_target else "  target MISSED"
                line += f" (min depth {f.target_depth})" if f.target_depth else " (no depth within limit)"
        line += f"\n  entry {', '.join(c.dst_entry_ffs)}; recommended depth {f.recommended_depth}"
        for warning in v.warnings:
            line += f"\n  warning: {warning}"
        lines.append(line)
    return "\n".join(lines) + "\n"
