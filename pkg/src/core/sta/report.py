# src/core/sta/report.py
import json
from typing import Dict, List, Optional

from src.core.config import settings
from src.models.timing import SEGMENT_LABELS, CheckKind, PathReport


def ns_value(x: float, decimals: Optional[int] = None) -> float:
    # + 0.0 folds -0.0 into 0.0
    return round(x, settings.REPORT_DECIMALS if decimals is None else decimals) + 0.0


def fmt_ns(x: float) -> str:
    return f"{ns_value(x):.{settings.REPORT_DECIMALS}f}"


def path_to_dict(report: PathReport) -> Dict:
    return {
        "clock": report.clock,
        "check": report.check.value,
        "launch": report.launch,
        "capture": report.capture,
        "multicycle": report.multicycle,
        "segments": [{"label": seg.label, "ns": ns_value(seg.ns)} for seg in report.segments],
        "arrival": ns_value(report.arrival),
        "required": ns_value(report.required),
        "slack": ns_value(report.slack),
    }


def breakdown(report: PathReport) -> Dict[str, float]:
    """Critical path components plus the capture requirement"""
    totals = report.components()
    parts = {label: ns_value(totals[label]) for label in SEGMENT_LABELS
             if label != "input_delay" or totals[label]}
    parts["setup" if report.check is CheckKind.SETUP else "hold"] = ns_value(report.requirement)
    parts["path_delay"] = ns_value(report.path_delay)
    return parts


def format_path(report: PathReport, index: int) -> str:
    lines = [
        f"Path {index}: {report.launch} -> {report.capture}  "
        f"(clock {report.clock}, {report.check.value}"
        + (f", multicycle {report.multicycle})" if report.multicycle != 1 else ")"),
        f"  {'segment':<12} {'pin':<20} {'incr':>9} {'total':>9}",
    ]
    total = report.launch_time
    if report.launch_time:
        lines.append(f"  {'clock_skew':<12} {'':<20} {fmt_ns(report.launch_time):>9} {fmt_ns(total):>9}")
    for seg in report.segments:
        total += seg.ns
        lines.append(f"  {seg.label:<12} {seg.pin:<20} {fmt_ns(seg.ns):>9} {fmt_ns(total):>9}")
    lines += [
        f"  {'arrival':<33} {fmt_ns(report.arrival):>9}",
        f"  {'required':<33} {fmt_ns(report.required):>9}",
        f"  {'slack':<33} {fmt_ns(report.slack):>9}" + ("  VIOLATED" if report.slack < -settings.TIME_TOLERANCE_NS else ""),
    ]
    parts = breakdown(report)
    shown = " ".join(f"{k}={v:.{settings.REPORT_DECIMALS}f}" for k, v in parts.items())
    lines.append(f"  breakdown: {shown} logic_levels={report.logic_levels}")
    return "\n".join(lines)


def format_text(reports: List[PathReport], title: str = "") -> str:
    blocks = [title] if title else []
    if not reports:
        blocks.append("no constrained paths")
    for idx, report in enumerate(reports, start=1):
        blocks.append(format_path(report, idx))
    return "\n\n".join(blocks) + "\n"


def format_json(reports: List[PathReport], meta: Optional[Dict] = None) -> str:
    doc: Dict = {"paths": [path_to_dict(r) for r in reports]}
    if meta:
        doc = {**meta, **doc}
    return json.dumps(doc, indent=2) + "\n"


def format_fmax(result: Dict[str, float]) -> str:
    return "".join(f"{clk} {mhz:.1f} MHz\n" for clk, mhz in sorted(result.items()))
