# src/cli/app.py
import asyncio
import functools
import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Callable, Optional

import typer

from src import __version__
from src.core.cdc.cdc_checker import analyze_crossings
from src.core.cdc.gray import bin_to_gray, check_gray_sequence, gray_sequence, gray_to_bin, read_trace
from src.core.cdc.mtbf import make_params, mtbf
from src.core.cdc import report as cdc_report
from src.core.config import settings
from src.core.constraints.sdc_parser import constraints_to_dict
from src.core.errors import TimingLensError
from src.core.msim.adaptive_depth import simulate_adaptive_depth
from src.core.msim.metastability_simulator import simulate_mtbf
from src.core.msim.sim_io import depth_trace_frame, event_log_frame, frame_to_csv, result_to_json
from src.core.skewopt.constraint_graph import collect_paths
from src.core.skewopt.schedule_io import read_schedule, schedule_to_csv, write_schedule
from src.core.skewopt.scheduler import optimize_period, verify_schedule, zero_skew_period
from src.core.sta import report as sta_report
from src.core.sta.analyzer import top_paths
from src.models.run_config import RunConfig
from src.models.simulation import AdaptivePolicy, SimConfig
from src.services.design_loader import Design, load_design
from src.services.timing_service import TimingService

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="timinglens",
    help="Gate-level static timing and clock-domain-crossing analysis.",
    add_completion=False,
    no_args_is_help=True,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _fail(message: str) -> None:
    typer.echo(f"error: {message}", err=True)
    raise typer.Exit(EXIT_INPUT)


def guarded(command: Callable) -> Callable:
    """Map every failure of a command onto exit code 2"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except typer.Exit:
            raise
        except (TimingLensError, ValueError, OSError) as e:
            _fail(str(e))
        except Exception as e:
            logger.error(f"Unexpected failure: {e}", exc_info=True)
            _fail(f"internal error: {e}")
    return wrapper


def _version(value: bool) -> None:
    if value:
        typer.echo(f"timinglens {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(False, "--version", callback=_version, is_eager=True,
                                 help="Print the version and exit."),
) -> None:
    pass


def _design(cfg: RunConfig) -> Design:
    design = load_design(cfg.netlist, cfg.lib, cfg.sdc, lenient=cfg.lenient)
    if cfg.skew is None:
        return design
    sched = read_schedule(cfg.skew)
    clocks = tuple(replace(clk, period=sched.period) for clk in design.constraints.clocks)
    return replace(design, constraints=replace(design.constraints, clocks=clocks))


def _skew_table(cfg: RunConfig):
    return read_schedule(cfg.skew).table() if cfg.skew else None


LIB_HELP = "Built-in library (fpga|asic) or a .tlib file."


@app.command("report-timing")
@guarded
def report_timing(
    netlist: Path = typer.Option(..., "--netlist", help="Design netlist (.tnl)."),
    lib: str = typer.Option(settings.DEFAULT_LIB, "--lib", help=LIB_HELP),
    sdc: Path = typer.Option(..., "--sdc", help="Timing constraints (.sdc)."),
    check: str = typer.Option("setup", "--check", help="setup, hold or both."),
    max_paths: int = typer.Option(1, "--max-paths", help="Worst paths to print per check."),
    fmt: str = typer.Option("text", "--format", help="text or json."),
    derate: float = typer.Option(1.0, "--derate", help="Multiplier on max delays."),
    skew: Optional[Path] = typer.Option(None, "--skew", help="Skew schedule CSV from skew-opt."),
    lenient: bool = typer.Option(False, "--lenient", help="Skip unsupported SDC commands."),
) -> None:
    """Setup/hold slack report; exits 1 when any path violates."""
    cfg = RunConfig(netlist=netlist, lib=lib, sdc=sdc, check=check, max_paths=max_paths,
                    format=fmt, derate=derate, skew=skew, lenient=lenient)
    design = _design(cfg)
    service = TimingService(design, derate=cfg.derate, skew=_skew_table(cfg))
    result = asyncio.run(service.analyze(cfg.check))

    shown = []
    for reports in (result.setup, result.hold):
        if reports:
            shown.extend(top_paths(reports, cfg.max_paths))

    if cfg.format == "json":
        meta = {"design": design.netlist.name, "library": design.library.name,
                "derate": cfg.derate, "constraints": constraints_to_dict(design.constraints)}
        typer.echo(sta_report.format_json(shown, meta), nl=False)
    else:
        title = f"Design {design.netlist.name} ({design.library.name}), check {cfg.check}"
        if cfg.derate != 1.0:
            title += f", derate {cfg.derate}"
        typer.echo(sta_report.format_text(shown, title), nl=False)

    worst = result.worst_slack
    if worst is not None and worst < -settings.TIME_TOLERANCE_NS:
        raise typer.Exit(EXIT_VIOLATION)


@app.command("fmax")
@guarded
def fmax_command(
    netlist: Path = typer.Option(..., "--netlist"),
    lib: str = typer.Option(settings.DEFAULT_LIB, "--lib", help=LIB_HELP),
    sdc: Path = typer.Option(..., "--sdc"),
    fmt: str = typer.Option("text", "--format"),
    derate: float = typer.Option(1.0, "--derate"),
    skew: Optional[Path] = typer.Option(None, "--skew"),
    lenient: bool = typer.Option(False, "--lenient"),
) -> None:
    """Maximum clock frequency per clock, in MHz."""
    cfg = RunConfig(netlist=netlist, lib=lib, sdc=sdc, format=fmt, derate=derate, skew=skew, lenient=lenient)
    design = _design(cfg)
    result = asyncio.run(TimingService(design, derate=cfg.derate, skew=_skew_table(cfg)).fmax())
    if not result:
        _fail(f"no constrained paths in {design.netlist.name}; Fmax not reported")
    if cfg.format == "json":
        typer.echo(json.dumps({"design": design.netlist.name, "fmax_mhz": dict(sorted(result.items()))}, indent=2))
    else:
        typer.echo(sta_report.format_fmax(result), nl=False)


@app.command("cdc")
@guarded
def cdc_command(
    netlist: Path = typer.Option(..., "--netlist"),
    lib: str = typer.Option(settings.DEFAULT_LIB, "--lib", help=LIB_HELP),
    sdc: Path = typer.Option(..., "--sdc"),
    fdata: float = typer.Option(..., "--fdata", help="Data toggle rate in Hz."),
    mtbf_target: Optional[float] = typer.Option(None, "--mtbf-target", help="Required MTBF in seconds."),
    fmt: str = typer.Option("text", "--format"),
    lenient: bool = typer.Option(False, "--lenient"),
) -> None:
    """Crossing classification and MTBF; exits 1 on any unsafe crossing."""
    cfg = RunConfig(netlist=netlist, lib=lib, sdc=sdc, format=fmt, lenient=lenient)
    if not fdata > 0:
        _fail(f"--fdata must be positive, got {fdata}")
    design = _design(cfg)
    findings = analyze_crossings(design.netlist, design.library, design.constraints, fdata, mtbf_target)
    render = cdc_report.format_json if cfg.format == "json" else cdc_report.format_text
    typer.echo(render(findings), nl=False)
    if not all(f.is_safe for f in findings):
        raise typer.Exit(EXIT_VIOLATION)


@app.command("mtbf")
@guarded
def mtbf_command(
    tres: float = typer.Option(..., "--tres", help="Resolution time in seconds."),
    tau: float = typer.Option(..., "--tau", help="Resolution time constant in seconds."),
    tw: float = typer.Option(..., "--tw", help="Metastability window in seconds."),
    fdata: float = typer.Option(..., "--fdata", help="Data rate in Hz."),
    fclock: float = typer.Option(..., "--fclock", help="Clock frequency in Hz."),
    fmt: str = typer.Option("text", "--format"),
) -> None:
    """Closed-form synchronizer MTBF."""
    params = make_params(t_res=tres, tau=tau, t_w=tw, f_data=fdata, f_clock=fclock)
    value = mtbf(params)
    if fmt == "json":
        typer.echo(json.dumps({
            "mtbf_s": float(f"{value.seconds:.6e}"),
            "mtbf_log10": round(value.log10, 6),
            "saturated": value.saturated,
            "params": params.model_dump(),
        }, indent=2))
    else:
        bound = ">= " if value.saturated and value.log10 > 0 else ""
        typer.echo(f"MTBF {bound}{value.seconds:.6e} s (log10 {value.log10:.6f})")
        typer.echo(f"  t_res={tres:.3e} s tau={tau:.3e} s t_w={tw:.3e} s f_data={fdata:.3e} Hz f_clock={fclock:.3e} Hz")


@app.command("sim-mtbf")
@guarded
def sim_mtbf_command(
    tres: float = typer.Option(..., "--tres"),
    tau: float = typer.Option(..., "--tau"),
    tw: float = typer.Option(..., "--tw"),
    fdata: float = typer.Option(..., "--fdata"),
    fclock: float = typer.Option(..., "--fclock"),
    seed: int = typer.Option(settings.DEFAULT_SEED, "--seed"),
    min_events: int = typer.Option(10000, "--min-events"),
    min_failures: Optional[int] = typer.Option(None, "--min-failures", help="Stop at this many failures instead."),
    max_time: float = typer.Option(1e6, "--max-time", help="Simulated-time cap in seconds."),
    events_csv: Optional[Path] = typer.Option(None, "--events-csv", help="Write the event log here."),
    adaptive: bool = typer.Option(False, "--adaptive", help="Simulate the adaptive-depth controller."),
    min_depth: int = typer.Option(2, "--min-depth"),
    max_depth: int = typer.Option(5, "--max-depth"),
    mode: int = typer.Option(0, "--mode", help="Reliability mode 0..7 (event threshold)."),
    window: int = typer.Option(2**24, "--window", help="Clock cycles per evaluation window."),
    windows: Optional[int] = typer.Option(None, "--windows", help="Number of windows (default from --max-time)."),
    trace_csv: Optional[Path] = typer.Option(None, "--trace-csv"),
) -> None:
    """Monte Carlo MTBF, or the adaptive-depth trace with --adaptive."""
    params = make_params(t_res=tres, tau=tau, t_w=tw, f_data=fdata, f_clock=fclock)
    cfg = SimConfig(params=params, seed=seed, min_events=min_events, min_failures=min_failures,
                    max_sim_time=max_time, record_events=events_csv is not None)
    if adaptive:
        policy = AdaptivePolicy(min_depth=min_depth, max_depth=max_depth, reliability_mode=mode, window=window)
        csv_text = frame_to_csv(depth_trace_frame(simulate_adaptive_depth(policy, cfg, windows)))
        if trace_csv is not None:
            trace_csv.write_text(csv_text)
        else:
            typer.echo(csv_text, nl=False)
        return

    result = simulate_mtbf(cfg)
    if events_csv is not None:
        events_csv.write_text(frame_to_csv(event_log_frame(result)))
    typer.echo(result_to_json(result, {"seed": seed, "params": params.model_dump()}), nl=False)


@app.command("skew-opt")
@guarded
def skew_opt_command(
    netlist: Path = typer.Option(..., "--netlist"),
    lib: str = typer.Option(settings.DEFAULT_LIB, "--lib", help=LIB_HELP),
    sdc: Path = typer.Option(..., "--sdc"),
    bound: Optional[float] = typer.Option(None, "--bound", help="Max |skew| in ns (default one clock period)."),
    tol: float = typer.Option(0.001, "--tol", help="Period search tolerance in ns."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the schedule CSV here."),
    fmt: str = typer.Option("text", "--format"),
    derate: float = typer.Option(1.0, "--derate"),
    lenient: bool = typer.Option(False, "--lenient"),
) -> None:
    """Useful-skew schedule minimizing the clock period."""
    cfg = RunConfig(netlist=netlist, lib=lib, sdc=sdc, format=fmt, derate=derate, lenient=lenient)
    design = _design(cfg)
    graph = design.timing_graph(cfg.derate)
    paths = collect_paths(graph, design.constraints)
    if bound is None:
        bound = design.constraints.period(paths.clock)
    period, sched = optimize_period(graph, design.constraints, bound, tol)
    setup, hold = verify_schedule(graph, design.constraints, sched)
    worst_setup = min((r.slack for r in setup), default=None)
    worst_hold = min((r.slack for r in hold), default=None)
    baseline = zero_skew_period(paths)
    if out is not None:
        write_schedule(sched, out)

    if cfg.format == "json":
        typer.echo(json.dumps({
            "clock": paths.clock,
            "period_ns": sta_report.ns_value(period),
            "zero_skew_period_ns": sta_report.ns_value(baseline),
            "bound_ns": sta_report.ns_value(bound),
            "skews": {reg: sta_report.ns_value(s) for reg, s in sorted(sched.skews.items())},
            "worst_setup_slack": None if worst_setup is None else sta_report.ns_value(worst_setup),
            "worst_hold_slack": None if worst_hold is None else sta_report.ns_value(worst_hold),
        }, indent=2))
        return
    typer.echo(f"clock {paths.clock}: period {sta_report.fmt_ns(period)} ns "
               f"(zero-skew {sta_report.fmt_ns(baseline)} ns, bound {sta_report.fmt_ns(bound)} ns)")
    if worst_setup is not None:
        typer.echo(f"worst setup slack {sta_report.fmt_ns(worst_setup)} ns")
    if worst_hold is not None:
        typer.echo(f"worst hold slack {sta_report.fmt_ns(worst_hold)} ns")
    if out is None:
        typer.echo(schedule_to_csv(sched), nl=False)


@app.command("gray")
@guarded
def gray_command(
    width: int = typer.Option(..., "--width", help="Word width in bits."),
    to_gray: Optional[int] = typer.Option(None, "--to-gray", help="Binary value to encode."),
    to_bin: Optional[int] = typer.Option(None, "--to-bin", help="Gray value to decode."),
    check_file: Optional[Path] = typer.Option(None, "--check-file", help="Value trace, one word per line."),
    sequence: bool = typer.Option(False, "--sequence", help="Print the Gray counter sequence as a trace."),
) -> None:
    """Binary/Gray conversion and Gray sequence checking."""
    chosen = [opt for opt in (to_gray, to_bin, check_file, sequence or None) if opt is not None]
    if len(chosen) != 1:
        _fail("give exactly one of --to-gray, --to-bin, --check-file, --sequence")
    if sequence:
        typer.echo("\n".join(format(word, f"0{width}b") for word in gray_sequence(width)))
    elif to_gray is not None:
        typer.echo(bin_to_gray(to_gray, width))
    elif to_bin is not None:
        typer.echo(gray_to_bin(to_bin, width))
    else:
        words = read_trace(check_file.read_text(), str(check_file))
        bad = check_gray_sequence(words, width)
        if bad is None:
            typer.echo(f"ok: {len(words)} words")
        else:
            nxt = (bad + 1) % len(words)
            typer.echo(f"violation at index {bad}: {words[bad]:#x} -> {words[nxt]:#x}")
