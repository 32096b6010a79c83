# src/services/design_loader.py
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Union

from src.core.constraints.resolver import resolve
from src.core.constraints.sdc_parser import parse_sdc
from src.core.errors import NetlistError
from src.core.netlist.netlist_parser import parse_netlist
from src.core.netlist.netlist_validator import errors_only, validate
from src.core.sta.timing_graph import TimingGraph, apply_derate, build_graph
from src.core.techlib.builtin import builtin
from src.core.techlib.library_parser import parse_library
from src.models.constraints import ConstraintSet
from src.models.library import Library
from src.models.netlist import Diagnostic, Netlist
from src.models.run_config import BUILTIN_LIBRARIES

logger = logging.getLogger(__name__)


@dataclass
class Design:
    netlist: Netlist
    library: Library
    constraints: ConstraintSet
    diagnostics: List[Diagnostic] = field(default_factory=list)

    def timing_graph(self, derate: float = 1.0) -> TimingGraph:
        graph = build_graph(self.netlist, self.library)
        return graph if derate == 1.0 else apply_derate(graph, derate)


def load_library(spec: Union[str, Path]) -> Library:
    if str(spec) in BUILTIN_LIBRARIES:
        return builtin(str(spec))
    path = Path(spec)
    return parse_library(path.read_text(), str(path))


def load_netlist(path: Union[str, Path]) -> Netlist:
    path = Path(path)
    return parse_netlist(path.read_text(), str(path))


def load_design(netlist_path: Union[str, Path], lib: Union[str, Path], sdc_path: Union[str, Path],
                lenient: bool = False) -> Design:
    """Parse, validate and resolve one design; any error diagnostic aborts the load"""
    netlist = load_netlist(netlist_path)
    library = load_library(lib)
    diagnostics = validate(netlist, library)
    for diag in diagnostics:
        logger.warning(str(diag))
    errors = errors_only(diagnostics)
    if errors:
        raise NetlistError(f"{netlist.name}: " + "; ".join(f"{d.obj}: {d.message}" for d in errors))

    sdc_path = Path(sdc_path)
    raw = parse_sdc(sdc_path.read_text(), lenient=lenient, source=str(sdc_path))
    constraints = resolve(raw, netlist)
    for warning in constraints.warnings:
        logger.warning(warning)
    logger.info(f"Loaded design {netlist.name}: {len(netlist.ffs)} flip-flops, {len(netlist.gates)} gates, "
                f"library {library.name}, {len(constraints.clocks)} clocks")
    return Design(netlist, library, constraints, diagnostics)
