# src/core/cdc/crossing_finder.py
import logging
from typing import Dict, List, Set, Tuple

from src.core.netlist.fanin import fanin_cone
from src.models.constraints import ConstraintSet
from src.models.crossing import Crossing
from src.models.library import Library
from src.models.netlist import Netlist

logger = logging.getLogger(__name__)


def async_sources(n: Netlist, cs: ConstraintSet, ff_name: str) -> List[Tuple[str, str]]:
    """(source net, source domain) of every other-domain flip-flop in the D cone of `ff_name`"""
    dst_domain = cs.domains.get(ff_name)
    found: List[Tuple[str, str]] = []
    for pin in sorted(fanin_cone(n, f"{ff_name}/D")):
        if "/" not in pin:
            continue
        src = pin.split("/", 1)[0]
        src_domain = cs.domains.get(src)
        if src_domain is None:
            logger.warning(f"Flip-flop {src} has no clock domain; skipped as crossing source")
            continue
        if src_domain != dst_domain:
            found.append((n.ff_by_name[src].q, src_domain))
    return found


def find_crossings(n: Netlist, lib: Library, cs: ConstraintSet) -> List[Crossing]:
    """
    One crossing per (signal, source domain, destination domain), where the
    signal is the source net or, for nets declared in a bus, the bus name.
    Ordered by signal, then domains.
    """
    groups: Dict[Tuple[str, str, str], Tuple[Set[str], Set[str]]] = {}
    for ff in sorted(n.ffs, key=lambda f: f.name):
        dst_domain = cs.domains.get(ff.name)
        if dst_domain is None:
            logger.warning(f"Flip-flop {ff.name} has no clock domain; skipped in CDC analysis")
            continue
        for net, src_domain in async_sources(n, cs, ff.name):
            signal = n.bus_of(net) or net
            nets, entries = groups.setdefault((signal, src_domain, dst_domain), (set(), set()))
            nets.add(net)
            entries.add(ff.name)

    crossings: List[Crossing] = []
    for (signal, src_domain, dst_domain), (nets, entries) in sorted(groups.items()):
        is_bus = signal in n.buses
        if is_bus:
            # bus order, and only the bits that actually cross
            source_nets = tuple(net for net in n.buses[signal] if net in nets)
        else:
            source_nets = (signal,)
        entry_ffs = tuple(sorted(entries))
        crossings.append(Crossing(
            signal=signal,
            src_domain=src_domain,
            dst_domain=dst_domain,
            dst_entry_ffs=entry_ffs,
            source_nets=source_nets,
            is_bus=is_bus,
            entry_cell=n.ff_by_name[entry_ffs[0]].cell,
        ))
    for crossing in crossings:
        cell = lib.cells.get(crossing.entry_cell)
        if cell is not None and not cell.has_metastability_params:
            logger.warning(f"Crossing {crossing.signal}: cell {cell.name} has no tau/tw; MTBF unavailable")
    logger.info(f"Found {len(crossings)} clock-domain crossings in {n.name}")
    return crossings
