# src/core/cdc/classifier.py
from typing import List, Optional

from src.core.cdc.crossing_finder import async_sources
from src.models.constraints import ConstraintSet
from src.models.crossing import Classification, Crossing, SyncKind
from src.models.netlist import Netlist

# worst first; used to summarize a bus whose bits disagree
_SEVERITY = [
    SyncKind.UNSYNCHRONIZED,
    SyncKind.COMB_BEFORE_SYNC,
    SyncKind.MULTI_FANOUT_SYNC,
    SyncKind.TWO_FLOP_CHAIN,
]


def chain_from(n: Netlist, cs: ConstraintSet, source_net: str, entry: str) -> Classification:
    """Classify the synchronizer that starts at flip-flop `entry` for one async bit"""
    first = n.ff_by_name[entry]
    if first.d != source_net:
        return Classification(SyncKind.COMB_BEFORE_SYNC, depth=1)

    domain = cs.domains[entry]
    depth = 1
    current = first
    seen = {current.name}
    while True:
        loads = n.loads.get(current.q, [])
        stages = [ld for ld in loads
                  if ld.kind == "ff" and ld.pin == "D" and cs.domains.get(ld.name) == domain]
        if len(loads) != 1 or len(stages) != 1 or stages[0].name in seen:
            break
        current = n.ff_by_name[stages[0].name]
        seen.add(current.name)
        depth += 1

    if depth >= 2:
        return Classification(SyncKind.TWO_FLOP_CHAIN, depth=depth)
    # the first stage fans out before reaching a second same-domain stage
    loads = n.loads.get(first.q, [])
    if len(loads) > 1 and any(ld.kind == "ff" and ld.pin == "D" and cs.domains.get(ld.name) == domain
                              for ld in loads):
        return Classification(SyncKind.MULTI_FANOUT_SYNC, depth=1)
    return Classification(SyncKind.UNSYNCHRONIZED, depth=1)


def _entries_for(n: Netlist, cs: ConstraintSet, crossing: Crossing, net: str) -> List[str]:
    return [ff for ff in crossing.dst_entry_ffs
            if any(src == net for src, _ in async_sources(n, cs, ff))]


def _classify_bit(n: Netlist, cs: ConstraintSet, crossing: Crossing, net: str) -> Classification:
    entries = _entries_for(n, cs, crossing, net)
    if not entries:
        return Classification(SyncKind.UNSYNCHRONIZED)
    if len(entries) > 1:
        return Classification(
            SyncKind.MULTI_FANOUT_SYNC,
            warnings=(f"{net} is captured by {len(entries)} flip-flops in {crossing.dst_domain}: "
                      + ", ".join(entries),),
        )
    return chain_from(n, cs, net, entries[0])


def _worst(bits: List[Classification]) -> Classification:
    return min(bits, key=lambda c: (_SEVERITY.index(c.kind), c.depth or 0))


def _handshake_partner(n: Netlist, cs: ConstraintSet, crossing: Crossing, role: str) -> Optional[Classification]:
    """Chain of the opposite handshake net going back from the destination to the source domain"""
    wanted = "ack" if role == "req" else "req"
    for (obj, key), value in sorted(n.attrs.items()):
        if key != "handshake" or value != wanted:
            continue
        driver = n.driver_of(obj)
        if driver is None or driver.kind != "ff" or cs.domains.get(driver.name) != crossing.dst_domain:
            continue
        entries = [ld.name for ld in n.loads.get(obj, [])
                   if ld.kind == "ff" and ld.pin == "D" and cs.domains.get(ld.name) == crossing.src_domain]
        if len(entries) == 1:
            return chain_from(n, cs, obj, entries[0])
    return None


def classify(n: Netlist, crossing: Crossing, cs: ConstraintSet) -> Classification:
    """Structural synchronizer recognition for one crossing"""
    if crossing.is_bus:
        bits = [_classify_bit(n, cs, crossing, net) for net in crossing.source_nets]
        chains = [b for b in bits if b.kind is SyncKind.TWO_FLOP_CHAIN]
        width = len(bits)
        if len(chains) != width:
            worst = _worst(bits)
            return Classification(worst.kind, depth=worst.depth, width=width, warnings=worst.warnings)
        depths = {b.depth for b in chains}
        depth = min(depths)
        if len(depths) == 1 and n.attr(crossing.signal, "gray") == "true":
            return Classification(SyncKind.GRAY_BUS, depth=depth, width=width)
        warnings = []
        if len(depths) > 1:
            warnings.append(f"bus {crossing.signal} bits use unequal synchronizer depths {sorted(depths)}")
        if n.attr(crossing.signal, "gray") != "true":
            warnings.append(f"multi-bit coherency: bus {crossing.signal} is synchronized bit by bit "
                            f"without gray=true")
        return Classification(SyncKind.TWO_FLOP_CHAIN, depth=depth, width=width, warnings=tuple(warnings))

    net = crossing.source_nets[0] if crossing.source_nets else crossing.signal
    own = _classify_bit(n, cs, crossing, net)
    role = n.attr(net, "handshake")
    if role not in ("req", "ack"):
        return own
    partner = _handshake_partner(n, cs, crossing, role)
    if own.kind is SyncKind.TWO_FLOP_CHAIN and partner is not None \
            and partner.kind is SyncKind.TWO_FLOP_CHAIN:
        return Classification(SyncKind.HANDSHAKE, depth=own.depth)
    return Classification(
        own.kind, depth=own.depth, width=own.width,
        warnings=own.warnings + (f"handshake {role} {net} has no synchronized partner",),
    )
