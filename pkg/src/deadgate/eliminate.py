"""Dead-gate elimination.

Removal rules, applied only to frontier gates:

    R1  single-qubit gate on a dead wire
    R2  controlled gate whose target wire is dead (controls may be live)
    R3  SWAP with one dead endpoint (removal relabels which wire is dead
        and updates the outcome map) or with both endpoints dead
    R4  extension, off by default: any gate all of whose wires are dead

The pass sweeps the frontier repeatedly until a sweep removes nothing
(that final empty sweep is included in the iteration count). Within a
sweep, the frontier snapshot taken at sweep start is examined in
ascending gate id; gates that newly enter the frontier mid-sweep wait for
the next sweep. Frontier gates never share wires, so a SWAP relabel only
affects rule checks from the next sweep on.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .circuit import Circuit, CircuitError, Controlled, Gate, SingleQubit, Swap


class RemovalRule(enum.Enum):
    R1 = "R1_single_on_dead"
    R2 = "R2_controlled_target_dead"
    R3 = "R3_swap_relabel"
    R4 = "R4_all_dead_unitary"


@dataclass(frozen=True)
class RuleFlags:
    """Rule toggles surfaced on the CLI as --extended / --no-swap-relabel."""

    extended: bool = False
    swap_relabel: bool = True


@dataclass(slots=True)
class RemovedGate:
    id: int
    gate: str
    rule: str


@dataclass(slots=True)
class OptimizationReport:
    """Record of one elimination run; serializes deterministically."""

    removed: list[RemovedGate]
    iterations: int
    initial_gate_count: int
    final_gate_count: int
    final_dead: list[int]
    outcome_map: list[int]
    gate_checks: int = 0

    def to_json(self) -> str:
        doc = {
            "initial_gate_count": self.initial_gate_count,
            "final_gate_count": self.final_gate_count,
            "iterations": self.iterations,
            "gate_checks": self.gate_checks,
            "removed": [
                {"id": r.id, "gate": r.gate, "rule": r.rule} for r in self.removed
            ],
            "final_dead": self.final_dead,
            "outcome_map": self.outcome_map,
        }
        return json.dumps(doc, indent=2) + "\n"


def _match_rule(kind, dead: frozenset[int], flags: RuleFlags) -> RemovalRule | None:
    if isinstance(kind, SingleQubit) and kind.qubit in dead:
        return RemovalRule.R1
    if isinstance(kind, Controlled) and kind.target in dead:
        return RemovalRule.R2
    if flags.swap_relabel and isinstance(kind, Swap):
        if (kind.a in dead) or (kind.b in dead):
            return RemovalRule.R3
    if flags.extended and all(q in dead for q in kind.qubits()):
        return RemovalRule.R4
    return None


def is_dead_gate(
    c: Circuit, gid: int, flags: RuleFlags = RuleFlags()
) -> RemovalRule | None:
    """Rule under which frontier gate `gid` is removable, or None."""
    if gid not in c.frontier():
        raise CircuitError(f"gate {gid} is not in the frontier")
    return _match_rule(c.gate(gid).kind, c.dead, flags)


def _relabel_after_swap(
    kind: Swap, dead: frozenset[int], outcome_map: tuple[int, ...]
) -> tuple[frozenset[int], tuple[int, ...]]:
    """Dead set and outcome map after removing a frontier SWAP.

    With one dead endpoint, deadness migrates to the other wire and every
    label's physical wire is routed through the transposition. With both
    endpoints dead nothing needs relabelling.
    """
    a, b = kind.a, kind.b
    if (a in dead) == (b in dead):
        return dead, outcome_map
    new_dead = (dead - {a, b}) | ({b} if a in dead else {a})
    swapped = {a: b, b: a}
    return frozenset(new_dead), tuple(swapped.get(w, w) for w in outcome_map)


def apply_removal(c: Circuit, gid: int, rule: RemovalRule) -> Circuit:
    """Remove `gid`, updating dead set and outcome map when R3 demands it."""
    actual = is_dead_gate(c, gid)
    if actual is None and rule is RemovalRule.R4:
        actual = is_dead_gate(c, gid, RuleFlags(extended=True))
    if actual is not rule:
        raise CircuitError(
            f"gate {gid} does not match rule {rule.value} (got {actual})"
        )
    kind = c.gate(gid).kind
    out = c.remove_gate(gid)
    if rule is RemovalRule.R3:
        dead, outcome_map = _relabel_after_swap(kind, out.dead, out.outcome_map)
        out = Circuit(out.n, out.gates, dead, outcome_map)
    return out


def eliminate_dead_gates(
    c: Circuit, flags: RuleFlags = RuleFlags()
) -> tuple[Circuit, OptimizationReport]:
    """Run the removal fixpoint; returns the optimized circuit and a report."""
    gates: list[Gate] = list(c.gates)
    dead = c.dead
    outcome_map = c.outcome_map
    removed: list[RemovedGate] = []
    iterations = 0
    gate_checks = 0

    while True:
        iterations += 1
        snapshot = sorted(_frontier_ids(gates, c.n))
        dropped: set[int] = set()
        by_id = {g.id: g for g in gates}
        for gid in snapshot:
            gate_checks += 1
            kind = by_id[gid].kind
            rule = _match_rule(kind, dead, flags)
            if rule is None:
                continue
            dropped.add(gid)
            if rule is RemovalRule.R3:
                dead, outcome_map = _relabel_after_swap(kind, dead, outcome_map)
            removed.append(RemovedGate(gid, kind.summary(), rule.value))
        if not dropped:
            break
        gates = [g for g in gates if g.id not in dropped]

    n0 = len(c.gates)
    assert gate_checks <= n0 * (n0 + 1), "quadratic sweep bound violated"
    report = OptimizationReport(
        removed=removed,
        iterations=iterations,
        initial_gate_count=n0,
        final_gate_count=len(gates),
        final_dead=sorted(dead),
        outcome_map=list(outcome_map),
        gate_checks=gate_checks,
    )
    return Circuit(c.n, tuple(gates), dead, outcome_map), report


def _frontier_ids(gates: list[Gate], n: int) -> set[int]:
    seen = bytearray(n)
    unseen = n
    out: set[int] = set()
    for g in reversed(gates):
        fresh = True
        for q in g.qubits:
            if seen[q]:
                fresh = False
                break
        if fresh:
            out.add(g.id)
        for q in g.qubits:
            if not seen[q]:
                seen[q] = 1
                unseen -= 1
        if unseen == 0:
            break
    return out


def complexity_probe(
    c: Circuit, flags: RuleFlags = RuleFlags()
) -> tuple[int, int]:
    """(dead-gate checks performed, sweeps run) for one elimination run."""
    _, report = eliminate_dead_gates(c, flags)
    return report.gate_checks, report.iterations
