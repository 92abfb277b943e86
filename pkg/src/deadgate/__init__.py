"""Dead-gate elimination for quantum circuits in hybrid programs.

When a hybrid program discards some measurement outcomes, every gate that
only influences those outcomes can be removed without changing the
distribution of the outcomes that are kept. This package provides the
circuit IR, the removal pass, a brute-force statevector oracle that
verifies transformations, a QASM-subset front end, and a random-circuit
benchmark harness.
"""

__version__ = "0.1.0"

from .circuit import (
    Circuit,
    CircuitError,
    Controlled,
    Gate,
    GateKind,
    Opaque,
    SingleQubit,
    Swap,
    build_circuit,
)
from .eliminate import (
    OptimizationReport,
    RemovalRule,
    RuleFlags,
    apply_removal,
    complexity_probe,
    eliminate_dead_gates,
    is_dead_gate,
)
from .oracle import (
    Distribution,
    EquivalenceVerdict,
    Statevector,
    basis_state,
    bind_opaques,
    check_equiv,
    check_equiv_extended,
    check_marginal_equiv,
    haar_unitary,
    marginal,
    random_state,
    simulate,
)
from .qasm import QasmError, SourceCircuit, parse, serialize, source_from_circuit

__all__ = [
    "Circuit",
    "CircuitError",
    "Controlled",
    "Distribution",
    "EquivalenceVerdict",
    "Gate",
    "GateKind",
    "Opaque",
    "OptimizationReport",
    "QasmError",
    "RemovalRule",
    "RuleFlags",
    "SingleQubit",
    "SourceCircuit",
    "Statevector",
    "Swap",
    "apply_removal",
    "basis_state",
    "bind_opaques",
    "build_circuit",
    "check_equiv",
    "check_equiv_extended",
    "check_marginal_equiv",
    "complexity_probe",
    "eliminate_dead_gates",
    "haar_unitary",
    "is_dead_gate",
    "marginal",
    "parse",
    "random_state",
    "serialize",
    "simulate",
    "source_from_circuit",
]
