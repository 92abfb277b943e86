"""Desk-scale statevector oracle.

Simulates circuits densely, computes marginal distributions over ordered
qubit subsets, and checks whether two circuits agree on the outcomes that
are kept. Bit convention throughout: qubit q0 is the most significant bit
of a basis index, so for n=2 the amplitudes are ordered |00>,|01>,|10>,|11>
with q0's bit first.

Equivalence checking samples random input states. A differing pair of
circuits is witnessed by a random state almost surely, but the check is
probabilistic, not a proof; exact unitary comparison is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .circuit import Circuit, CircuitError, Controlled, Opaque, SingleQubit, Swap

DEFAULT_QUBIT_CAP = 12
DEFAULT_SAMPLES = 20
DEFAULT_TOL = 1e-9

_SQ2 = 1.0 / math.sqrt(2.0)
_FIXED_1Q = {
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "Sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
    "T": np.diag([1, np.exp(1j * math.pi / 4)]),
    "Tdg": np.diag([1, np.exp(-1j * math.pi / 4)]),
}


def base_matrix(base: str, params: tuple[float, ...]) -> np.ndarray:
    """2x2 matrix of a named single-qubit gate."""
    if base in _FIXED_1Q:
        return _FIXED_1Q[base]
    if base == "RX":
        (t,) = params
        c, s = math.cos(t / 2), math.sin(t / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if base == "RY":
        (t,) = params
        c, s = math.cos(t / 2), math.sin(t / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if base == "RZ":
        (t,) = params
        return np.diag([np.exp(-1j * t / 2), np.exp(1j * t / 2)])
    if base == "U3":
        t, p, lam = params
        c, s = math.cos(t / 2), math.sin(t / 2)
        return np.array(
            [
                [c, -np.exp(1j * lam) * s],
                [np.exp(1j * p) * s, np.exp(1j * (p + lam)) * c],
            ]
        )
    raise CircuitError(f"unknown gate base {base!r}")


@dataclass
class Statevector:
    """n-qubit pure state; amps[i] is the amplitude of basis index i."""

    n: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (2**self.n,):
            raise CircuitError(
                f"statevector for n={self.n} needs {2**self.n} amplitudes"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass
class Distribution:
    """Probability table over bitstrings of an ordered qubit subset."""

    qubits: tuple[int, ...]
    probs: dict[str, float]

    def total(self) -> float:
        return float(sum(self.probs.values()))


@dataclass
class EquivalenceVerdict:
    equivalent: bool
    max_discrepancy: float
    # (input-state seed, outcome bitstring) for the worst sample when
    # the circuits disagree.
    witness: tuple[tuple[int, int], str] | None = None


def basis_state(n: int, bits: str) -> Statevector:
    """Computational basis state, bits given q0-first."""
    if len(bits) != n or set(bits) - {"0", "1"}:
        raise CircuitError(f"need {n} bits, got {bits!r}")
    amps = np.zeros(2**n, dtype=complex)
    amps[int(bits, 2)] = 1.0
    return Statevector(n, amps)


def random_state(n: int, seed, cap: int = DEFAULT_QUBIT_CAP) -> Statevector:
    """Normalized state with i.i.d. complex Gaussian components."""
    if n > cap:
        raise CircuitError(f"{n} qubits exceeds the cap of {cap}")
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return Statevector(n, amps / np.linalg.norm(amps))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def bind_opaques(circuits: Sequence[Circuit], seed) -> dict[str, np.ndarray]:
    """Haar-random unitary per opaque label across the given circuits.

    Labels are bound in sorted order so the table is deterministic per
    seed; a label shared between circuits must agree on arity.
    """
    arities: dict[str, int] = {}
    for c in circuits:
        for label, arity in c.opaque_labels().items():
            if arities.setdefault(label, arity) != arity:
                raise CircuitError(
                    f"opaque label {label!r} used with inconsistent arity"
                )
    bindings = {}
    for i, label in enumerate(sorted(arities)):
        rng = np.random.default_rng([seed, i])
        bindings[label] = haar_unitary(2 ** arities[label], rng)
    return bindings


def _controlled_matrix(kind: Controlled) -> np.ndarray:
    v = base_matrix(kind.base, kind.params)
    k = len(kind.controls)
    dim = 2 ** (k + 1)
    m = np.eye(dim, dtype=complex)
    m[dim - 2 :, dim - 2 :] = v
    return m


_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def _compile(
    c: Circuit, bindings: Mapping[str, np.ndarray] | None
) -> list[tuple[np.ndarray, tuple[int, ...]]]:
    """Per-gate (unitary, wires) list, resolving opaque labels."""
    ops = []
    for g in c.gates:
        kind = g.kind
        if isinstance(kind, SingleQubit):
            ops.append((base_matrix(kind.base, kind.params), g.qubits))
        elif isinstance(kind, Controlled):
            ops.append((_controlled_matrix(kind), g.qubits))
        elif isinstance(kind, Swap):
            ops.append((_SWAP, g.qubits))
        else:
            assert isinstance(kind, Opaque)
            if bindings is None or kind.label not in bindings:
                raise CircuitError(f"opaque block {kind.label!r} has no bound unitary")
            u = np.asarray(bindings[kind.label], dtype=complex)
            dim = 2 ** len(kind.wires)
            if u.shape != (dim, dim):
                raise CircuitError(
                    f"binding for {kind.label!r} has shape {u.shape}, expected {(dim, dim)}"
                )
            ops.append((u, g.qubits))
    return ops


def _apply(state: np.ndarray, u: np.ndarray, wires: tuple[int, ...], n: int) -> np.ndarray:
    k = len(wires)
    tensor = u.reshape((2,) * (2 * k))
    state = np.tensordot(tensor, state, axes=(tuple(range(k, 2 * k)), wires))
    return np.moveaxis(state, tuple(range(k)), wires)


def _run(
    ops: list[tuple[np.ndarray, tuple[int, ...]]], amps: np.ndarray, n: int
) -> np.ndarray:
    state = amps.reshape((2,) * n) if n else amps
    for u, wires in ops:
        state = _apply(state, u, wires, n)
    return state.reshape(-1)


def simulate(
    c: Circuit,
    input: Statevector,
    bindings: Mapping[str, np.ndarray] | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> Statevector:
    """Apply the circuit unitary to `input`."""
    if c.n != input.n:
        raise CircuitError(f"circuit has {c.n} qubits, state has {input.n}")
    if c.n > cap:
        raise CircuitError(f"{c.n} qubits exceeds the cap of {cap}")
    out = _run(_compile(c, bindings), input.amps, c.n)
    return Statevector(c.n, out)


def marginal(s: Statevector, qubits: Sequence[int]) -> Distribution:
    """Distribution over the listed qubits, in the listed order.

    The first listed qubit is the most significant bit of the outcome
    string; arbitrary order is allowed so relabeled comparisons can read
    outcomes through a wire substitution.
    """
    qs = tuple(qubits)
    if len(set(qs)) != len(qs):
        raise CircuitError(f"duplicate qubit in marginal: {qs}")
    for q in qs:
        if not 0 <= q < s.n:
            raise CircuitError(f"qubit q[{q}] out of range")
    p = (np.abs(s.amps) ** 2).reshape((2,) * s.n) if s.n else np.abs(s.amps) ** 2
    drop = tuple(ax for ax in range(s.n) if ax not in qs)
    t = p.sum(axis=drop) if drop else p
    if qs:
        kept = sorted(qs)
        t = t.transpose([kept.index(q) for q in qs])
    flat = np.asarray(t).reshape(-1)
    m = len(qs)
    probs = {format(i, f"0{m}b") if m else "": float(flat[i]) for i in range(flat.size)}
    return Distribution(qs, probs)


def check_marginal_equiv(
    c1: Circuit,
    c2: Circuit,
    wires1: Sequence[int],
    wires2: Sequence[int],
    samples: int = DEFAULT_SAMPLES,
    seed=0,
    tol: float = DEFAULT_TOL,
    bindings: Mapping[str, np.ndarray] | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> EquivalenceVerdict:
    """Compare c1's marginal over wires1 with c2's marginal over wires2.

    Both circuits see the same `samples` random input states (seeded per
    sample); the verdict carries the worst probability discrepancy seen.
    """
    if c1.n != c2.n:
        raise CircuitError(f"qubit counts differ: {c1.n} vs {c2.n}")
    if c1.n > cap:
        raise CircuitError(f"{c1.n} qubits exceeds the cap of {cap}")
    if len(wires1) != len(wires2):
        raise CircuitError("wire lists must have equal length")
    ops1 = _compile(c1, bindings)
    ops2 = _compile(c2, bindings)
    worst = 0.0
    witness = None
    for i in range(samples):
        state = random_state(c1.n, seed=(seed, i), cap=cap)
        out1 = Statevector(c1.n, _run(ops1, state.amps, c1.n))
        out2 = Statevector(c2.n, _run(ops2, state.amps, c2.n))
        d1 = marginal(out1, wires1).probs
        d2 = marginal(out2, wires2).probs
        for k, p in d1.items():
            gap = abs(p - d2[k])
            if gap > worst:
                worst = gap
                witness = ((seed, i), k)
    equivalent = worst <= tol
    return EquivalenceVerdict(equivalent, worst, None if equivalent else witness)


def check_equiv(
    c1: Circuit,
    c2: Circuit,
    d: Sequence[int] | frozenset[int],
    samples: int = DEFAULT_SAMPLES,
    seed=0,
    tol: float = DEFAULT_TOL,
    bindings: Mapping[str, np.ndarray] | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> EquivalenceVerdict:
    """Equivalence relative to the dead set d: marginals over the kept
    wires (ascending) must agree for every sampled input state."""
    dead = frozenset(d)
    for q in dead:
        if not 0 <= q < c1.n:
            raise CircuitError(f"dead qubit q[{q}] out of range")
    valid = [q for q in range(c1.n) if q not in dead]
    return check_marginal_equiv(
        c1, c2, valid, valid, samples=samples, seed=seed, tol=tol,
        bindings=bindings, cap=cap,
    )


def check_equiv_extended(
    c1: Circuit,
    c2: Circuit,
    d1: Sequence[int] | frozenset[int],
    d2: Sequence[int] | frozenset[int],
    pairing: Mapping[int, int],
    samples: int = DEFAULT_SAMPLES,
    seed=0,
    tol: float = DEFAULT_TOL,
    bindings: Mapping[str, np.ndarray] | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> EquivalenceVerdict:
    """Equivalence up to a re-identification of which wires are dead.

    `pairing` maps each wire dead only in c1 to its replacement wire dead
    only in c2; c2's marginal is read over c1's kept wires with each such
    replacement wire substituted back.
    """
    dead1, dead2 = frozenset(d1), frozenset(d2)
    if len(dead1) != len(dead2):
        raise CircuitError("dead sets must have equal size")
    only1 = dead1 - dead2
    only2 = dead2 - dead1
    if set(pairing.keys()) != only1 or set(pairing.values()) != only2:
        raise CircuitError(
            "pairing must be a bijection between the dead wires unique to each side"
        )
    subst = {f: e for e, f in pairing.items()}
    valid1 = [q for q in range(c1.n) if q not in dead1]
    wires2 = [subst.get(q, q) for q in valid1]
    return check_marginal_equiv(
        c1, c2, valid1, wires2, samples=samples, seed=seed, tol=tol,
        bindings=bindings, cap=cap,
    )
