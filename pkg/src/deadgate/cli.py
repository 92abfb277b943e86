"""Command-line surface: optimize, verify, bench.

Exit codes: 0 success (verify: equivalent), 1 verify found the files
inequivalent, 2 usage, parse, or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import BenchConfig, DeadMode, manifest_json, run_bench
from .circuit import CircuitError
from .eliminate import RuleFlags, eliminate_dead_gates
from .oracle import (
    DEFAULT_QUBIT_CAP,
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
    EquivalenceVerdict,
    bind_opaques,
    check_equiv_extended,
    check_marginal_equiv,
)
from .qasm import DIALECT_VERSION, QasmError, parse, serialize


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deadgate",
        description="Remove gates that only influence discarded measurement outcomes.",
    )
    parser.add_argument(
        "--version", action="version",
        version=f"deadgate {__version__} (dialect {DIALECT_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("optimize", help="remove dead gates from a circuit file")
    p_opt.add_argument("input", type=Path)
    p_opt.add_argument("output", type=Path)
    p_opt.add_argument("--report", type=Path, help="write a JSON removal report")
    p_opt.add_argument(
        "--extended", action="store_true",
        help="also remove any frontier gate acting only on dead wires",
    )
    p_opt.add_argument(
        "--no-swap-relabel", action="store_true",
        help="keep SWAP gates (disables the relabeling rule)",
    )

    p_ver = sub.add_parser("verify", help="check two circuit files for equivalence")
    p_ver.add_argument("a", type=Path)
    p_ver.add_argument("b", type=Path)
    p_ver.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p_ver.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--qubit-limit", type=int, default=DEFAULT_QUBIT_CAP)
    p_ver.add_argument(
        "--map", dest="pairing",
        help="dead-wire pairing i:j,... for equivalence up to relabeling",
    )

    p_bench = sub.add_parser("bench", help="random-circuit benchmark sweep")
    p_bench.add_argument("--widths", default="2:40:2",
                         help="start:stop:step or comma list (default 2:40:2)")
    p_bench.add_argument("--dead", default="fixed:1",
                         help="fixed:k or pct:p dead-qubit setting")
    p_bench.add_argument("--programs", type=int, default=20)
    p_bench.add_argument("--blocks", type=int, default=10)
    p_bench.add_argument("--gate-multiplier", type=int, default=100)
    p_bench.add_argument("--1q-fraction", dest="fraction_1q", type=float, default=0.10)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--palette", default="cx,cz,swap",
                         help="two-qubit gate palette (subset of cx,cz,swap)")
    p_bench.add_argument("--verify-fraction", type=float, default=0.05)
    p_bench.add_argument("--no-timing", action="store_true",
                         help="report zero elapsed time so CSV bytes are reproducible")
    p_bench.add_argument("--out", type=Path, required=True)
    return parser


def _load(path: Path):
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"{path}: {exc.strerror or exc}", file=sys.stderr)
        return None
    try:
        return parse(text)
    except QasmError as exc:
        print(f"{path}:{exc.line}: {exc.args[0]}", file=sys.stderr)
        return None


def cmd_optimize(args) -> int:
    src = _load(args.input)
    if src is None:
        return 2
    flags = RuleFlags(extended=args.extended, swap_relabel=not args.no_swap_relabel)
    optimized, report = eliminate_dead_gates(src.circuit, flags)
    out_text = serialize(src.with_circuit(optimized), optimized.outcome_map)
    try:
        args.output.write_text(out_text)
        if args.report:
            args.report.write_text(report.to_json())
    except OSError as exc:
        print(f"{exc.filename}: {exc.strerror}", file=sys.stderr)
        return 2
    rules = {}
    for r in report.removed:
        rules[r.rule] = rules.get(r.rule, 0) + 1
    breakdown = ", ".join(f"{k} x{v}" for k, v in sorted(rules.items()))
    print(
        f"removed {len(report.removed)} of {report.initial_gate_count} gates "
        f"in {report.iterations} sweeps" + (f" ({breakdown})" if breakdown else "")
    )
    if report.outcome_map != sorted(report.outcome_map):
        print(f"outcome map: {report.outcome_map}")
    return 0


def _parse_pairing(text: str) -> dict[int, int]:
    pairing = {}
    for item in text.split(","):
        left, _, right = item.partition(":")
        pairing[int(left)] = int(right)
    return pairing


def _print_verdict(verdict: EquivalenceVerdict, samples: int, tol: float) -> int:
    print(f"verdict: {'equivalent' if verdict.equivalent else 'inequivalent'}")
    print(f"samples: {samples}")
    print(f"tolerance: {tol:g}")
    print(f"max_discrepancy: {verdict.max_discrepancy:.6e}")
    if verdict.witness is not None:
        seed, outcome = verdict.witness
        print(f"witness_state_seed: {seed[0]},{seed[1]}")
        print(f"witness_outcome: {outcome}")
    return 0 if verdict.equivalent else 1


def cmd_verify(args) -> int:
    a = _load(args.a)
    b = _load(args.b)
    if a is None or b is None:
        return 2
    ca, cb = a.circuit, b.circuit
    if ca.n != cb.n:
        print(f"qubit counts differ: {ca.n} vs {cb.n}", file=sys.stderr)
        return 2
    if ca.n > args.qubit_limit:
        print(f"{ca.n} qubits exceeds the limit of {args.qubit_limit}", file=sys.stderr)
        return 2
    try:
        bindings = bind_opaques([ca, cb], seed=args.seed)
        if args.pairing is not None:
            verdict = check_equiv_extended(
                ca, cb, ca.dead, cb.dead, _parse_pairing(args.pairing),
                samples=args.samples, seed=args.seed, tol=args.tol,
                bindings=bindings, cap=args.qubit_limit,
            )
            return _print_verdict(verdict, args.samples, args.tol)
        # Compare the joint distribution of the kept classical bits; each
        # file's measure statements say which wire carries which bit.
        kept_a = {c: w for w, c in a.measures if w not in ca.dead}
        kept_b = {c: w for w, c in b.measures if w not in cb.dead}
        if set(kept_a) != set(kept_b):
            print(
                "kept classical bits differ between the files; "
                "use --map for relabeled comparisons",
                file=sys.stderr,
            )
            return 2
        bits = sorted(kept_a)
        verdict = check_marginal_equiv(
            ca, cb, [kept_a[c] for c in bits], [kept_b[c] for c in bits],
            samples=args.samples, seed=args.seed, tol=args.tol,
            bindings=bindings, cap=args.qubit_limit,
        )
        return _print_verdict(verdict, args.samples, args.tol)
    except (CircuitError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2


def _parse_widths(text: str) -> tuple[int, ...]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) == 2:
            start, stop, step = int(parts[0]), int(parts[1]), 1
        elif len(parts) == 3:
            start, stop, step = (int(p) for p in parts)
        else:
            raise ValueError(f"bad width range {text!r}")
        if step <= 0 or stop < start:
            raise ValueError(f"bad width range {text!r}")
        return tuple(range(start, stop + 1, step))
    return tuple(int(p) for p in text.split(","))


def cmd_bench(args) -> int:
    try:
        cfg = BenchConfig(
            widths=_parse_widths(args.widths),
            dead_mode=DeadMode.parse(args.dead),
            gate_multiplier=args.gate_multiplier,
            single_qubit_fraction=args.fraction_1q,
            blocks=args.blocks,
            programs=args.programs,
            seed=args.seed,
            palette=tuple(p.strip() for p in args.palette.split(",")),
            verify_fraction=args.verify_fraction,
            measure_time=not args.no_timing,
        )
        cfg.validate()
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    records, csv_text = run_bench(cfg)
    try:
        args.out.write_text(csv_text)
        manifest_path = args.out.with_suffix(args.out.suffix + ".manifest.json")
        manifest_path.write_text(manifest_json(cfg, __version__))
    except OSError as exc:
        print(f"{exc.filename}: {exc.strerror}", file=sys.stderr)
        return 2
    print(f"wrote {len(cfg.widths)} summary rows ({len(records)} runs) to {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if args.command == "optimize":
        return cmd_optimize(args)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_bench(args)


def entry() -> None:
    raise SystemExit(main())
