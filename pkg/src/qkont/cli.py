"""Command-line front end: ``qkont run | tree | measure``."""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .amplitudes import amp_to_float, format_amplitude
from .circuit import Circuit, CircuitSyntaxError, CircuitValidationError, bits_str, parse_bits, parse_circuit, zero_state
from .dense import DenseTooLarge, dense_run
from .dot import ket_label, tree_to_dot
from .interpreter import DEFAULT_MAX_H, TreeTooLarge, run_hash, run_list, trace_tree
from .measurement import MeasurementError, outcome_distribution, sample
from .probkont import run_prob

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_LIMIT = 5
EXIT_IO = 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}", EXIT_IO) from None


def load_circuit(path: str) -> Circuit:
    text = _read(path)
    try:
        return parse_circuit(text)
    except CircuitSyntaxError as e:
        raise CliError(f"{path}: syntax error: {e}", EXIT_PARSE) from None
    except CircuitValidationError as e:
        raise CliError(f"{path}: invalid circuit: {e}", EXIT_VALIDATION) from None


def initial_state(circ: Circuit, init: str | None):
    if init is None:
        return zero_state(circ.qubit_count)
    try:
        bs = parse_bits(init)
    except ValueError as e:
        raise CliError(str(e), EXIT_VALIDATION) from None
    if len(bs) != circ.qubit_count:
        raise CliError(
            f"--init has {len(bs)} bits but the circuit has {circ.qubit_count} qubits", EXIT_VALIDATION
        )
    return bs


def format_entry(amplitude, state: str, ascii: bool = False) -> str:
    return f"({format_amplitude(amplitude)}{ket_label(state_bits(state), ascii)})"


def state_bits(state: str):
    return tuple(int(ch) for ch in state)


def collect_entries(circ: Circuit, init, collector: str) -> list[dict]:
    """Result rows as JSON-ready dicts ``{state, amplitude, numerator, half_exp}``."""
    if collector == "list":
        rows = [(w.amp, w.state) for w in run_list(circ, init)]
    elif collector == "hash":
        rows = [(a, s) for s, a in run_hash(circ, init).items()]
    elif collector == "prob":
        return [
            {
                "state": bits_str(e.state),
                "amplitude": amp_to_float(e.amp),
                "numerator": e.amp.numerator,
                "half_exp": e.amp.half_exp,
                "weight": e.weight,
            }
            for e in run_prob(circ, init)
        ]
    elif collector == "dense":
        sv = dense_run(circ, init)
        return [
            {"state": bits_str(s), "amplitude": round(x, 12), "numerator": None, "half_exp": None}
            for s, x in sv.nonzero().items()
        ]
    else:
        raise CliError(f"unknown collector {collector!r}", EXIT_USAGE)
    return [
        {"state": bits_str(s), "amplitude": amp_to_float(a), "numerator": a.numerator, "half_exp": a.half_exp}
        for a, s in rows
    ]


def render_text(entries: list[dict], ascii: bool = False) -> str:
    return "".join(format_entry(e["amplitude"], e["state"], ascii) + "\n" for e in entries)


def _qubits(spec: str | None, n: int) -> list[int]:
    if spec is None:
        return list(range(n))
    try:
        qs = [int(q) for q in spec.split(",") if q.strip()]
    except ValueError:
        raise CliError(f"--qubits expects a comma-separated list of indices, got {spec!r}", EXIT_USAGE) from None
    if not qs:
        raise CliError("--qubits is empty", EXIT_USAGE)
    return qs


def cmd_run(args, out) -> int:
    circ = load_circuit(args.circuit)
    init = initial_state(circ, args.init)
    try:
        entries = collect_entries(circ, init, args.collector)
    except DenseTooLarge as e:
        raise CliError(str(e), EXIT_LIMIT) from None
    if args.format == "json":
        out.write(json.dumps(entries, ensure_ascii=False) + "\n")
    else:
        out.write(render_text(entries, args.ascii))
    return EXIT_OK


def cmd_tree(args, out) -> int:
    circ = load_circuit(args.circuit)
    init = initial_state(circ, args.init)
    try:
        tree = trace_tree(circ, init, max_h=args.max_h)
    except TreeTooLarge as e:
        raise CliError(str(e), EXIT_LIMIT) from None
    out.write(tree_to_dot(tree, ascii=args.ascii))
    return EXIT_OK


def cmd_measure(args, out) -> int:
    circ = load_circuit(args.circuit)
    init = initial_state(circ, args.init)
    qubits = _qubits(args.qubits, circ.qubit_count)
    ket = run_hash(circ, init)
    try:
        dist = outcome_distribution(ket, qubits)
        shots = sample(ket, qubits, args.seed, args.shots) if args.shots > 0 else []
    except MeasurementError as e:
        raise CliError(str(e), EXIT_VALIDATION) from None
    if args.format == "json":
        doc = {
            "qubits": qubits,
            "distribution": {p: str(pr) for p, pr in dist.items()},
        }
        if args.shots > 0:
            doc.update(shots=args.shots, seed=args.seed, counts=dict(sorted(Counter(shots).items())))
        out.write(json.dumps(doc) + "\n")
        return EXIT_OK
    out.write(f"qubits {','.join(map(str, qubits))}\n")
    for p, pr in dist.items():
        out.write(f"{p} {pr}\n")
    if args.shots > 0:
        counts = Counter(shots)
        out.write(f"shots {args.shots} seed {args.seed}\n")
        for p in dist:
            out.write(f"{p} {counts.get(p, 0)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qkont", description="Continuation-tree simulator for {CCX, H} circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("circuit", help="circuit file, or - for stdin")
        p.add_argument("--init", help="initial bitstring, qubit 0 first (default all zeros)")
        p.add_argument("--ascii", action="store_true", help="render kets as |0101> instead of |0101⟩")

    p = sub.add_parser("run", help="evaluate a circuit with a collector")
    common(p)
    p.add_argument("--collector", choices=["list", "hash", "prob", "dense"], default="hash")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("tree", help="emit the evaluation tree as Graphviz DOT")
    common(p)
    p.add_argument("--max-h", type=int, default=DEFAULT_MAX_H, help="refuse circuits with more H gates")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("measure", help="exact outcome distribution and sampled counts")
    common(p)
    p.add_argument("--qubits", help="comma-separated qubits to measure (default all)")
    p.add_argument("--shots", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_measure)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as e:
        print(f"qkont: error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
