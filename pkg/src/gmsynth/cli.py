"""Command line front end: ``gmsynth compile | stats | verify``.

Exit codes: 0 success, 1 bad input, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ir import depth, gate_histogram, gms_count, is_clifford_angle, is_clifford_circuit, lower_to_gms
from .qasm import ParseError, emit_json, load_circuit
from .sim import MAX_DENSE_QUBITS, circuits_equivalent, tableau_equiv
from .targeted import compile_targeted
from .untargeted import compile_untargeted

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


def _read(path: str):
    with open(path, encoding="utf-8") as fh:
        return load_circuit(fh.read())


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _equivalent(a, b, tol: float) -> bool:
    if is_clifford_circuit(a) and is_clifford_circuit(b):
        return tableau_equiv(a, b)
    return bool(circuits_equivalent(a, b, tol))


def cmd_compile(args) -> int:
    src = _read(args.input)
    compile_fn = compile_targeted if args.mode == "targeted" else compile_untargeted
    out, report = compile_fn(src)
    if args.gate_set == "gms":
        out = lower_to_gms(out)
    if args.verify:
        if src.num_qubits > min(args.max_verify_qubits, MAX_DENSE_QUBITS):
            report.verified = "skipped"
        else:
            report.verified = "yes" if circuits_equivalent(out, src, args.tol) else "no"
    report.global_gate_count = gms_count(out)
    _write(args.out, emit_json(out) + "\n")
    if args.report:
        _write(args.report, report.to_json())
    if report.verified == "no":
        print("error: compiled circuit is not equivalent to the input", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_stats(args) -> int:
    c = _read(args.input)
    stats = {
        "n": c.num_qubits,
        "N": sum(1 for g in c.gates if g.kind == "rz" and not is_clifford_angle(g.angle)),
        "global_gate_count": gms_count(c),
        "depth": depth(c),
        "histogram": gate_histogram(c),
    }
    print(json.dumps(stats, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    a, b = _read(args.a), _read(args.b)
    if a.num_qubits != b.num_qubits:
        print(f"error: qubit counts differ ({a.num_qubits} vs {b.num_qubits})", file=sys.stderr)
        return EXIT_INPUT
    clifford = is_clifford_circuit(a) and is_clifford_circuit(b)
    if not clifford and a.num_qubits > MAX_DENSE_QUBITS:
        print(f"error: non-Clifford check limited to {MAX_DENSE_QUBITS} qubits", file=sys.stderr)
        return EXIT_INPUT
    ok = _equivalent(a, b, args.tol)
    print("equivalent" if ok else "not equivalent")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gmsynth", description="Compile Clifford+Phases circuits to global Molmer-Sorensen gates.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a circuit")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--out", default="-")
    c.add_argument("--mode", choices=["targeted", "untargeted"], default="targeted")
    c.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    c.add_argument("--max-verify-qubits", type=int, default=10)
    c.add_argument("--tol", type=float, default=1e-8)
    c.add_argument("--gate-set", choices=["gms", "native"], default="gms",
                   help="gms lowers GZZ/GCZ to GMS plus local Cliffords")
    c.add_argument("--report")
    c.set_defaults(func=cmd_compile)

    s = sub.add_parser("stats", help="print gate statistics")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", help="check two circuits for equivalence up to global phase")
    v.add_argument("--a", required=True)
    v.add_argument("--b", required=True)
    v.add_argument("--tol", type=float, default=1e-8)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"{getattr(args, 'input', None) or ''}:{e} [{e.kind}]", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
