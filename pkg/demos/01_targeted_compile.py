"""Compile a small Clifford+T circuit to targeted global gates."""
import math

from gmsynth import Circuit, compile_targeted, circuits_equivalent, emit_json
from gmsynth.ir import CNOT, H, Rz, gate_histogram

print("== 1. input circuit ==")
c = Circuit(3, [H(0), CNOT(0, 1), Rz(1, math.pi / 4), CNOT(1, 2), H(2), Rz(2, math.pi / 4)])
for g in c.gates:
    print("  ", g.kind, g.qubits, "" if g.angle is None else round(g.angle, 4))

print("== 2. compile ==")
out, report = compile_targeted(c)
print("   N (non-Clifford phases):", report.N)
print("   global gates:", report.global_gate_count, "bound:", report.bound)
print("   of which for rotations:", report.rotation_global_count)
print("   of which for the final Clifford:", report.clifford_global_count)
print("   output relabeling:", out.output_relabeling)
print("   histogram:", {k: v for k, v in gate_histogram(out).items() if v})

print("== 3. check ==")
print("   equivalent up to phase:", bool(circuits_equivalent(out, c)))

print("== 4. JSON ==")
print("  ", emit_json(out)[:160], "...")
