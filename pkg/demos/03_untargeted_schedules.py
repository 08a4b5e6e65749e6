"""Targeted two-qubit ZZ gates out of untargeted all-qubit GZZ gates."""
import math

import numpy as np

from gmsynth import Circuit, circuits_equivalent, schedule_parallel_gzz
from gmsynth.ir import GZZ

print("== X-layer schedule for n=8, pairs (0,1) and (6,7) ==")
s = schedule_parallel_gzz(8, [(0, 1), (6, 7)], math.pi / 2)
for k, step in enumerate(s.steps):
    row = "".join("X" if q in step.x_layer else "." for q in range(8))
    print(f"   step {k}: {row}  GZZ(all, {step.gzz_angle:.4f})")

print("== the sign pattern seen by each pair ==")
signs = np.array([[-1 if q in st.x_layer else 1 for q in range(8)] for st in s.steps])
corr = signs.T @ signs / len(s)
print("   pair (0,1):", corr[0, 1], " pair (6,7):", corr[6, 7], " pair (0,6):", corr[0, 6])

print("== step counts versus n ==")
for n in range(2, 18):
    print(f"   n={n:2d}: {len(schedule_parallel_gzz(n, [(0, 1)], 0.1)):2d} steps (2n = {2 * n})")

print("== check n=5 against the target gates ==")
b = 0.7
ref = Circuit(5, [GZZ((0, 1), b), GZZ((2, 3), b)])
got = Circuit(5, schedule_parallel_gzz(5, [(0, 1), (2, 3)], b).to_gates())
print("   equivalent:", bool(circuits_equivalent(got, ref)))
