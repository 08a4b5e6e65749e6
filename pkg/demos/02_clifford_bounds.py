"""How many GCZ gates do random Cliffords, CZ layers and CNOT circuits need?"""
import numpy as np

from gmsynth import gf2
from gmsynth.ir import gms_count
from gmsynth.normal_form import random_tableau
from gmsynth.tableau import tableau_from_circuit
from gmsynth.targeted import synth_clifford, synth_cnot_circuit, synth_cz_layer

rng = np.random.default_rng(1)

print("== CZ layers: greedy GCZ, at most n-1 ==")
for n in range(2, 9):
    worst = 0
    for _ in range(200):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
        worst = max(worst, len(synth_cz_layer(pairs, n)))
    print(f"   n={n}: worst {worst}  (n-1 = {n - 1})")

print("== CNOT circuits: PLU fan-ins, at most 4n-6 ==")
for n in range(2, 9):
    counts = [gms_count(synth_cnot_circuit(gf2.random_invertible(n, rng))) for _ in range(200)]
    print(f"   n={n}: mean {np.mean(counts):5.2f}  max {max(counts):2d}  (4n-6 = {4 * n - 6})")

print("== full Cliffords: at most 6n-8 ==")
for n in (2, 4, 8, 16, 32):
    counts = []
    for _ in range(20):
        t = random_tableau(n, rng)
        c = synth_clifford(t)
        assert tableau_from_circuit(c) == t
        counts.append(gms_count(c))
    print(f"   n={n:2d}: max {max(counts):3d}  (6n-8 = {6 * n - 8})")
