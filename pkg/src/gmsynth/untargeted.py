"""Synthesis with untargeted global gates: every GZZ acts on all qubits.

Conjugating an all-qubit ``GZZ(theta)`` by X gates on a set ``s`` flips the
sign of every ZZ term that crosses ``s``. Over ``K`` such steps the pair
``(i, j)`` collects ``theta * sum_m sigma_i(m) sigma_j(m)`` where ``sigma`` is
-1 on flipped qubits. Repeatedly splitting with balanced halves (and one more
doubling to cancel unwanted pairs) yields the rows of a Sylvester-Hadamard
matrix as the sign patterns: qubits sharing a column keep a full ``K theta``
interaction, qubits in different columns cancel exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import gf2
from .ir import (
    GZZ,
    HALF_PI,
    Circuit,
    Gate,
    H,
    Rz,
    Sdg,
    X,
    cancel_local_pairs,
    gcz_as_gzz,
    gms_count,
    qubit_set,
    reduce_angle,
)
from .normal_form import extract_normal_form
from .report import SynthReport, schedule_length, untargeted_bound
from .targeted import gadget_garbage, run_phase_loop
from .tableau import CliffordTableau


def gzz_split(qs: Iterable[int], flipped: Iterable[int], angle: float) -> tuple[list[Gate], list[Gate]]:
    """Both sides of ``GZZ_Q(a) X_S GZZ_Q(a) X_S = GZZ_{Q-S}(2a) GZZ_S(2a)``."""
    qs = qubit_set(qs)
    flipped = qubit_set(flipped)
    if not set(flipped) <= set(qs):
        raise ValueError("flipped set must be a subset of the GZZ support")
    xs = [X(q) for q in flipped]
    lhs = xs + [GZZ(qs, angle)] + xs + [GZZ(qs, angle)]
    rest = tuple(q for q in qs if q not in flipped)
    rhs = [GZZ(part, 2 * angle) for part in (rest, flipped) if len(part) >= 2]
    return lhs, rhs


@dataclass(frozen=True)
class UntargetedStep:
    """``X(x_layer) GZZ(all, gzz_angle) X(x_layer)``."""

    x_layer: tuple[int, ...]
    gzz_angle: float


@dataclass
class Schedule:
    num_qubits: int
    steps: list[UntargetedStep] = field(default_factory=list)
    realized_pairs: dict[tuple[int, int], float] = field(default_factory=dict)

    def __len__(self):
        return len(self.steps)

    def to_gates(self) -> list[Gate]:
        """Steps as gates, with consecutive X layers merged."""
        everyone = tuple(range(self.num_qubits))
        out: list[Gate] = []
        prev: set[int] = set()
        for step in self.steps:
            layer = set(step.x_layer)
            out += [X(q) for q in sorted(prev ^ layer)]
            out.append(GZZ(everyone, step.gzz_angle))
            prev = layer
        out += [X(q) for q in sorted(prev)]
        return out


def _walsh_sign(row: int, col: int) -> int:
    return -1 if bin(row & col).count("1") % 2 else 1


def schedule_parallel_gzz(n: int, pairs: Iterable[tuple[int, int]], angle: float) -> Schedule:
    """All-qubit GZZ steps realizing ``ZZ(angle)`` on each given disjoint pair.

    Uses ``2^k`` steps of ``GZZ(angle / 2^k)`` with ``k`` the smallest integer
    such that ``n - 1 <= 2^k``.
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    pairs = [tuple(sorted(p)) for p in pairs]
    seen: set[int] = set()
    for a, b in pairs:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"bad pair {(a, b)}")
        if a in seen or b in seen:
            raise ValueError("pairs must be disjoint")
        seen |= {a, b}
    angle = reduce_angle(angle)
    sched = Schedule(n)
    if not pairs:
        return sched
    # one Walsh column per pair and per unpaired qubit
    column = {}
    for c, (a, b) in enumerate(sorted(pairs)):
        column[a] = column[b] = c
    c = len(pairs)
    for q in range(n):
        if q not in column:
            column[q] = c
            c += 1
    steps = schedule_length(n)
    assert c <= steps
    theta = angle / steps
    for m in range(steps):
        flips = tuple(q for q in range(n) if _walsh_sign(m, column[q]) < 0)
        sched.steps.append(UntargetedStep(flips, theta))
    sched.realized_pairs = {p: angle for p in sorted(pairs)}
    return sched


def gcz_from_untargeted(qs: Iterable[int], n: int) -> tuple[list[Gate], Gate | None]:
    """Two all-qubit ``GZZ(pi/4)`` gates giving ``GCZ(S)`` times a byproduct.

    The byproduct ``GZZ(Q - S, pi/2)`` is Clifford and disjoint from ``S``;
    it is None when ``Q - S`` has fewer than two qubits.
    """
    qs = qubit_set(qs)
    if len(qs) < 2 or qs[-1] >= n:
        raise ValueError("need at least two in-range qubits")
    lhs, _ = gzz_split(range(n), qs, HALF_PI / 2)
    corrections = gcz_as_gzz(qs)[1:]
    rest = [q for q in range(n) if q not in qs]
    byproduct = GZZ(rest, HALF_PI) if len(rest) >= 2 else None
    return lhs + corrections, byproduct


def _zz_layer_gates(n: int, pairs: list[tuple[int, int]], angle: float) -> list[Gate]:
    return schedule_parallel_gzz(n, pairs, angle).to_gates()


def cz_matching_gates(n: int, pairs: list[tuple[int, int]]) -> list[Gate]:
    """Disjoint CZ gates via one ZZ(pi/2) schedule and S-dagger corrections."""
    if not pairs:
        return []
    out = _zz_layer_gates(n, pairs, HALF_PI)
    return out + [Sdg(q) for p in sorted(pairs) for q in p]


def cnot_layer_gates(n: int, cnots: list[tuple[int, int]]) -> list[Gate]:
    """Disjoint CNOTs: H on targets, then CZ via a ZZ schedule, then H."""
    if not cnots:
        return []
    hs = [H(t) for _, t in cnots]
    return hs + cz_matching_gates(n, [tuple(sorted(p)) for p in cnots]) + hs


def round_robin_matchings(n: int) -> list[list[tuple[int, int]]]:
    """Partition of all pairs of ``n`` qubits into perfect-ish matchings."""
    players = list(range(n)) + ([None] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        rnd = []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a is not None and b is not None:
                rnd.append((min(a, b), max(a, b)))
        rounds.append(rnd)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def cz_layer_untargeted(n: int, pairs: Iterable[tuple[int, int]]) -> list[Gate]:
    pairs = {tuple(sorted(p)) for p in pairs}
    out: list[Gate] = []
    for rnd in round_robin_matchings(n):
        out += cz_matching_gates(n, [p for p in rnd if p in pairs])
    return out


def _triangular_cnots(upper: np.ndarray, lower: np.ndarray) -> list[tuple[int, int]]:
    """CNOT list for ``L U`` ordered by time slot so layers are short."""
    n = upper.shape[0]
    ups = [(j, i) for i in range(n) for j in range(i + 1, n) if upper[i, j]]
    ups.sort(key=lambda ct: ct[0] + ct[1])
    lows = [(j, i) for i in range(n) for j in range(i) if lower[i, j]]
    lows.sort(key=lambda ct: 2 * n - 2 - ct[0] - ct[1])
    return ups + lows


def layer_cnots(cnots: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Greedy ASAP layering into rounds of qubit-disjoint CNOTs."""
    layers: list[list[tuple[int, int]]] = []
    busy_until: dict[int, int] = {}
    for c, t in cnots:
        d = max(busy_until.get(c, 0), busy_until.get(t, 0))
        if d == len(layers):
            layers.append([])
        layers[d].append((c, t))
        busy_until[c] = busy_until[t] = d + 1
    return layers


def synth_cnot_untargeted(m) -> tuple[Circuit, SynthReport]:
    """CNOT circuit ``m`` with at most ``d 2^k`` untargeted GZZ gates."""
    m = gf2.asgf2(m)
    n = m.shape[0]
    perm, lower, upper = gf2.plu(m)
    return synth_cnot_layers(n, layer_cnots(_triangular_cnots(upper, lower)), perm)


def synth_cnot_layers(n: int, layers: list[list[tuple[int, int]]], perm=None) -> tuple[Circuit, SynthReport]:
    """Depth-``d`` circuit of disjoint CNOT layers with at most ``d 2^k``
    untargeted GZZ gates; ``perm`` becomes the output relabeling."""
    gates: list[Gate] = []
    for layer in layers:
        used = [q for ct in layer for q in ct]
        if len(used) != len(set(used)):
            raise ValueError("CNOTs within a layer must act on disjoint qubits")
        gates += cnot_layer_gates(n, layer)
    circ = Circuit(n, gates, perm)
    count = gms_count(circ)
    bound = len(layers) * schedule_length(n)
    report = SynthReport(
        n=n,
        N=0,
        global_gate_count=count,
        mode="untargeted",
        bound=bound,
        bound_met=count <= bound,
        relabeling_used=circ.output_relabeling is not None,
        clifford_global_count=count,
    )
    return circ, report


def synth_clifford_untargeted(t: CliffordTableau) -> Circuit:
    n = t.num_qubits
    nf = extract_normal_form(t)
    if n < 2:
        return Circuit(n, nf.to_circuit().gates)
    head = Circuit(n, nf.local1 + cz_layer_untargeted(n, nf.cz1) + nf.local2)
    middle, _ = synth_cnot_untargeted(nf.cnot)
    tail = Circuit(n, nf.local3 + cz_layer_untargeted(n, nf.cz2) + nf.local4)
    return head.then(middle).then(tail)


def _untargeted_gadget(qs, angle, n):
    if len(qs) == 1:
        return [Rz(qs[0], angle)], []
    t = qs[0]
    core, byproduct = gcz_from_untargeted(qs, n)
    emitted = [H(t)] + core + [H(t), Rz(t, angle)]
    # emitted = (one-GCZ gadget) then byproduct; undo the byproduct in the
    # pending Clifford, before the usual garbage
    after = ([byproduct.inverse()] if byproduct is not None else []) + gadget_garbage(qs, t)
    return emitted, after


def compile_untargeted(c: Circuit) -> tuple[Circuit, SynthReport]:
    """Clifford+Phases circuit to local gates plus all-qubit GZZ gates."""
    n = c.num_qubits
    out, residual, N, gadgets, rot_globals = run_phase_loop(c, _untargeted_gadget)
    cliff = synth_clifford_untargeted(residual)
    result = Circuit(n, out).then(cliff)
    result = Circuit(n, cancel_local_pairs(result.gates), result.output_relabeling)
    count = gms_count(result)
    bound = untargeted_bound(n, N)
    report = SynthReport(
        n=n,
        N=N,
        global_gate_count=count,
        mode="untargeted",
        bound=bound,
        bound_met=count <= bound,
        relabeling_used=result.output_relabeling is not None,
        gadget_count=gadgets,
        rotation_global_count=rot_globals,
        clifford_global_count=count - rot_globals,
    )
    return result, report
