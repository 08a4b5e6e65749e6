"""Synthesis with targeted global gates (GCZ on any qubit subset)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import gf2
from .extract import absorb_clifford, pauli_of_phase, push_to_front, _is_phase
from .ir import (
    CNOT,
    CZ,
    GCZ,
    Circuit,
    Gate,
    H,
    PauliString,
    Rz,
    Sdg,
    cancel_global_pairs,
    cancel_local_pairs,
    count_non_clifford,
    gms_count,
    qubit_set,
)
from .normal_form import extract_normal_form
from .report import SynthReport, targeted_bound
from .tableau import CliffordTableau, tableau_of_gates


def basis_change(p: PauliString) -> tuple[list[Gate], tuple[int, ...]]:
    """Local Cliffords ``L`` (time order) with ``L P L^dagger`` all-Z, and its support.

    X is rotated by H; Y by Sdg then H.
    """
    if p.weight < 1:
        raise ValueError("identity string has no basis change")
    gates: list[Gate] = []
    for q, c in enumerate(p.paulis):
        if c == "X":
            gates.append(H(q))
        elif c == "Y":
            gates += [Sdg(q), H(q)]
    return gates, p.support


@dataclass
class GadgetSynthesis:
    """``emitted`` followed by the ``garbage`` Cliffords realizes ``Z_S(angle)``."""

    emitted: list[Gate]
    garbage_gates: list[Gate]
    num_qubits: int

    @property
    def garbage(self) -> CliffordTableau:
        return tableau_of_gates(self.num_qubits, self.garbage_gates)


def gadget_garbage(qs: tuple[int, ...], target: int) -> list[Gate]:
    """Clifford left behind by the one-GCZ ladder: a fan-in onto ``target``
    plus CZ between every pair of the other qubits."""
    rest = [q for q in qs if q != target]
    out = [CZ(a, b) for i, a in enumerate(rest) for b in rest[i + 1:]]
    out += [CNOT(q, target) for q in rest]
    return out


def synth_phase_gadget(qs: Iterable[int], angle: float, n: int, target: int | None = None) -> GadgetSynthesis:
    """Phase gadget on ``qs`` using a single GCZ, up to garbage Cliffords.

    GCZ conjugated by Hadamards on the ladder target is a fan-in (CNOTs onto
    the target) times CZs among the other qubits; the target then holds the
    parity and gets the phase. The fan-in and CZs are left as garbage.
    """
    qs = qubit_set(qs)
    if not qs:
        raise ValueError("phase gadget needs at least one qubit")
    if len(qs) == 1:
        return GadgetSynthesis([Rz(qs[0], angle)], [], n)
    t = qs[0] if target is None else target
    if t not in qs:
        raise ValueError("ladder target must be in the gadget support")
    emitted = [H(t), GCZ(qs), H(t), Rz(t, angle)]
    return GadgetSynthesis(emitted, gadget_garbage(qs, t), n)


def synth_cz_layer(pairs: Iterable[tuple[int, int]], n: int) -> list[Gate]:
    """At most ``n - 1`` GCZ gates whose product is the given CZ layer.

    For each qubit in ascending order, a GCZ on the qubit and its remaining
    CZ neighbours clears all of its CZs (it may toggle pairs among the
    neighbours, never touching qubits already cleared).
    """
    adj = np.zeros((n, n), dtype=np.uint8)
    for a, b in pairs:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"bad CZ pair {(a, b)}")
        adj[a, b] ^= 1
        adj[b, a] ^= 1
    out = []
    for i in range(n):
        nbrs = np.flatnonzero(adj[i])
        if nbrs.size == 0:
            continue
        block = np.concatenate([[i], nbrs])
        out.append(GCZ(block.tolist()))
        adj[np.ix_(block, block)] ^= 1
        adj[block, block] = 0
        assert not adj[: i + 1].any()
    return out


def synth_fanin(target: int, controls: Iterable[int]) -> list[Gate]:
    """CNOT from every control onto ``target``: one GCZ plus a GCZ of garbage."""
    controls = qubit_set(controls)
    if not controls:
        return []
    out = [H(target), GCZ(controls + (target,)), H(target)]
    if len(controls) >= 2:
        out.append(GCZ(controls))
    return out


def synth_fanout(control: int, targets: Iterable[int]) -> list[Gate]:
    """CNOT from ``control`` onto every target using at most two GCZ gates."""
    targets = qubit_set(targets)
    if control in targets:
        raise ValueError("control cannot also be a target")
    if not targets:
        return []
    hs = [H(t) for t in targets]
    out = hs + [GCZ(targets + (control,))]
    if len(targets) >= 2:
        out.append(GCZ(targets))
    return out + hs


def _triangular_fanins(upper: np.ndarray, lower: np.ndarray) -> list[Gate]:
    n = upper.shape[0]
    gates: list[Gate] = []
    # U first: row i reads rows j > i, so rows go in ascending order
    for i in range(n):
        gates += synth_fanin(i, np.flatnonzero(upper[i, i + 1:]) + i + 1)
    # then L: row i reads rows j < i, so rows go in descending order
    for i in range(n - 1, 0, -1):
        gates += synth_fanin(i, np.flatnonzero(lower[i, :i]))
    return gates


def synth_cnot_circuit(m) -> Circuit:
    """GCZ circuit with linear action ``m``, up to an output relabeling.

    ``m = P L U`` over GF(2). Each unit-triangular factor is a sequence of
    fan-ins costing ``2n - 3`` GCZ at most; ``P`` becomes the relabeling.
    """
    m = gf2.asgf2(m)
    n = m.shape[0]
    perm, lower, upper = gf2.plu(m)
    gates = cancel_global_pairs(_triangular_fanins(upper, lower))
    return Circuit(n, gates, perm)


def synth_clifford(t: CliffordTableau) -> Circuit:
    """At most ``6n - 8`` GCZ gates (n >= 2) realizing tableau ``t``."""
    n = t.num_qubits
    nf = extract_normal_form(t)
    head = Circuit(n, nf.local1 + synth_cz_layer(nf.cz1, n) + nf.local2)
    middle = synth_cnot_circuit(nf.cnot)
    tail = Circuit(n, nf.local3 + synth_cz_layer(nf.cz2, n) + nf.local4)
    out = head.then(middle).then(tail)
    return Circuit(n, cancel_global_pairs(out.gates), out.output_relabeling)


# ----------------------------------------------------------------------------
# Full pipeline


GadgetFn = Callable[[tuple[int, ...], float, int], tuple[list[Gate], list[Gate]]]


def run_phase_loop(c: Circuit, gadget: GadgetFn) -> tuple[list[Gate], CliffordTableau, int, int, int]:
    """Shared driver for the targeted and untargeted pipelines.

    ``gadget(support, angle, n)`` returns ``(emitted, after)``: gates to emit
    and the Clifford gates that, run after ``emitted``, complete the phase
    gadget. ``after`` is pushed into the pending Clifford instead of being
    emitted. Returns the emitted gates, the residual tableau, the number of
    rotations and the global gates they used.
    """
    N = count_non_clifford(c)
    n = c.num_qubits
    inv = CliffordTableau.identity(n)  # inverse of the pending Clifford
    out: list[Gate] = []
    rotations = gadgets = 0
    for g in c.gates:
        if not _is_phase(g):
            absorb_clifford(inv, g)
            continue
        rot = push_to_front(inv, pauli_of_phase(g, n))
        if not rot.string.weight:
            continue
        rotations += 1
        local, support = basis_change(rot.string)
        gadgets += len(support) >= 2
        emitted, after = gadget(support, rot.angle, n)
        out += local + emitted
        # pending becomes: after, local^dagger, pending
        inv.extend(local)
        inv.extend(h.inverse() for h in reversed(after))
    residual = inv.inverse()
    if c.output_relabeling is not None:
        residual = residual.permute_outputs(c.output_relabeling)
    assert rotations == N
    return out, residual, rotations, gadgets, gms_count(Circuit(n, out))


def _targeted_gadget(qs, angle, n):
    gad = synth_phase_gadget(qs, angle, n)
    return gad.emitted, gad.garbage_gates


def compile_targeted(c: Circuit) -> tuple[Circuit, SynthReport]:
    """Clifford+Phases circuit to local gates plus targeted GCZ gates.

    One GCZ per rotation of weight at least two, plus ``6n - 8`` at most for
    the final Clifford.
    """
    n = c.num_qubits
    out, residual, N, gadgets, rot_globals = run_phase_loop(c, _targeted_gadget)
    cliff = synth_clifford(residual)
    result = Circuit(n, out).then(cliff)
    result = Circuit(n, cancel_local_pairs(result.gates), result.output_relabeling)
    count = gms_count(result)
    bound = targeted_bound(n, N)
    report = SynthReport(
        n=n,
        N=N,
        global_gate_count=count,
        mode="targeted",
        bound=bound,
        bound_met=count <= bound,
        relabeling_used=result.output_relabeling is not None,
        gadget_count=gadgets,
        rotation_global_count=rot_globals,
        clifford_global_count=count - rot_globals,
    )
    return result, report
