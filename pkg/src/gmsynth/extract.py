"""Rewrite a Clifford+Phases circuit as Pauli exponentials then one Clifford.

A phase ``Z_q(a)`` sitting after a Clifford ``C`` satisfies
``Z_q(a) C = C exp(-i a/2 C^dagger Z_q C)``, so every non-Clifford phase can
be moved to the front as an exponentiated Pauli. The pass keeps the tableau of
``C^dagger`` for the Cliffords seen so far; each new Clifford gate is
prepended to it, which makes every conjugation a single tableau lookup.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ir import (
    Circuit,
    Gate,
    PauliExp,
    PauliExpGate,
    PauliString,
    UnsupportedGateError,
    is_clifford_angle,
    pauli_exp_of,
)
from .normal_form import extract_normal_form
from .tableau import CliffordTableau, pauli_to_bits, bits_to_pauli


@dataclass
class ExtractedForm:
    num_qubits: int
    rotations: list[PauliExp]
    residual: CliffordTableau


def _is_phase(g: Gate) -> bool:
    return g.kind in ("rz", "pexp") and not is_clifford_angle(g.angle)


def pauli_of_phase(g: Gate, n: int) -> PauliExp:
    if g.kind == "rz":
        return PauliExp(PauliString.single(n, g.qubits[0], "Z"), g.angle)
    return pauli_exp_of(g, n)


def push_to_front(inv: CliffordTableau, rot: PauliExp) -> PauliExp:
    """Conjugate ``rot`` back through the Clifford whose inverse tableau is ``inv``."""
    x, z, neg = pauli_to_bits(rot.string)
    return PauliExp.make(bits_to_pauli(*inv.apply_bits(x, z, neg)), rot.angle)


def absorb_clifford(inv: CliffordTableau, g: Gate) -> None:
    """Record that Clifford ``g`` runs after the pending Clifford."""
    if g.kind in ("gzz", "gms") and not is_clifford_angle(g.angle):
        raise UnsupportedGateError(f"{g.kind} with a non-Clifford angle is not accepted here")
    inv.prepend(g.inverse())


def extract(c: Circuit) -> ExtractedForm:
    """Pauli exponentials in program order, followed by the residual Clifford."""
    n = c.num_qubits
    inv = CliffordTableau.identity(n)
    rotations: list[PauliExp] = []
    for g in c.gates:
        if _is_phase(g):
            rot = push_to_front(inv, pauli_of_phase(g, n))
            if rot.string.weight:
                rotations.append(rot)
        else:
            absorb_clifford(inv, g)
    residual = inv.inverse()
    if c.output_relabeling is not None:
        residual = residual.permute_outputs(c.output_relabeling)
    return ExtractedForm(n, rotations, residual)


def recompose(f: ExtractedForm) -> Circuit:
    gates = [PauliExpGate(r) for r in f.rotations]
    gates += extract_normal_form(f.residual).to_circuit().gates
    return Circuit(f.num_qubits, gates)
