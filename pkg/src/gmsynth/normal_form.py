"""Layered Clifford normal form with two CZ layers and one CNOT layer.

Every Clifford is written, in time order, as

    local  CZ  local  CNOT  local  CZ  local

where the local layers hold single-qubit Cliffords only. The construction
works on the symplectic matrix ``M`` (column convention). A Hadamard layer
on a subset ``a`` of the inputs makes the x-from-z block ``B`` of ``M H_a``
invertible; then

    M H_a = G(Gamma2) . H_all . diag(A, A^-T) . G(Gamma1)

with ``A = B^-T``, ``Gamma1 = B^-1 M11``, ``Gamma2 = M22 B^-1`` and
``G(Gamma) = [[I, 0], [Gamma, I]]``. Off-diagonal entries of each Gamma
are CZ gates, diagonal entries are S gates, and a leading Pauli layer fixes
the signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .ir import CNOT, CZ, Circuit, Gate, H, S, X, Y, Z
from .tableau import CliffordTableau, tableau_of_gates

Pair = tuple[int, int]


@dataclass
class NormalForm:
    """Seven layers in time order.

    ``cz1``/``cz2`` hold unordered pairs ``(i, j)`` with ``i < j``;
    ``cnot`` is the GF(2) matrix of the linear map ``x -> cnot @ x``.
    """

    num_qubits: int
    local1: list[Gate] = field(default_factory=list)
    cz1: set[Pair] = field(default_factory=set)
    local2: list[Gate] = field(default_factory=list)
    cnot: np.ndarray | None = None
    local3: list[Gate] = field(default_factory=list)
    cz2: set[Pair] = field(default_factory=set)
    local4: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        if self.cnot is None:
            self.cnot = np.eye(self.num_qubits, dtype=np.uint8)

    @property
    def layers(self) -> list:
        return [self.local1, self.cz1, self.local2, self.cnot, self.local3, self.cz2, self.local4]

    def to_circuit(self) -> Circuit:
        """Plain circuit over H/S/Pauli/CZ/CNOT realizing the form."""
        gates = list(self.local1)
        gates += [CZ(i, j) for i, j in sorted(self.cz1)]
        gates += self.local2
        gates += [CNOT(c, t) for c, t in gf2.cnot_gates(self.cnot)]
        gates += self.local3
        gates += [CZ(i, j) for i, j in sorted(self.cz2)]
        gates += self.local4
        return Circuit(self.num_qubits, gates)


def _pairs(gamma: np.ndarray) -> set[Pair]:
    n = gamma.shape[0]
    return {(i, j) for i in range(n) for j in range(i + 1, n) if gamma[i, j]}


def _hadamard_subset(m: np.ndarray, n: int) -> list[int]:
    """Inputs to Hadamard so that the x-from-z block becomes invertible.

    The x-rows of ``M`` span a Lagrangian subspace. Row reducing on the z
    columns gives pivots ``P``; the remaining rows are x-only and project
    bijectively onto the complement of ``P``. Hadamards go on that complement.
    """
    top = np.hstack([m[:n, n:], m[:n, :n]])
    _, pivots = gf2.row_reduce(top)
    z_pivots = {p for p in pivots if p < n}
    return [j for j in range(n) if j not in z_pivots]


def _cancel_local(gates: list[Gate]) -> list[Gate]:
    """Drop adjacent inverse pairs of single-qubit gates, qubit by qubit."""
    wires: dict[int, list[Gate]] = {}
    for g in gates:
        w = wires.setdefault(g.qubits[0], [])
        if w and w[-1] == g.inverse():
            w.pop()
        else:
            w.append(g)
    return [g for q in sorted(wires) for g in wires[q]]


def extract_normal_form(t: CliffordTableau) -> NormalForm:
    n = t.num_qubits
    hs = _hadamard_subset(t.symplectic_matrix(), n)
    shifted = t.copy()
    for q in reversed(hs):
        shifted.prepend(H(q))
    m = shifted.symplectic_matrix()
    m11, b, m22 = m[:n, :n], m[:n, n:], m[n:, n:]
    b_inv = gf2.inv(b)
    a = gf2.inv(b).T.copy()
    gamma1 = gf2.matmul(b_inv, m11)
    gamma2 = gf2.matmul(m22, b_inv)
    if not (np.array_equal(gamma1, gamma1.T) and np.array_equal(gamma2, gamma2.T)):
        raise ArithmeticError("input tableau is not symplectic")

    nf = NormalForm(
        n,
        local1=[H(q) for q in hs] + [S(q) for q in range(n) if gamma1[q, q]],
        cz1=_pairs(gamma1),
        cnot=a,
        local3=[H(q) for q in range(n)],
        cz2=_pairs(gamma2),
        local4=[S(q) for q in range(n) if gamma2[q, q]],
    )

    # fix signs with a Pauli layer run first: X_q flips the Z_q image and
    # Z_q flips the X_q image
    built = tableau_of_gates(n, nf.to_circuit().gates)
    if not (np.array_equal(built.x_block, t.x_block) and np.array_equal(built.z_block, t.z_block)):
        raise ArithmeticError("normal form does not reproduce the tableau")
    flip = built.signs ^ t.signs
    paulis = []
    for q in range(n):
        fx, fz = flip[q], flip[n + q]
        if fx and fz:
            paulis.append(Y(q))
        elif fx:
            paulis.append(Z(q))
        elif fz:
            paulis.append(X(q))
    nf.local1 = _cancel_local(paulis + nf.local1)
    if not nf.cz1 and np.array_equal(nf.cnot, np.eye(n, dtype=np.uint8)):
        # nothing entangling before the last CZ layer
        nf.local3 = _cancel_local(nf.local1 + nf.local3)
        nf.local1 = []
    return nf


def random_tableau(n: int, rng: np.random.Generator) -> CliffordTableau:
    """Tableau of a random H/S/CNOT circuit of length ``20 n``."""
    from .sim import random_clifford_circuit
    from .tableau import tableau_from_circuit

    return tableau_from_circuit(random_clifford_circuit(n, seed=int(rng.integers(2**31))))
