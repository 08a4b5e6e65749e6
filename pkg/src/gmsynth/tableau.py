"""Binary symplectic Clifford tableaux.

Row ``k < n`` holds the image ``U X_k U^dagger`` and row ``n + k`` holds
``U Z_k U^dagger``, each as x bits, z bits and a sign bit. Bits ``x=z=1``
on a qubit denote Y.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .ir import (
    Circuit,
    Gate,
    PauliString,
    UnsupportedGateError,
    clifford_power,
)


def _g(x1, z1, x2, z2):
    """Exponent of i picked up by each qubit when multiplying two Paulis."""
    x1 = x1.astype(np.int64)
    z1 = z1.astype(np.int64)
    x2 = x2.astype(np.int64)
    z2 = z2.astype(np.int64)
    return np.where(
        (x1 == 1) & (z1 == 1), z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )


def pauli_to_bits(p: PauliString) -> tuple[np.ndarray, np.ndarray, bool]:
    x = np.array([c in "XY" for c in p.paulis], dtype=np.uint8)
    z = np.array([c in "ZY" for c in p.paulis], dtype=np.uint8)
    return x, z, p.sign < 0


def bits_to_pauli(x, z, negative: bool) -> PauliString:
    letters = "".join("IXZY"[int(a) + 2 * int(b)] for a, b in zip(x, z))
    return PauliString(letters, -1 if negative else 1)


@dataclass(eq=False)
class CliffordTableau:
    x_block: np.ndarray  # (2n, n) uint8
    z_block: np.ndarray  # (2n, n) uint8
    signs: np.ndarray  # (2n,) uint8

    @classmethod
    def identity(cls, n: int) -> "CliffordTableau":
        eye = np.eye(n, dtype=np.uint8)
        zero = np.zeros((n, n), dtype=np.uint8)
        return cls(np.vstack([eye, zero]), np.vstack([zero, eye]), np.zeros(2 * n, dtype=np.uint8))

    @property
    def num_qubits(self) -> int:
        return self.x_block.shape[1]

    def copy(self) -> "CliffordTableau":
        return CliffordTableau(self.x_block.copy(), self.z_block.copy(), self.signs.copy())

    def __eq__(self, other):
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return (
            self.x_block.shape == other.x_block.shape
            and np.array_equal(self.x_block, other.x_block)
            and np.array_equal(self.z_block, other.z_block)
            and np.array_equal(self.signs, other.signs)
        )

    def __repr__(self):
        n = self.num_qubits
        rows = [str(self.row(k)) for k in range(2 * n)]
        return f"CliffordTableau(X->{rows[:n]}, Z->{rows[n:]})"

    def row(self, k: int) -> PauliString:
        return bits_to_pauli(self.x_block[k], self.z_block[k], bool(self.signs[k]))

    def symplectic_matrix(self) -> np.ndarray:
        """``M`` acting on column vectors ``(x; z)``; column ``k`` is row ``k``."""
        return np.hstack([self.x_block, self.z_block]).T.copy()

    def is_symplectic(self) -> bool:
        n = self.num_qubits
        m = self.symplectic_matrix()
        omega = np.block([[np.zeros((n, n), np.uint8), np.eye(n, dtype=np.uint8)],
                          [np.eye(n, dtype=np.uint8), np.zeros((n, n), np.uint8)]])
        return np.array_equal(gf2.matmul(gf2.matmul(m.T, omega), m), omega)

    # ------------------------------------------------------------------
    # Pauli images

    def apply_bits(self, x, z, negative: bool = False):
        """Image of a Hermitian Pauli given in bit form."""
        n = self.num_qubits
        rx = np.zeros(n, dtype=np.uint8)
        rz = np.zeros(n, dtype=np.uint8)
        # Y = i X Z, so every Y contributes one factor of i up front
        e = 2 * int(negative) + int(np.sum(np.asarray(x) & np.asarray(z)))
        for q in np.flatnonzero(x):
            e += int(np.sum(_g(rx, rz, self.x_block[q], self.z_block[q]))) + 2 * int(self.signs[q])
            rx ^= self.x_block[q]
            rz ^= self.z_block[q]
        for q in np.flatnonzero(z):
            k = n + q
            e += int(np.sum(_g(rx, rz, self.x_block[k], self.z_block[k]))) + 2 * int(self.signs[k])
            rx ^= self.x_block[k]
            rz ^= self.z_block[k]
        e %= 4
        if e % 2:
            raise ArithmeticError("non-Hermitian image; tableau is not a valid Clifford")
        return rx, rz, e == 2

    def apply(self, p: PauliString) -> PauliString:
        """``U P U^dagger``."""
        if p.num_qubits != self.num_qubits:
            raise ValueError("length mismatch")
        return bits_to_pauli(*self.apply_bits(*pauli_to_bits(p)))

    # ------------------------------------------------------------------
    # Composition

    def then(self, other: "CliffordTableau") -> "CliffordTableau":
        """Tableau of this Clifford followed (in time) by ``other``."""
        n = self.num_qubits
        out = CliffordTableau.identity(n)
        for k in range(2 * n):
            rx, rz, neg = other.apply_bits(self.x_block[k], self.z_block[k], bool(self.signs[k]))
            out.x_block[k], out.z_block[k], out.signs[k] = rx, rz, neg
        return out

    def inverse(self) -> "CliffordTableau":
        n = self.num_qubits
        m = self.symplectic_matrix()
        omega = np.block([[np.zeros((n, n), np.uint8), np.eye(n, dtype=np.uint8)],
                          [np.eye(n, dtype=np.uint8), np.zeros((n, n), np.uint8)]])
        minv = gf2.matmul(gf2.matmul(omega, m.T), omega)
        inv = CliffordTableau(minv[:n].T.copy(), minv[n:].T.copy(), np.zeros(2 * n, dtype=np.uint8))
        for k in range(2 * n):
            _, _, neg = self.apply_bits(inv.x_block[k], inv.z_block[k], False)
            inv.signs[k] = neg
        return inv

    def permute_outputs(self, perm: Sequence[int]) -> "CliffordTableau":
        """Append the relabeling that puts wire ``perm[i]`` at logical ``i``."""
        perm = list(perm)
        return CliffordTableau(self.x_block[:, perm].copy(), self.z_block[:, perm].copy(), self.signs.copy())

    # ------------------------------------------------------------------
    # In-place gate appends (later in time)

    def _h(self, a):
        x, z = self.x_block, self.z_block
        self.signs ^= x[:, a] & z[:, a]
        x[:, a], z[:, a] = z[:, a].copy(), x[:, a].copy()

    def _s(self, a):
        x, z = self.x_block, self.z_block
        self.signs ^= x[:, a] & z[:, a]
        z[:, a] ^= x[:, a]

    def _sdg(self, a):
        x, z = self.x_block, self.z_block
        self.signs ^= x[:, a] & (1 - z[:, a])
        z[:, a] ^= x[:, a]

    def _cx(self, c, t):
        x, z = self.x_block, self.z_block
        self.signs ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
        x[:, t] ^= x[:, c]
        z[:, c] ^= z[:, t]

    def _cz(self, a, b):
        self._h(b)
        self._cx(a, b)
        self._h(b)

    def _s_power(self, q, k):
        for _ in range(k % 4):
            self._s(q)

    def _zz_quarter(self, qs, k):
        # ZZ(pi/2) on a pair is CZ followed by S on both qubits, up to phase
        for _ in range(k % 4):
            for i, a in enumerate(qs):
                for b in qs[i + 1:]:
                    self._cz(a, b)
                self._s_power(a, len(qs) - 1)

    def append(self, g: Gate) -> "CliffordTableau":
        """Apply gate ``g`` after everything so far. Mutates and returns self."""
        k, qs = g.kind, g.qubits
        if k == "h":
            self._h(qs[0])
        elif k == "s":
            self._s(qs[0])
        elif k == "sdg":
            self._sdg(qs[0])
        elif k == "x":
            self.signs ^= self.z_block[:, qs[0]]
        elif k == "z":
            self.signs ^= self.x_block[:, qs[0]]
        elif k == "y":
            self.signs ^= self.x_block[:, qs[0]] ^ self.z_block[:, qs[0]]
        elif k == "cx":
            self._cx(*qs)
        elif k == "cz":
            self._cz(*qs)
        elif k == "gcz":
            for i, a in enumerate(qs):
                for b in qs[i + 1:]:
                    self._cz(a, b)
        elif k in ("rz", "gzz", "gms"):
            p = clifford_power(g.angle)
            if p is None:
                raise UnsupportedGateError(f"{k} with non-Clifford angle {g.angle}")
            if k == "rz":
                self._s_power(qs[0], p)
            else:
                if k == "gms":
                    for q in qs:
                        self._h(q)
                self._zz_quarter(qs, p)
                if k == "gms":
                    for q in qs:
                        self._h(q)
        else:
            raise UnsupportedGateError(f"{k} is not a Clifford gate")
        return self

    def extend(self, gates: Iterable[Gate]) -> "CliffordTableau":
        for g in gates:
            self.append(g)
        return self

    def prepend(self, g: Gate) -> "CliffordTableau":
        """Apply gate ``g`` before everything so far. Mutates and returns self."""
        n = self.num_qubits
        local = CliffordTableau.identity(n).append(g)
        rows = list(g.qubits) + [n + q for q in g.qubits]
        new = [self.apply_bits(local.x_block[k], local.z_block[k], bool(local.signs[k])) for k in rows]
        for k, (rx, rz, neg) in zip(rows, new):
            self.x_block[k], self.z_block[k], self.signs[k] = rx, rz, neg
        return self


def tableau_from_circuit(c: Circuit) -> CliffordTableau:
    t = CliffordTableau.identity(c.num_qubits).extend(c.gates)
    if c.output_relabeling is not None:
        t = t.permute_outputs(c.output_relabeling)
    return t


def tableau_of_gates(n: int, gates: Iterable[Gate]) -> CliffordTableau:
    return CliffordTableau.identity(n).extend(gates)


def conjugate_back(t: CliffordTableau, p: PauliString) -> PauliString:
    """``C^dagger P C`` for the Clifford ``C`` described by ``t``."""
    return t.inverse().apply(p)


def merge(t1: CliffordTableau, t2: CliffordTableau) -> CliffordTableau:
    """Tableau of ``t1``'s circuit followed by ``t2``'s circuit."""
    if t1.num_qubits != t2.num_qubits:
        raise ValueError("qubit count mismatch")
    return t1.then(t2)
