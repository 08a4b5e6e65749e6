"""Dense-matrix oracles and random test circuits.

Qubit 0 is the most significant bit of a basis-state index. The matrix of a
circuit is the product of its gate matrices with gate 0 rightmost.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .ir import (
    CNOT,
    CZ,
    HALF_PI,
    Circuit,
    Gate,
    H,
    Rz,
    S,
    Sdg,
    UnsupportedGateError,
    X,
    Y,
    Z,
    is_clifford_angle,
)

MAX_DENSE_QUBITS = 12

_SQ2 = 1 / math.sqrt(2)
_MATS = {
    "h": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "s": np.diag([1, 1j]),
    "sdg": np.diag([1, -1j]),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.diag([1, -1]).astype(complex),
    "I": np.eye(2, dtype=complex),
}
_MATS["X"], _MATS["Y"], _MATS["Z"] = _MATS["x"], _MATS["y"], _MATS["z"]


class OracleScaleError(ValueError):
    pass


def _bits(n: int) -> np.ndarray:
    """``bits[q, b]`` is the value of qubit ``q`` in basis state ``b``."""
    idx = np.arange(2**n)
    return ((idx[None, :] >> (n - 1 - np.arange(n))[:, None]) & 1).astype(np.int64)


def _apply_1q(t: np.ndarray, m: np.ndarray, q: int) -> np.ndarray:
    t = np.tensordot(m, t, axes=([1], [q]))
    return np.moveaxis(t, 0, q)


def _apply_pauli(t: np.ndarray, paulis: str, qubits) -> np.ndarray:
    for p, q in zip(paulis, qubits):
        t = _apply_1q(t, _MATS[p], q)
    return t


def _zz_phase(bits: np.ndarray, qubits, angle: float) -> np.ndarray:
    """Diagonal of ``prod_{i<j in qubits} exp(-i angle/2 Z_i Z_j)``."""
    spins = 1 - 2 * bits[list(qubits)]
    tot = spins.sum(axis=0)
    pair_sum = (tot**2 - len(qubits)) // 2
    return np.exp(-0.5j * angle * pair_sum)


def _gcz_phase(bits: np.ndarray, qubits) -> np.ndarray:
    ones = bits[list(qubits)].sum(axis=0)
    return np.where((ones * (ones - 1) // 2) % 2 == 1, -1.0, 1.0).astype(complex)


def _apply_gate(t: np.ndarray, g: Gate, n: int, bits: np.ndarray) -> np.ndarray:
    k = g.kind
    if k in _MATS:
        return _apply_1q(t, _MATS[k], g.qubits[0])
    if k == "rz":
        half = g.angle / 2
        return _apply_1q(t, np.diag([np.exp(-1j * half), np.exp(1j * half)]), g.qubits[0])
    shape = t.shape
    flat = t.reshape(2**n, -1)
    if k == "cx":
        c, tq = g.qubits
        t = t.copy()
        sl = [slice(None)] * t.ndim
        sl[c] = 1
        sub = t[tuple(sl)]
        ax = tq if tq < c else tq - 1
        t[tuple(sl)] = np.flip(sub, axis=ax)
        return t
    if k == "cz":
        return (flat * _gcz_phase(bits, g.qubits)[:, None]).reshape(shape)
    if k == "gcz":
        if len(g.qubits) < 2:
            return t
        return (flat * _gcz_phase(bits, g.qubits)[:, None]).reshape(shape)
    if k == "gzz":
        return (flat * _zz_phase(bits, g.qubits, g.angle)[:, None]).reshape(shape)
    if k == "gms":
        for q in g.qubits:
            t = _apply_1q(t, _MATS["h"], q)
        flat = t.reshape(2**n, -1)
        t = (flat * _zz_phase(bits, g.qubits, g.angle)[:, None]).reshape(shape)
        for q in g.qubits:
            t = _apply_1q(t, _MATS["h"], q)
        return t
    if k == "pexp":
        pt = _apply_pauli(t, g.paulis, g.qubits)
        return math.cos(g.angle / 2) * t - 1j * math.sin(g.angle / 2) * pt
    raise UnsupportedGateError(k)


def unitary_of(c: Circuit) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix of a circuit (n <= 12)."""
    n = c.num_qubits
    if n > MAX_DENSE_QUBITS:
        raise OracleScaleError(f"dense oracle limited to {MAX_DENSE_QUBITS} qubits, got {n}")
    dim = 2**n
    bits = _bits(n)
    t = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        t = _apply_gate(t, g, n, bits)
    if c.output_relabeling is not None:
        t = np.transpose(t, list(c.output_relabeling) + [n])
    return np.ascontiguousarray(t).reshape(dim, dim)


def basis_image(c: Circuit, index: int) -> np.ndarray:
    """Output state of ``c`` on basis state ``index``."""
    n = c.num_qubits
    if n > MAX_DENSE_QUBITS:
        raise OracleScaleError(f"dense oracle limited to {MAX_DENSE_QUBITS} qubits, got {n}")
    bits = _bits(n)
    v = np.zeros(2**n, dtype=complex)
    v[index] = 1
    t = v.reshape((2,) * n + (1,))
    for g in c.gates:
        t = _apply_gate(t, g, n, bits)
    if c.output_relabeling is not None:
        t = np.transpose(t, list(c.output_relabeling) + [n])
    return np.ascontiguousarray(t).reshape(-1)


@dataclass(frozen=True)
class EquivResult:
    equivalent: bool
    phase: complex | None
    max_deviation: float

    def __bool__(self):
        return self.equivalent


def equiv_up_to_phase(U: np.ndarray, V: np.ndarray, tol: float = 1e-8) -> EquivResult:
    """Check ``U = phase * V`` entrywise within ``tol``."""
    U = np.asarray(U)
    V = np.asarray(V)
    if U.shape != V.shape:
        raise ValueError("dimension mismatch")
    idx = np.unravel_index(np.argmax(np.abs(V)), V.shape)
    if abs(V[idx]) == 0:
        raise ValueError("reference matrix is zero")
    phase = U[idx] / V[idx]
    if abs(phase) > 0:
        phase = phase / abs(phase)
    dev = float(np.max(np.abs(U - phase * V)))
    ok = dev <= tol
    return EquivResult(ok, complex(phase) if ok else None, dev)


def circuits_equivalent(a: Circuit, b: Circuit, tol: float = 1e-8) -> EquivResult:
    return equiv_up_to_phase(unitary_of(a), unitary_of(b), tol)


def tableau_equiv(c1: Circuit, c2: Circuit) -> bool:
    """Exact Clifford equivalence (signs included), honoring relabelings."""
    from .tableau import tableau_from_circuit

    if c1.num_qubits != c2.num_qubits:
        return False
    return tableau_from_circuit(c1) == tableau_from_circuit(c2)


# ----------------------------------------------------------------------------
# Random circuits


def default_seed() -> int:
    return int(os.environ.get("GMSC_SEED", "0"))


def _random_non_clifford_angle(rng: np.random.Generator) -> float:
    if rng.random() < 0.5:
        return float(rng.choice([1, 3, 5, 7, -1, -3]) * math.pi / 4)
    while True:
        a = float(rng.uniform(0, 2 * math.pi))
        if not is_clifford_angle(a):
            return a


def random_clifford_phases_circuit(n: int, depth: int, t_count: int, seed: int | None = None) -> Circuit:
    """Random Clifford+Phases circuit with exactly ``t_count`` non-Clifford phases.

    ``depth`` Clifford gates are drawn from H, S, Sdg, X, Y, Z, Clifford-angle
    Rz, CNOT and CZ; the phases are then inserted at random positions.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    gates: list[Gate] = []
    one = [H, S, Sdg, X, Y, Z]
    for _ in range(depth):
        r = rng.random()
        if n >= 2 and r < 0.35:
            a, b = (int(v) for v in rng.choice(n, 2, replace=False))
            gates.append(CNOT(a, b) if rng.random() < 0.7 else CZ(a, b))
        elif r < 0.42:
            gates.append(Rz(int(rng.integers(n)), HALF_PI * int(rng.integers(4))))
        else:
            gates.append(one[int(rng.integers(len(one)))](int(rng.integers(n))))
    for _ in range(t_count):
        pos = int(rng.integers(len(gates) + 1))
        gates.insert(pos, Rz(int(rng.integers(n)), _random_non_clifford_angle(rng)))
    return Circuit(n, gates)


def random_clifford_circuit(n: int, length: int | None = None, seed: int | None = None) -> Circuit:
    """Random H/S/CNOT circuit, ``20 n`` gates by default."""
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    length = 20 * n if length is None else length
    gates = []
    for _ in range(length):
        r = rng.random()
        if n >= 2 and r < 0.4:
            a, b = (int(v) for v in rng.choice(n, 2, replace=False))
            gates.append(CNOT(a, b))
        elif r < 0.7:
            gates.append(H(int(rng.integers(n))))
        else:
            gates.append(S(int(rng.integers(n))))
    # a trailing Pauli layer so signs get exercised
    for q in range(n):
        p = int(rng.integers(4))
        if p:
            gates.append([X, Y, Z][p - 1](q))
    return Circuit(n, gates)
