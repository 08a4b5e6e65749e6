"""Circuit intermediate representation.

Gates are immutable values. Angles are plain floats in radians, reduced to
``[0, 2pi)``. Global phase is never tracked: every equality in this package
is equality up to a global phase.

Gate list index 0 acts first (rightmost in an operator product).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

TWO_PI = 2 * math.pi
HALF_PI = math.pi / 2
CLIFFORD_TOL = 1e-12

SINGLE_QUBIT_KINDS = ("h", "s", "sdg", "x", "y", "z", "rz")
GLOBAL_KINDS = ("gms", "gzz", "gcz")
INPUT_KINDS = ("h", "s", "sdg", "x", "y", "z", "rz", "cx", "cz")
ALL_KINDS = SINGLE_QUBIT_KINDS + ("cx", "cz") + GLOBAL_KINDS + ("pexp",)
ANGLED_KINDS = ("rz", "gms", "gzz", "pexp")


class UnsupportedGateError(ValueError):
    """Raised when a gate falls outside the gate set an operation accepts."""


# ----------------------------------------------------------------------------
# Angles


def reduce_angle(a: float) -> float:
    """Reduce an angle to ``[0, 2pi)``."""
    r = math.fmod(a, TWO_PI)
    if r < 0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


def clifford_power(a: float) -> int | None:
    """Return ``k`` in ``0..3`` when ``a`` is ``k*pi/2`` (mod 2pi), else None."""
    a = reduce_angle(a)
    k = round(a / HALF_PI)
    if abs(a - k * HALF_PI) <= CLIFFORD_TOL:
        return k % 4
    return None


def is_clifford_angle(a: float) -> bool:
    return clifford_power(a) is not None


# ----------------------------------------------------------------------------
# Pauli strings


PAULIS = "IXYZ"


@dataclass(frozen=True)
class PauliString:
    """A signed tensor product of single-qubit Paulis, one letter per qubit."""

    paulis: str
    sign: int = 1

    def __post_init__(self):
        if any(p not in PAULIS for p in self.paulis):
            raise ValueError(f"bad Pauli string {self.paulis!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def single(cls, n: int, q: int, p: str) -> "PauliString":
        return cls("".join(p if i == q else "I" for i in range(n)))

    @property
    def num_qubits(self) -> int:
        return len(self.paulis)

    @property
    def weight(self) -> int:
        return sum(p != "I" for p in self.paulis)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.paulis) if p != "I")

    def __neg__(self) -> "PauliString":
        return PauliString(self.paulis, -self.sign)

    def __str__(self):
        return ("+" if self.sign > 0 else "-") + self.paulis


@dataclass(frozen=True)
class PauliExp:
    """``exp(-i angle/2 P)`` for an unsigned Pauli string ``P``.

    Build through :meth:`make` to fold a negative sign into the angle.
    """

    string: PauliString
    angle: float

    @classmethod
    def make(cls, string: PauliString, angle: float) -> "PauliExp":
        if string.sign < 0:
            angle = -angle
        return cls(PauliString(string.paulis), reduce_angle(angle))


# ----------------------------------------------------------------------------
# Gates


@dataclass(frozen=True)
class Gate:
    """One gate. ``qubits`` is (control, target) for ``cx`` and sorted
    ascending for every symmetric multi-qubit kind. ``paulis`` is only used by
    ``pexp`` and holds one letter per entry of ``qubits``."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    paulis: str | None = None

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise UnsupportedGateError(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.kind} {self.qubits}")
        if self.kind in SINGLE_QUBIT_KINDS and len(self.qubits) != 1:
            raise ValueError(f"{self.kind} acts on exactly one qubit")
        if self.kind in ("cx", "cz") and len(self.qubits) != 2:
            raise ValueError(f"{self.kind} acts on exactly two qubits")
        if (self.angle is None) == (self.kind in ANGLED_KINDS):
            raise ValueError(f"angle mismatch for {self.kind}")
        if self.kind == "pexp" and (self.paulis is None or len(self.paulis) != len(self.qubits)):
            raise ValueError("pexp needs one Pauli letter per qubit")

    @property
    def is_global(self) -> bool:
        return self.kind in GLOBAL_KINDS

    def inverse(self) -> "Gate":
        if self.kind == "s":
            return Gate("sdg", self.qubits)
        if self.kind == "sdg":
            return Gate("s", self.qubits)
        if self.angle is not None:
            return Gate(self.kind, self.qubits, reduce_angle(-self.angle), self.paulis)
        return self

    def relabel(self, perm: Sequence[int]) -> "Gate":
        """Move the gate from qubit ``q`` to ``perm[q]``."""
        qs = tuple(perm[q] for q in self.qubits)
        if self.kind == "pexp":
            order = sorted(range(len(qs)), key=qs.__getitem__)
            return Gate("pexp", tuple(qs[i] for i in order), self.angle,
                        "".join(self.paulis[i] for i in order))
        if self.kind not in ("cx",):
            qs = tuple(sorted(qs))
        return Gate(self.kind, qs, self.angle)


def _one(kind):
    def make(q: int) -> Gate:
        return Gate(kind, (q,))
    make.__name__ = kind.upper()
    return make


H = _one("h")
S = _one("s")
Sdg = _one("sdg")
X = _one("x")
Y = _one("y")
Z = _one("z")


def Rz(q: int, angle: float) -> Gate:
    return Gate("rz", (q,), reduce_angle(angle))


def CNOT(control: int, target: int) -> Gate:
    return Gate("cx", (control, target))


def CZ(a: int, b: int) -> Gate:
    return Gate("cz", tuple(sorted((a, b))))


def qubit_set(qs: Iterable[int]) -> tuple[int, ...]:
    qs = tuple(sorted(set(qs)))
    return qs


def GMS(qs: Iterable[int], angle: float) -> Gate:
    return Gate("gms", qubit_set(qs), reduce_angle(angle))


def GZZ(qs: Iterable[int], angle: float) -> Gate:
    return Gate("gzz", qubit_set(qs), reduce_angle(angle))


def GCZ(qs: Iterable[int]) -> Gate:
    return Gate("gcz", qubit_set(qs))


def PauliExpGate(pexp: PauliExp) -> Gate:
    supp = pexp.string.support
    return Gate("pexp", supp, pexp.angle, "".join(pexp.string.paulis[q] for q in supp))


def pauli_exp_of(gate: Gate, n: int) -> PauliExp:
    letters = ["I"] * n
    for q, p in zip(gate.qubits, gate.paulis):
        letters[q] = p
    return PauliExp(PauliString("".join(letters)), gate.angle)


# ----------------------------------------------------------------------------
# Circuits


@dataclass(frozen=True)
class Circuit:
    """An ordered gate sequence on ``num_qubits`` wires.

    ``output_relabeling[i] = w`` means logical output qubit ``i`` is found on
    wire ``w`` once all gates have run.
    """

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    output_relabeling: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(q < 0 or q >= self.num_qubits for q in g.qubits):
                raise ValueError(f"gate {g} out of range for {self.num_qubits} qubits")
        if self.output_relabeling is not None:
            perm = tuple(int(p) for p in self.output_relabeling)
            if sorted(perm) != list(range(self.num_qubits)):
                raise ValueError("output_relabeling must be a permutation")
            if perm == tuple(range(self.num_qubits)):
                perm = None
            object.__setattr__(self, "output_relabeling", perm)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def then(self, other: "Circuit") -> "Circuit":
        """Run ``self`` and then ``other``."""
        if other.num_qubits != self.num_qubits:
            raise ValueError("qubit count mismatch")
        gates = list(self.gates)
        perm = self.output_relabeling
        if perm is None:
            gates += other.gates
            return Circuit(self.num_qubits, gates, other.output_relabeling)
        gates += [g.relabel(perm) for g in other.gates]
        if other.output_relabeling is not None:
            perm = tuple(perm[p] for p in other.output_relabeling)
        return Circuit(self.num_qubits, gates, perm)


def dagger(c: Circuit) -> Circuit:
    """Inverse circuit. A relabeled circuit is first undone on its wires."""
    perm = c.output_relabeling
    gates = [g.inverse() for g in reversed(c.gates)]
    if perm is None:
        return Circuit(c.num_qubits, gates)
    # the inverse starts with logical qubit i on wire perm[i]; relabel the
    # whole thing so it reads logical inputs and ends with inverse labels
    inv = [0] * len(perm)
    for i, w in enumerate(perm):
        inv[w] = i
    return Circuit(c.num_qubits, [g.relabel(inv) for g in gates], tuple(inv))


def count_non_clifford(c: Circuit) -> int:
    """Number of ``rz`` gates whose angle is not a multiple of pi/2."""
    count = 0
    for g in c.gates:
        if g.kind == "rz":
            count += not is_clifford_angle(g.angle)
        elif g.kind not in INPUT_KINDS and g.kind != "gcz":
            if g.kind in ("gzz", "gms") and is_clifford_angle(g.angle):
                continue
            raise UnsupportedGateError(f"{g.kind} is not in the Clifford+Phases gate set")
    return count


def gms_count(c: Circuit) -> int:
    """Number of entangling global gates; GMS, GZZ and GCZ count alike."""
    return sum(1 for g in c.gates if g.is_global and len(g.qubits) >= 2)


def gate_histogram(c: Circuit) -> dict[str, int]:
    counts = Counter(g.kind for g in c.gates)
    return {k: counts.get(k, 0) for k in ALL_KINDS}


def depth(c: Circuit) -> int:
    level = [0] * c.num_qubits
    for g in c.gates:
        d = 1 + max(level[q] for q in g.qubits) if g.qubits else 0
        for q in g.qubits:
            level[q] = d
    return max(level, default=0)


def is_clifford_circuit(c: Circuit) -> bool:
    for g in c.gates:
        if g.kind in ("rz", "gzz", "gms", "pexp") and not is_clifford_angle(g.angle):
            return False
    return True


# ----------------------------------------------------------------------------
# Local-Clifford interconversions between global gates


def _s_power(q: int, k: int) -> list[Gate]:
    return [[], [S(q)], [Z(q)], [Sdg(q)]][k % 4]


def gcz_as_gzz(qs: Iterable[int]) -> list[Gate]:
    """``GCZ(S)`` as ``GZZ(S, pi/2)`` followed by ``Sdg^(|S|-1)`` on each qubit."""
    qs = qubit_set(qs)
    if len(qs) < 2:
        return []
    out = [GZZ(qs, HALF_PI)]
    for q in qs:
        out += _s_power(q, -(len(qs) - 1))
    return out


def gzz_as_gms(qs: Iterable[int], angle: float) -> list[Gate]:
    qs = qubit_set(qs)
    if not qs:
        return []
    hs = [H(q) for q in qs]
    return hs + [GMS(qs, angle)] + hs


def lower_to_gms(c: Circuit) -> Circuit:
    """Rewrite every GZZ and GCZ gate as a GMS gate plus local Cliffords."""
    out: list[Gate] = []
    for g in c.gates:
        if g.kind == "gcz":
            for h in gcz_as_gzz(g.qubits):
                out += gzz_as_gms(h.qubits, h.angle) if h.kind == "gzz" else [h]
        elif g.kind == "gzz":
            out += gzz_as_gms(g.qubits, g.angle)
        else:
            out.append(g)
    return Circuit(c.num_qubits, out, c.output_relabeling)


def _commutes_with_diagonal_global(g: Gate, qs: set[int]) -> bool:
    if qs.isdisjoint(g.qubits):
        return True
    return g.kind in ("z", "s", "sdg", "rz", "cz", "gcz", "gzz")


def _undoes(a: Gate, b: Gate) -> bool:
    if a.angle is None:
        return a == b.inverse()
    if (a.kind, a.qubits) != (b.kind, b.qubits):
        return False
    r = reduce_angle(a.angle + b.angle)
    return min(r, TWO_PI - r) <= CLIFFORD_TOL


def cancel_local_pairs(gates: Sequence[Gate]) -> list[Gate]:
    """Remove single-qubit gates directly followed on their wire by their
    inverse, repeatedly (so ``H S Sdg H`` vanishes)."""
    out: list[Gate | None] = []
    wire: dict[int, list[int]] = {}  # indices into out of live gates per wire
    for g in gates:
        if len(g.qubits) == 1:
            stack = wire.setdefault(g.qubits[0], [])
            if stack and len(out[stack[-1]].qubits) == 1 and _undoes(out[stack[-1]], g):
                out[stack.pop()] = None
                continue
        for q in g.qubits:
            wire.setdefault(q, []).append(len(out))
        out.append(g)
    return [g for g in out if g is not None]


def cancel_global_pairs(gates: Sequence[Gate]) -> list[Gate]:
    """Peephole pass over diagonal global gates.

    A GCZ meets an identical earlier GCZ through commuting gates and both
    vanish; two GZZ on the same set merge into one with the summed angle.
    """
    out: list[Gate | None] = []
    for g in gates:
        if g.kind in ("gcz", "gzz"):
            qs = set(g.qubits)
            j = len(out) - 1
            while j >= 0:
                h = out[j]
                if h is not None:
                    if h.kind == g.kind and h.qubits == g.qubits:
                        break
                    if not _commutes_with_diagonal_global(h, qs):
                        j = -1
                        break
                j -= 1
            if j >= 0:
                h = out[j]
                if g.kind == "gcz":
                    out[j] = None
                    continue
                merged = reduce_angle(h.angle + g.angle)
                out[j] = None if merged == 0.0 else GZZ(g.qubits, merged)
                continue
        out.append(g)
    return [g for g in out if g is not None]
