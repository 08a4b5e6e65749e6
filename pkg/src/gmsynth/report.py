from __future__ import annotations

import json
from dataclasses import asdict, dataclass


def targeted_bound(n: int, N: int) -> int:
    return N + max(0, 6 * n - 8)


def schedule_length(n: int) -> int:
    """All-qubit GZZ gates needed per layer of disjoint two-qubit ZZ gates:
    ``2^k`` with ``k`` the smallest integer such that ``n - 1 <= 2^k``."""
    k = 0
    while (1 << k) < n - 1:
        k += 1
    return 1 << k


def untargeted_clifford_budget(n: int) -> int:
    """Worst case untargeted cost of the residual Clifford.

    Two CZ layers split into at most ``n`` (odd n) or ``n - 1`` (even n)
    matchings, and a CNOT layer of depth at most ``2 (2n - 3)``; each
    matching or CNOT layer costs one schedule.
    """
    if n < 2:
        return 0
    matchings = n if n % 2 else n - 1
    return (2 * matchings + 2 * (2 * n - 3)) * schedule_length(n)


def untargeted_bound(n: int, N: int) -> int:
    return 2 * N + untargeted_clifford_budget(n)


@dataclass
class SynthReport:
    n: int
    N: int
    global_gate_count: int
    mode: str
    bound: int
    bound_met: bool
    verified: str = "skipped"
    relabeling_used: bool = False
    gadget_count: int = 0  # rotations that needed a multi-qubit gadget
    rotation_global_count: int = 0
    clifford_global_count: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"
