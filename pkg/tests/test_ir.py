import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gmsynth.ir import (
    CNOT,
    GCZ,
    GMS,
    GZZ,
    HALF_PI,
    Circuit,
    Gate,
    H,
    PauliExp,
    PauliString,
    Rz,
    S,
    Sdg,
    UnsupportedGateError,
    Z,
    cancel_global_pairs,
    count_non_clifford,
    dagger,
    gcz_as_gzz,
    gms_count,
    gzz_as_gms,
    is_clifford_angle,
    lower_to_gms,
    reduce_angle,
)
from gmsynth.sim import random_clifford_phases_circuit, unitary_of

from conftest import cz_matrix, same_up_to_phase, zz


def test_clifford_angles():
    assert is_clifford_angle(math.pi / 2)
    assert not is_clifford_angle(math.pi / 4)
    assert not is_clifford_angle(0.7853981633974483)
    assert is_clifford_angle(reduce_angle(-math.pi / 2))
    assert is_clifford_angle(2 * math.pi - 1e-14)


@given(st.floats(-100, 100, allow_nan=False))
def test_reduce_idempotent(a):
    r = reduce_angle(a)
    assert 0 <= r < 2 * math.pi
    assert reduce_angle(r) == r


@given(st.floats(1e-6, 2 * math.pi, exclude_max=True), st.integers(0, 20))
def test_halving_is_exact(a, m):
    assert (a / 2**m) * 2**m == a


def test_count_non_clifford():
    assert count_non_clifford(Circuit(2, [H(0), CNOT(0, 1)])) == 0
    c = Circuit(2, [Rz(0, math.pi / 4), Rz(1, math.pi / 2), Rz(0, math.pi / 4)])
    assert count_non_clifford(c) == 2
    assert count_non_clifford(random_clifford_phases_circuit(3, 50, 7, seed=11)) == 7
    with pytest.raises(UnsupportedGateError):
        count_non_clifford(Circuit(2, [GMS((0, 1), 0.3)]))


def test_pauli_exp_folds_sign():
    e = PauliExp.make(PauliString("XZ", -1), math.pi / 4)
    assert e.string.sign == 1
    assert e.angle == pytest.approx(7 * math.pi / 4)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("cx", (1, 1))
    with pytest.raises(ValueError):
        Circuit(2, [H(2)])
    with pytest.raises(ValueError):
        Circuit(3, [], (0, 0, 1))


def test_gcz_as_gzz_examples():
    assert gcz_as_gzz((0, 1)) == [GZZ((0, 1), HALF_PI), Sdg(0), Sdg(1)]
    assert gcz_as_gzz((0,)) == []
    assert gcz_as_gzz((0, 1, 2)) == [GZZ((0, 1, 2), HALF_PI), Z(0), Z(1), Z(2)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gcz_as_gzz_matches_cz_product(n):
    for k in range(2, n + 1):
        for qs in combinations(range(n), k):
            want = np.eye(2**n, dtype=complex)
            for i, j in combinations(qs, 2):
                want = cz_matrix(n, i, j) @ want
            got = unitary_of(Circuit(n, gcz_as_gzz(qs)))
            assert same_up_to_phase(got, want)


def test_gzz_as_gms():
    assert gzz_as_gms((0, 1), HALF_PI) == [H(0), H(1), GMS((0, 1), HALF_PI), H(0), H(1)]
    assert gzz_as_gms((), 0.3) == []
    got = unitary_of(Circuit(3, gzz_as_gms((0, 1, 2), math.pi / 4)))
    want = zz(3, 0, 1, math.pi / 4) @ zz(3, 0, 2, math.pi / 4) @ zz(3, 1, 2, math.pi / 4)
    assert same_up_to_phase(got, want)


@pytest.mark.parametrize("a,b", [(0.3, 0.9), (math.pi / 8, math.pi / 4), (5.0, 4.0)])
def test_gzz_additive(a, b):
    n = 4
    lhs = unitary_of(Circuit(n, [GZZ(range(n), a), GZZ(range(n), b)]))
    rhs = unitary_of(Circuit(n, [GZZ(range(n), a + b)]))
    assert same_up_to_phase(lhs, rhs)


def test_gzz_pair_order_irrelevant():
    n = 3
    pairs = list(combinations(range(n), 2))
    want = unitary_of(Circuit(n, [GZZ(range(n), 0.4)]))
    for order in (pairs, pairs[::-1]):
        m = np.eye(8, dtype=complex)
        for i, j in order:
            m = zz(n, i, j, 0.4) @ m
        assert same_up_to_phase(m, want)


def test_dagger_examples():
    assert dagger(Circuit(1, [H(0)])).gates == (H(0),)
    assert dagger(Circuit(2, [S(0), CNOT(0, 1)])).gates == (CNOT(0, 1), Sdg(0))


@pytest.mark.parametrize("seed", range(5))
def test_dagger_inverts(seed):
    c = random_clifford_phases_circuit(3, 20, 3, seed=seed)
    c = Circuit(3, list(c.gates) + [GZZ((0, 2), 0.3), GMS((0, 1, 2), 1.1), GCZ((1, 2))])
    u = unitary_of(c) @ unitary_of(dagger(c))
    assert same_up_to_phase(u, np.eye(8))


def test_dagger_with_relabeling():
    c = Circuit(3, [H(0), CNOT(0, 2), Rz(1, 0.2)], (2, 0, 1))
    u = unitary_of(dagger(c)) @ unitary_of(c)
    assert same_up_to_phase(u, np.eye(8))


def test_then_composes_relabelings():
    a = Circuit(3, [H(0), CNOT(0, 1)], (1, 2, 0))
    b = Circuit(3, [Rz(0, 0.3), CNOT(2, 0)], (2, 0, 1))
    got = unitary_of(a.then(b))
    assert same_up_to_phase(got, unitary_of(b) @ unitary_of(a))


def test_lower_to_gms_keeps_unitary():
    c = Circuit(4, [GCZ((0, 1, 3)), GZZ((1, 2, 3), 0.7), H(2)])
    low = lower_to_gms(c)
    assert {g.kind for g in low.gates if g.is_global} == {"gms"}
    assert gms_count(low) == gms_count(c) == 2
    assert same_up_to_phase(unitary_of(low), unitary_of(c))


def test_gms_count_ignores_trivial_sets():
    assert gms_count(Circuit(3, [GCZ((1,)), GZZ((0, 2), 0.1), GMS((0, 1, 2), 0.1)])) == 2


def test_cancel_global_pairs():
    gates = [GCZ((0, 1)), S(0), H(2), GCZ((0, 1)), GZZ((1, 2), 0.25), Z(1), GZZ((1, 2), 0.5)]
    out = cancel_global_pairs(gates)
    assert out == [S(0), H(2), GZZ((1, 2), 0.75), Z(1)]
    # a Hadamard on a participating qubit blocks cancellation
    blocked = [GCZ((0, 1)), H(0), GCZ((0, 1))]
    assert cancel_global_pairs(blocked) == blocked


def test_cancel_local_pairs():
    from gmsynth.ir import cancel_local_pairs
    assert cancel_local_pairs([H(0), H(0)]) == []
    assert cancel_local_pairs([S(0), H(1), Sdg(0)]) == [H(1)]
    assert cancel_local_pairs([H(0), CNOT(0, 1), H(0)]) == [H(0), CNOT(0, 1), H(0)]
    assert cancel_local_pairs([H(0), S(0), Sdg(0), H(0)]) == []
    assert cancel_local_pairs([Rz(0, 0.3), Rz(0, -0.3), Z(0)]) == [Z(0)]
