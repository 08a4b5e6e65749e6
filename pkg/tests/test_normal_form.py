import numpy as np
import pytest

from gmsynth import gf2
from gmsynth.ir import CZ, Circuit, H, S
from gmsynth.normal_form import extract_normal_form, random_tableau
from gmsynth.sim import random_clifford_circuit
from gmsynth.tableau import CliffordTableau, tableau_from_circuit


def _entangling(gates):
    return [g for g in gates if len(g.qubits) > 1]


def test_identity_is_empty():
    nf = extract_normal_form(CliffordTableau.identity(4))
    assert not nf.cz1 and not nf.cz2
    assert np.array_equal(nf.cnot, np.eye(4, dtype=np.uint8))
    assert not nf.to_circuit().gates


def test_single_cz():
    t = tableau_from_circuit(Circuit(2, [CZ(0, 1)]))
    nf = extract_normal_form(t)
    assert len(nf.cz1) + len(nf.cz2) == 1
    assert np.array_equal(nf.cnot, np.eye(2, dtype=np.uint8))
    assert tableau_from_circuit(nf.to_circuit()) == t


def test_layer_shape():
    nf = extract_normal_form(tableau_from_circuit(random_clifford_circuit(5, seed=2)))
    layers = nf.layers
    assert len(layers) == 7
    for k in (0, 2, 4, 6):
        assert not _entangling(layers[k])
    assert gf2.is_invertible(nf.cnot)


@pytest.mark.parametrize("n", range(1, 7))
def test_round_trip_random(n, base_seed):
    rng = np.random.default_rng(base_seed + n)
    for _ in range(1000 // 6 + 1):
        t = random_tableau(n, rng)
        assert tableau_from_circuit(extract_normal_form(t).to_circuit()) == t


def test_hsh_equivalent_normal_form():
    c = Circuit(1, [H(0), S(0), H(0)])
    t = tableau_from_circuit(c)
    assert tableau_from_circuit(extract_normal_form(t).to_circuit()) == t
