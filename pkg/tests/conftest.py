"""Independent dense oracles built from explicit Kronecker products."""

import os
from functools import reduce

import numpy as np
import pytest
from scipy.linalg import expm

I2 = np.eye(2, dtype=complex)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PY = np.array([[0, -1j], [1j, 0]], dtype=complex)
PZ = np.diag([1, -1]).astype(complex)
HAD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
SGATE = np.diag([1, 1j])
PAULI = {"I": I2, "X": PX, "Y": PY, "Z": PZ}


def kron_all(mats):
    return reduce(np.kron, mats)


def embed(n, ops):
    """Tensor product with ``ops[q]`` on qubit q (qubit 0 most significant)."""
    return kron_all([ops.get(q, I2) for q in range(n)])


def pauli_matrix(letters, sign=1):
    return sign * kron_all([PAULI[c] for c in letters])


def pauli_rotation(letters, angle):
    return expm(-0.5j * angle * pauli_matrix(letters))


def zz(n, i, j, angle):
    letters = ["I"] * n
    letters[i] = letters[j] = "Z"
    return pauli_rotation("".join(letters), angle)


def cz_matrix(n, i, j):
    d = np.ones(2**n, dtype=complex)
    for b in range(2**n):
        if (b >> (n - 1 - i)) & 1 and (b >> (n - 1 - j)) & 1:
            d[b] = -1
    return np.diag(d)


def cnot_matrix(n, c, t):
    m = np.zeros((2**n, 2**n), dtype=complex)
    for b in range(2**n):
        out = b ^ (1 << (n - 1 - t)) if (b >> (n - 1 - c)) & 1 else b
        m[out, b] = 1
    return m


def same_up_to_phase(a, b, tol=1e-10):
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    ph = a[k] / b[k]
    return abs(abs(ph) - 1) < tol and np.max(np.abs(a - ph * b)) < tol


@pytest.fixture
def base_seed():
    return int(os.environ.get("GMSC_SEED", "0"))


@pytest.fixture
def rng(base_seed):
    return np.random.default_rng(base_seed)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
