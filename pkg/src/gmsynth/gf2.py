"""Dense linear algebra over GF(2) on uint8 numpy arrays."""

from __future__ import annotations

import numpy as np


class SingularMatrixError(ValueError):
    pass


def asgf2(a) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) & 1).astype(np.uint8)


def matmul(a, b) -> np.ndarray:
    return ((np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) & 1).astype(np.uint8)


def row_reduce(a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = asgf2(a).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hit = np.flatnonzero(m[r:, c])
        if hit.size == 0:
            continue
        p = r + hit[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        mask = m[:, c].astype(bool)
        mask[r] = False
        m[mask] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    return len(row_reduce(a)[1])


def inv(a) -> np.ndarray:
    a = asgf2(a)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix required")
    red, piv = row_reduce(np.hstack([a, np.eye(n, dtype=np.uint8)]))
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular over GF(2)")
    return red[:, n:].copy()


def is_invertible(a) -> bool:
    a = asgf2(a)
    return a.shape[0] == a.shape[1] and rank(a) == a.shape[0]


def plu(a) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Factor ``a = P L U`` with ``L`` unit lower and ``U`` unit upper triangular.

    ``P`` is returned as ``perm`` with ``(P y)[i] = y[perm[i]]``.
    """
    m = asgf2(a).copy()
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("square matrix required")
    order = list(range(n))
    low = np.eye(n, dtype=np.uint8)
    for k in range(n):
        hit = np.flatnonzero(m[k:, k])
        if hit.size == 0:
            raise SingularMatrixError("matrix is singular over GF(2)")
        p = k + hit[0]
        if p != k:
            m[[k, p]] = m[[p, k]]
            low[[k, p], :k] = low[[p, k], :k]
            order[k], order[p] = order[p], order[k]
        below = k + 1 + np.flatnonzero(m[k + 1:, k])
        low[below, k] = 1
        m[below] ^= m[k]
    # rows of the original matrix were permuted: a[order] = L U
    perm = [0] * n
    for i, o in enumerate(order):
        perm[o] = i
    return perm, low, m


def permutation_matrix(perm) -> np.ndarray:
    n = len(perm)
    p = np.zeros((n, n), dtype=np.uint8)
    p[np.arange(n), list(perm)] = 1
    return p


def random_invertible(n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        a = rng.integers(0, 2, size=(n, n)).astype(np.uint8)
        if is_invertible(a):
            return a


def cnot_gates(a) -> list[tuple[int, int]]:
    """(control, target) CNOT list whose linear map ``x -> a x`` equals ``a``.

    Plain Gauss-Jordan elimination; a zero pivot is fixed by adding a lower row.
    """
    m = asgf2(a).copy()
    n = m.shape[0]
    ops: list[tuple[int, int]] = []

    def add(c, t):
        m[t] ^= m[c]
        ops.append((c, t))

    for k in range(n):
        if not m[k, k]:
            hit = np.flatnonzero(m[k + 1:, k])
            if hit.size == 0:
                raise SingularMatrixError("matrix is singular over GF(2)")
            add(k + 1 + hit[0], k)
        for r in np.flatnonzero(m[:, k]):
            if r != k:
                add(k, int(r))
    return ops[::-1]
