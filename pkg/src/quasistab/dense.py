"""Dense state-vector support for small binary codes (n <= 13).

Codewords are recovered from the stabilizer group projector
P = 2^-r sum_g g, with each generator made Hermitian by its i^(x.z) phase;
Pauli matrix elements then reduce to signed permutations of amplitudes.
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetError, DimensionError
from .symplectic import StabilizerCode

_QUARTER = np.array([1, 1j, -1, -1j], dtype=np.complex128)

DENSE_QUBIT_LIMIT = 13


def _parity64(v: np.ndarray) -> np.ndarray:
    return np.bitwise_count(v) & np.uint64(1)


def stabilizer_group(code: StabilizerCode) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All 2^rank group elements as (quarter-phase, x, z) arrays.

    Each generator enters as i^(x.z) X^x Z^z so that it is Hermitian; the
    product rule tracks the extra (-1)^(z1.x2) reordering sign.
    """
    if code.p != 2:
        raise DimensionError("dense states are implemented for p=2 only")
    qs = np.array([0], dtype=np.int64)
    xs = np.array([0], dtype=np.uint64)
    zs = np.array([0], dtype=np.uint64)
    for g in code.checks:
        gx, gz = g.packed()
        gq = bin(gx & gz).count("1") % 4
        cross = _parity64(zs & np.uint64(gx)).astype(np.int64)
        qs = np.concatenate([qs, (qs + gq + 2 * cross) % 4])
        xs = np.concatenate([xs, xs ^ np.uint64(gx)])
        zs = np.concatenate([zs, zs ^ np.uint64(gz)])
    return qs, xs, zs


def codeword_basis(code: StabilizerCode) -> np.ndarray:
    """Orthonormal basis of the +1 eigenspace, shape (2^n, 2^k).

    Deterministic: computational basis states are projected in index order
    and kept whenever they add a new direction.
    """
    if code.n > DENSE_QUBIT_LIMIT:
        raise BudgetError(f"dense basis limited to n <= {DENSE_QUBIT_LIMIT}")
    qs, xs, zs = stabilizer_group(code)
    dim = 1 << code.n
    want = 1 << code.k
    basis = np.zeros((dim, want), dtype=np.complex128)
    found = 0
    for seed in range(dim):
        phases = _QUARTER[qs] * (1.0 - 2.0 * _parity64(zs & np.uint64(seed)).astype(np.float64))
        vec = np.zeros(dim, dtype=np.complex128)
        np.add.at(vec, (xs ^ np.uint64(seed)).astype(np.int64), phases)
        for j in range(found):
            vec -= (basis[:, j].conj() @ vec) * basis[:, j]
        norm = np.linalg.norm(vec)
        if norm > 1e-9:
            basis[:, found] = vec / norm
            found += 1
            if found == want:
                return basis
    raise DimensionError(f"projector produced only {found} of {want} codewords")


def apply_pauli(states: np.ndarray, x: int, z: int) -> np.ndarray:
    """X^x Z^z acting columnwise, up to the (dropped) global i^(x.z) phase."""
    dim = states.shape[0]
    idx = np.arange(dim, dtype=np.uint64)
    src = (idx ^ np.uint64(x)).astype(np.int64)
    signs = 1.0 - 2.0 * _parity64(idx & np.uint64(z)).astype(np.float64)
    # <c|E|b'> = (-1)^(z.(c^x)) delta_{b', c^x}
    return signs[src, None] * states[src, :]


def pauli_matrix_elements(states: np.ndarray, x: int, z: int) -> np.ndarray:
    """Gram-style block M[a, b] = <s_a| X^x Z^z |s_b>."""
    return states.conj().T @ apply_pauli(states, x, z)
