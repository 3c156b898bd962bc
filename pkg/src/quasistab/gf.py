"""Exact dense linear algebra over the prime fields F_2 and F_3.

Everything works on plain numpy integer arrays with entries reduced mod p;
matrices stay small (at most a few hundred rows) so exact Gaussian
elimination is always affordable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

SUPPORTED_FIELDS = (2, 3)


def _check_field(p: int) -> None:
    if p not in SUPPORTED_FIELDS:
        raise DimensionError(f"unsupported field order {p}; expected one of {SUPPORTED_FIELDS}")


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a nonzero element of F_p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class GFMatrix:
    """An exact matrix over F_p, entries stored row-major in [0, p)."""

    p: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_field(self.p)
        if not self.entries or not self.entries[0]:
            raise DimensionError("matrix dimensions must be positive")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise DimensionError("ragged matrix")
            for e in row:
                if not 0 <= e < self.p:
                    raise DimensionError(f"entry {e} outside [0, {self.p})")

    @classmethod
    def from_array(cls, arr, p: int) -> "GFMatrix":
        a = np.asarray(arr, dtype=np.int64) % p
        return cls(p, tuple(tuple(int(v) for v in row) for row in a))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form mod p.

    Returns the nonzero rows of the reduced matrix together with the pivot
    column of each row.
    """
    _check_field(p)
    m = np.array(mat, dtype=np.int64) % p
    if m.ndim != 2:
        raise DimensionError("expected a 2-d matrix")
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        hit = None
        for i in range(r, nrows):
            if m[i, c]:
                hit = i
                break
        if hit is None:
            continue
        if hit != r:
            m[[r, hit]] = m[[hit, r]]
        m[r] = (m[r] * inv_mod(int(m[r, c]), p)) % p
        for i in range(nrows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m[:r].copy(), pivots


def rank(mat, p: int) -> int:
    """Row rank of an integer matrix mod p."""
    reduced, _ = rref(mat, p)
    return reduced.shape[0]


def rank_mod_p(m: GFMatrix) -> int:
    """Rank of a GFMatrix (exact elimination over F_p)."""
    return rank(m.as_array(), m.p)


def reduce_vector(reduced: np.ndarray, pivots: list[int], v, p: int) -> np.ndarray:
    """Residual of v after elimination against an RREF basis."""
    out = np.array(v, dtype=np.int64) % p
    if reduced.shape[0] and out.shape[0] != reduced.shape[1]:
        raise DimensionError("vector length does not match basis width")
    for row, c in zip(reduced, pivots):
        if out[c]:
            out = (out - out[c] * row) % p
    return out


def in_rowspace(reduced: np.ndarray, pivots: list[int], v, p: int) -> bool:
    return not reduce_vector(reduced, pivots, v, p).any()


def nullspace(mat, p: int) -> np.ndarray:
    """Basis (as rows) of {v : mat @ v = 0 mod p}."""
    m = np.array(mat, dtype=np.int64) % p
    reduced, pivots = rref(m, p)
    ncols = m.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row_idx, c in enumerate(pivots):
            basis[i, c] = (-reduced[row_idx, f]) % p
    return basis
