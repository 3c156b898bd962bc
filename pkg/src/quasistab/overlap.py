"""The quasi-orthogonal relaxation layer.

Logical codewords are allowed a controlled overlap <0_L|1_L> = eps e^{i phi}.
This module carries everything that depends on that relaxation: state
normalization, the threshold-based effective distance on deformed bases,
the displacement calculus of the scaled error map, the scaled-Clifford
membership test, and the two-term analytic model for p_L.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf
from ._kernels import kernels
from .dense import DENSE_QUBIT_LIMIT, codeword_basis, pauli_matrix_elements
from .errors import BudgetError, DegenerateStateError, DimensionError, DomainError
from .symplectic import (
    PauliVector,
    StabilizerCode,
    generator_rref,
    syndrome_tables,
)

DEFAULT_EPSILON = 0.05
DEFAULT_PHI = 0.0


@dataclass(frozen=True)
class OverlapSpec:
    """Overlap magnitude and phase of adjacent logical states."""

    epsilon: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 1.0:
            raise DomainError(f"epsilon {self.epsilon} outside [0, 1)")
        object.__setattr__(self, "phi", self.phi % (2 * math.pi))

    @property
    def value(self) -> complex:
        return self.epsilon * cmath.exp(1j * self.phi)


@dataclass(frozen=True)
class QuasiModelParams:
    """Coefficients of p_L = c_lead p^(t+1) + c_leak eps^2 p^t."""

    t: int
    c_lead: float
    c_leak: float
    epsilon: float

    def __post_init__(self):
        if self.t < 0:
            raise DomainError("t must be a non-negative integer")
        for name in ("c_lead", "c_leak"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"{name} must be finite and non-negative")


@dataclass(frozen=True)
class DeformationD:
    """Positive diagonal scaling D = diag(lambda_1, ..., lambda_m)."""

    diag: tuple

    def __post_init__(self):
        if not self.diag:
            raise DomainError("empty deformation")
        if any(v <= 0 for v in self.diag):
            raise DomainError("deformation diagonal must be strictly positive")

    @property
    def dimension(self) -> int:
        return len(self.diag)


def normalization_factor(alpha: complex, beta: complex, ov: OverlapSpec) -> float:
    """Norm of alpha|0_L> + beta|1_L> under the prescribed overlap.

    Collapses to the orthogonal sqrt(|a|^2 + |b|^2) as epsilon -> 0.
    """
    if alpha == 0 and beta == 0:
        raise DomainError("(alpha, beta) must not both vanish")
    radicand = (
        abs(alpha) ** 2
        + abs(beta) ** 2
        + 2.0 * (alpha.conjugate() * beta * ov.value).real
    )
    if radicand <= 0.0:
        raise DegenerateStateError(
            f"state degenerates: |a|^2+|b|^2+2Re(a*b eps e^(i phi)) = {radicand}"
        )
    return math.sqrt(radicand)


def deformed_basis_transform(k_states: int, ov: OverlapSpec) -> np.ndarray:
    """Column mixer C with C^H C equal to the target Gram.

    The Gram puts eps e^{i phi} between adjacent states (1 on the diagonal).
    A symmetric blend of neighbours cannot realize a complex overlap, so the
    basis comes from the Cholesky factor instead; any basis with this Gram
    is equivalent for the matrix-element norms below.
    """
    gram = np.eye(k_states, dtype=np.complex128)
    for i in range(k_states - 1):
        gram[i, i + 1] = ov.value
        gram[i + 1, i] = np.conj(ov.value)
    try:
        lower = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise DegenerateStateError(f"overlap Gram not positive definite: {exc}") from exc
    return lower.conj().T


def operator_norm(m: np.ndarray, *, iterations: int = 200, tol: float = 1e-10) -> float:
    """Largest singular value by power iteration on M^H M.

    Fixed iteration budget and all-ones start keep the result deterministic.
    """
    mm = m.conj().T @ m
    dim = mm.shape[0]
    v = np.ones(dim, dtype=np.complex128) / math.sqrt(dim)
    lam = 0.0
    for _ in range(iterations):
        w = mm @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        new_lam = float(np.real(v.conj() @ (mm @ v)))
        if abs(new_lam - lam) < tol:
            lam = new_lam
            break
        lam = new_lam
    return math.sqrt(max(lam, 0.0))


def effective_distance(
    code: StabilizerCode,
    tau: float,
    ov: OverlapSpec,
    *,
    w_stop: int | None = None,
) -> int:
    """Smallest weight whose projected action on the deformed code space
    reaches the threshold tau.

    Every Pauli with a nonzero syndrome maps the code space into an
    orthogonal sector and contributes exactly zero, so only commuting
    patterns (outside the stabilizer group) are scanned, by ascending
    weight; the first weight where the matrix-element block between the
    deformed logical states has largest singular value >= tau wins.
    """
    if code.p != 2:
        raise DomainError("effective distance needs a binary code")
    if code.n > DENSE_QUBIT_LIMIT:
        raise BudgetError(f"dense-state budget is n <= {DENSE_QUBIT_LIMIT}")
    if code.k < 1:
        raise DomainError("effective distance needs k >= 1")
    if tau <= 0.0:
        raise DomainError("tau must be positive")
    states = codeword_basis(code) @ deformed_basis_transform(1 << code.k, ov)
    syn_x, syn_z = syndrome_tables(code)
    reduced, pivots = generator_rref(code)
    limit = w_stop if w_stop is not None else code.n
    for w in range(1, limit + 1):
        ex_hits, ez_hits = kernels.zero_syndrome_hits(syn_x, syn_z, code.n, w)
        for ex, ez in zip(ex_hits, ez_hits):
            vec = PauliVector.from_packed(int(ex), int(ez), code.n)
            if gf.in_rowspace(reduced, list(pivots), vec.as_row(), 2):
                continue  # stabilizer element, excluded by definition
            m = pauli_matrix_elements(states, int(ex), int(ez))
            if operator_norm(m) >= tau:
                return w
    raise DomainError(f"no operator of weight <= {limit} reaches tau = {tau}")


def _exact_sqrt(value: Fraction) -> Fraction | None:
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def displacement_q_delta(v, a, b, deform: DeformationD):
    """Change of the quadratic form under the scaled displacement (a, b):

        Q(E(a,b)v) - Q(v) = 2 (D^{1/2} v) . a - 2 (D^{-1/2} v) . b

    Rational inputs with perfect-square scalings evaluate exactly.
    """
    if not (len(v) == len(a) == len(b) == deform.dimension):
        raise DimensionError("v, a, b and the deformation must share a dimension")
    exact = all(isinstance(t, (int, Fraction)) for t in (*v, *a, *b))
    roots = []
    for lam in deform.diag:
        root = _exact_sqrt(Fraction(lam)) if exact and isinstance(lam, (int, Fraction)) else None
        roots.append(root if root is not None else math.sqrt(float(lam)))
        if root is None:
            exact = False
    if exact:
        acc = Fraction(0)
        for vi, ai, bi, r in zip(v, a, b, roots):
            acc += 2 * (r * Fraction(vi)) * Fraction(ai) - 2 * (Fraction(vi) / r) * Fraction(bi)
        return acc
    acc = 0.0
    for vi, ai, bi, lam in zip(v, a, b, deform.diag):
        r = math.sqrt(float(lam))
        acc += 2.0 * r * float(vi) * float(ai) - 2.0 * (float(vi) / r) * float(bi)
    return acc


def is_quasi_clifford(g, deform: DeformationD, *, rtol: float = 1e-12) -> bool:
    """Membership in the scaled symplectic group: g^T D g = D."""
    garr = np.asarray(g, dtype=np.float64)
    if garr.ndim != 2 or garr.shape[0] != garr.shape[1]:
        raise DimensionError("g must be square")
    if garr.shape[0] != deform.dimension:
        raise DimensionError("g and the deformation must share a dimension")
    d = np.diag([float(v) for v in deform.diag])
    return bool(np.allclose(garr.T @ d @ garr, d, rtol=rtol, atol=rtol))


def pl_quasi(p: float, params: QuasiModelParams) -> float:
    """Two-term logical error model: c_lead p^(t+1) + c_leak eps^2 p^t.

    Higher-order terms (eps^2 p^(t+1), p^(t+2)) are dropped.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"error rate {p} outside [0, 1]")
    return params.c_lead * p ** (params.t + 1) + params.c_leak * params.epsilon**2 * p**params.t


def pl_leading(p: float, t: int, c_lead: float) -> float:
    """Orthogonal leading-order model c_lead p^(t+1)."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"error rate {p} outside [0, 1]")
    return c_lead * p ** (t + 1)


def model_params_from_census(code: StabilizerCode, census, epsilon: float) -> QuasiModelParams:
    """Model coefficients from the exact failure census.

    c_lead comes from the weight-(t+1) failure count scaled by 3^(t+1) (the
    per-pattern probability is (p/3)^w); c_leak defaults to the weight-t
    harmful count, which is zero for a full table - override in config for
    leakage studies.
    """
    t = code.correctable_weight()
    if t is None:
        raise DomainError("code needs a known (or claimed) distance")
    lead = census.failures(t + 1) / 3.0 ** (t + 1) if t + 1 in census.counts else 0.0
    leak = census.failures(t) / 3.0**t if t in census.counts else 0.0
    return QuasiModelParams(t=t, c_lead=lead, c_leak=leak, epsilon=epsilon)
