"""Symplectic vectors over F_2/F_3 and the stabilizer-code machinery on them.

A Pauli operator (up to phase) is a vector (x|z) in F_p^{2n}.  Two operators
commute exactly when their symplectic product x.z' + x'.z vanishes mod p, so
stabilizer groups are totally singular subspaces and all code-level questions
(rank, duals, logicals, distance) reduce to exact linear algebra plus
weight-ordered enumeration.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import gf
from ._kernels import backend_name, kernels
from .errors import BudgetError, DimensionError, VerificationError

# Non-identity single-qudit digits (x, z), shared enumeration order for all
# fields: lexicographic, so for p=2 it reads Z < X < Y.
def _nonzero_digits(p: int) -> tuple[tuple[int, int], ...]:
    return tuple((a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0))


# Weight-class enumeration uses only the three depolarizing classes for p=2;
# p=3 distance scans must cover all p^2-1 displacements per position.
DEFAULT_ENUM_BUDGET = 2**32


@dataclass(frozen=True)
class PauliVector:
    """A symplectic vector (x|z) over F_p^{2n}; immutable and hashable."""

    p: int
    x: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self):
        if self.p not in (2, 3):
            raise DimensionError(f"unsupported field order {self.p}")
        if len(self.x) != len(self.z) or not self.x:
            raise DimensionError("x and z halves must share a positive length")
        for d in itertools.chain(self.x, self.z):
            if not 0 <= d < self.p:
                raise DimensionError(f"digit {d} outside [0, {self.p})")

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def weight(self) -> int:
        return sum(1 for a, b in zip(self.x, self.z) if a or b)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, (a, b) in enumerate(zip(self.x, self.z)) if a or b)

    @classmethod
    def from_string(cls, text: str, p: int = 2) -> "PauliVector":
        """Parse the "x-digits|z-digits" wire format, e.g. "11000|00101"."""
        parts = text.strip().split("|")
        if len(parts) != 2:
            raise DimensionError(f"expected 'x|z', got {text!r}")
        xs, zs = parts
        if len(xs) != len(zs):
            raise DimensionError(f"halves of {text!r} have different lengths")
        try:
            x = tuple(int(c) for c in xs)
            z = tuple(int(c) for c in zs)
        except ValueError as exc:
            raise DimensionError(f"non-digit in {text!r}") from exc
        return cls(p, x, z)

    def to_string(self) -> str:
        return "".join(map(str, self.x)) + "|" + "".join(map(str, self.z))

    def __str__(self) -> str:
        return self.to_string()

    def add(self, other: "PauliVector") -> "PauliVector":
        _check_compatible(self, other)
        return PauliVector(
            self.p,
            tuple((a + b) % self.p for a, b in zip(self.x, other.x)),
            tuple((a + b) % self.p for a, b in zip(self.z, other.z)),
        )

    def sub(self, other: "PauliVector") -> "PauliVector":
        _check_compatible(self, other)
        return PauliVector(
            self.p,
            tuple((a - b) % self.p for a, b in zip(self.x, other.x)),
            tuple((a - b) % self.p for a, b in zip(self.z, other.z)),
        )

    def scaled(self, c: int) -> "PauliVector":
        c %= self.p
        return PauliVector(
            self.p,
            tuple((c * a) % self.p for a in self.x),
            tuple((c * a) % self.p for a in self.z),
        )

    def cyclic_shift(self, t: int) -> "PauliVector":
        """Shift both halves simultaneously by t positions."""
        n = self.n
        return PauliVector(
            self.p,
            tuple(self.x[(j - t) % n] for j in range(n)),
            tuple(self.z[(j - t) % n] for j in range(n)),
        )

    def as_row(self) -> np.ndarray:
        return np.array(self.x + self.z, dtype=np.int64)

    @classmethod
    def from_row(cls, row, p: int) -> "PauliVector":
        row = [int(v) % p for v in row]
        if len(row) % 2:
            raise DimensionError("row length must be even")
        n = len(row) // 2
        return cls(p, tuple(row[:n]), tuple(row[n:]))

    def packed(self) -> tuple[int, int]:
        """Bit-packed halves; p=2 only (one bit per qubit)."""
        if self.p != 2:
            raise DimensionError("bit packing is defined for p=2 only")
        ex = sum(b << j for j, b in enumerate(self.x))
        ez = sum(b << j for j, b in enumerate(self.z))
        return ex, ez

    @classmethod
    def from_packed(cls, ex: int, ez: int, n: int) -> "PauliVector":
        return cls(2, tuple((ex >> j) & 1 for j in range(n)), tuple((ez >> j) & 1 for j in range(n)))


def _check_compatible(u: PauliVector, v: PauliVector) -> None:
    if u.p != v.p:
        raise DimensionError(f"field mismatch: {u.p} vs {v.p}")
    if u.n != v.n:
        raise DimensionError(f"length mismatch: {u.n} vs {v.n}")


def symplectic_product(u: PauliVector, v: PauliVector) -> int:
    """(u, v) = u.x . v.z + v.x . u.z mod p; zero iff the Paulis commute."""
    _check_compatible(u, v)
    total = 0
    for a, b, c, d in zip(u.x, u.z, v.x, v.z):
        total += a * d + c * b
    return total % u.p


def is_totally_singular(gens: list[PauliVector]) -> tuple[bool, tuple[int, int] | None]:
    """Check all pairwise (and self) symplectic products vanish.

    Returns (True, None) or (False, (i, j)) with the first offending pair in
    row order; self-products matter for p=3 where (v, v) = 2 x.z.
    """
    if not gens:
        raise DimensionError("empty generator list")
    for i, g in enumerate(gens):
        _check_compatible(gens[0], g)
        for j in range(i, len(gens)):
            if symplectic_product(g, gens[j]) != 0:
                return False, (i, j)
    return True, None


@dataclass(frozen=True)
class DistanceInfo:
    """Exact distance, or a certified floor together with any claimed value."""

    exact: int | None = None
    lower_bound: int | None = None
    claimed: int | None = None

    def label(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        parts = []
        if self.lower_bound is not None:
            parts.append(f">={self.lower_bound}")
        if self.claimed is not None:
            parts.append(f"claimed {self.claimed}")
        return " ".join(parts) if parts else "unknown"

    def best(self) -> int | None:
        """Value used for t = floor((d-1)/2): exact if known, else claimed."""
        return self.exact if self.exact is not None else self.claimed


@dataclass(frozen=True)
class StabilizerCode:
    name: str
    p: int
    n: int
    generators: tuple[PauliVector, ...]
    rank: int
    k: int
    logicals: tuple[tuple[PauliVector, PauliVector], ...]
    distance: DistanceInfo = field(default_factory=DistanceInfo)
    verified: bool = True

    @classmethod
    def from_generators(
        cls,
        name: str,
        generators,
        distance: DistanceInfo | None = None,
    ) -> "StabilizerCode":
        """Verify and assemble a code: total singularity, rank, logical pairs.

        Raises VerificationError naming the first offending generator pair if
        the set is not totally singular.
        """
        gens = tuple(generators)
        ok, pair = is_totally_singular(list(gens))
        if not ok:
            raise VerificationError(
                f"{name}: generators {pair[0]} and {pair[1]} have nonzero symplectic product"
            )
        p, n = gens[0].p, gens[0].n
        stacked = np.array([g.as_row() for g in gens], dtype=np.int64)
        r = gf.rank(stacked, p)
        k = n - r
        pairs = _logical_pairs(stacked, p, n) if k > 0 else ()
        code = cls(
            name=name,
            p=p,
            n=n,
            generators=gens,
            rank=r,
            k=k,
            logicals=tuple(pairs),
            distance=distance or DistanceInfo(),
        )
        _validate_logicals(code)
        return code

    def with_distance(self, info: DistanceInfo) -> "StabilizerCode":
        return replace(self, distance=info)

    @property
    def params(self) -> str:
        return f"[[{self.n},{self.k},{self.distance.label()}]]" + ("_3" if self.p == 3 else "")

    @property
    def checks(self) -> tuple[PauliVector, ...]:
        """An independent generating subset, greedily chosen in row order.

        Syndromes are taken against these rows so they always have length
        ``rank`` even if the stored generator list is redundant.
        """
        if len(self.generators) == self.rank:
            return self.generators
        chosen: list[PauliVector] = []
        rows: list[np.ndarray] = []
        for g in self.generators:
            candidate = rows + [g.as_row()]
            if gf.rank(np.array(candidate), self.p) == len(candidate):
                chosen.append(g)
                rows.append(g.as_row())
            if len(chosen) == self.rank:
                break
        return tuple(chosen)

    def stacked(self) -> np.ndarray:
        return np.array([g.as_row() for g in self.generators], dtype=np.int64)

    def correctable_weight(self) -> int | None:
        d = self.distance.best()
        return None if d is None else (d - 1) // 2


@functools.lru_cache(maxsize=64)
def generator_rref(code: StabilizerCode) -> tuple[np.ndarray, tuple[int, ...]]:
    reduced, pivots = gf.rref(code.stacked(), code.p)
    return reduced, tuple(pivots)


def in_stabilizer_span(code: StabilizerCode, v: PauliVector) -> bool:
    reduced, pivots = generator_rref(code)
    return gf.in_rowspace(reduced, list(pivots), v.as_row(), code.p)


def _dual_constraint_matrix(gens: np.ndarray, n: int) -> np.ndarray:
    # (g, v) = g_x . v_z + v_x . g_z, so the constraint row for g is (g_z | g_x).
    return np.hstack([gens[:, n:], gens[:, :n]])


def symplectic_dual(code: StabilizerCode) -> list[PauliVector]:
    """Basis of N(S): all vectors commuting with every generator.

    Dimension is 2n - rank and the span contains the generators themselves.
    """
    if not code.verified:
        raise VerificationError("symplectic_dual requires a verified code")
    constraints = _dual_constraint_matrix(code.stacked(), code.n)
    basis = gf.nullspace(constraints, code.p)
    return [PauliVector.from_row(row, code.p) for row in basis]


def _symp_row(u: np.ndarray, v: np.ndarray, p: int, n: int) -> int:
    return int(u[:n] @ v[n:] + v[:n] @ u[n:]) % p


def _logical_pairs(stacked: np.ndarray, p: int, n: int) -> list[tuple[PauliVector, PauliVector]]:
    """Extract k hyperbolic pairs from N(S) by symplectic Gram-Schmidt.

    Candidates are the nullspace basis of the commutation constraints; the
    radical of the restricted form is the stabilizer span itself, so vectors
    that pair with nothing are discarded and exactly k pairs survive.
    """
    candidates = [row.copy() for row in gf.nullspace(_dual_constraint_matrix(stacked, n), p)]
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    while candidates:
        u = candidates.pop(0)
        partner = None
        for j, w in enumerate(candidates):
            if _symp_row(u, w, p, n):
                partner = j
                break
        if partner is None:
            continue  # radical direction: a stabilizer element
        w = candidates.pop(partner)
        u, w = _normalize_pair(u, w, p, n)
        a, b = _symp_row(u, u, p, n), _symp_row(w, w, p, n)
        det = (a * b - 1) % p
        for idx, v in enumerate(candidates):
            s1, s2 = _symp_row(v, u, p, n), _symp_row(v, w, p, n)
            # Solve (lam*a + mu = s1, lam + mu*b = s2) so v - lam*u - mu*w
            # pairs to zero with both; for p=2 this is the classic sweep.
            lam = ((s1 * b - s2) * gf.inv_mod(det, p)) % p
            mu = ((s2 * a - s1) * gf.inv_mod(det, p)) % p
            candidates[idx] = (v - lam * u - mu * w) % p
        pairs.append((u, w))
    return [
        (PauliVector.from_row(u, p), PauliVector.from_row(w, p)) for u, w in pairs
    ]


def _normalize_pair(u: np.ndarray, w: np.ndarray, p: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Scale (and, for p=3, nudge) a pairing so (u,w)=1 and the sweep system
    stays invertible: needs (u,u)(w,w) != 1 mod p, automatic when p=2."""
    s = _symp_row(u, w, p, n)
    w = (w * gf.inv_mod(s, p)) % p
    if p == 2:
        return u, w
    for su in range(p):
        for sw in range(p):
            u2 = (u + su * w) % p
            w2 = (w + sw * u) % p
            if _symp_row(u2, w2, p, n) == 0:
                continue
            w2 = (w2 * gf.inv_mod(_symp_row(u2, w2, p, n), p)) % p
            if (_symp_row(u2, u2, p, n) * _symp_row(w2, w2, p, n) - 1) % p:
                return u2, w2
    raise VerificationError("could not normalize a logical pair over F_3")


def _validate_logicals(code: StabilizerCode) -> None:
    for i, (lx, lz) in enumerate(code.logicals):
        if symplectic_product(lx, lz) == 0:
            raise VerificationError(f"{code.name}: logical pair {i} fails to anti-commute")
        for g in code.generators:
            if symplectic_product(lx, g) or symplectic_product(lz, g):
                raise VerificationError(f"{code.name}: logical pair {i} hits a generator")
        if in_stabilizer_span(code, lx) or in_stabilizer_span(code, lz):
            raise VerificationError(f"{code.name}: logical pair {i} lies in the stabilizer span")
        for j, (ox, oz) in enumerate(code.logicals):
            if j == i:
                continue
            if symplectic_product(lx, ox) or symplectic_product(lx, oz):
                raise VerificationError(f"{code.name}: logical pairs {i},{j} not symplectically disjoint")


def logical_representatives(code: StabilizerCode) -> tuple[tuple[PauliVector, PauliVector], ...]:
    """The stored anti-commuting pairs; empty (and flagged via k=0) for k=0."""
    return code.logicals


# ---------------------------------------------------------------------------
# Weight-ordered enumeration


def enumeration_count(n: int, w_max: int, p: int = 2) -> int:
    """Number of patterns scanned by a weight-1..w_max pass."""
    per_site = 3 if p == 2 else p * p - 1
    return sum(math.comb(n, w) * per_site**w for w in range(1, w_max + 1))


@dataclass(frozen=True)
class DistanceScan:
    """Outcome of a bounded minimum-weight logical search."""

    exact: int | None = None
    no_logical_below: int | None = None
    witness: PauliVector | None = None
    patterns: int = 0

    def to_info(self, claimed: int | None = None) -> DistanceInfo:
        if self.exact is not None:
            return DistanceInfo(exact=self.exact, claimed=claimed)
        return DistanceInfo(lower_bound=self.no_logical_below, claimed=claimed)


def syndrome_tables(code: StabilizerCode) -> tuple[np.ndarray, np.ndarray]:
    """Per-qubit packed syndromes for p=2: bit i of syn_x[j] is (X_j, check_i)."""
    if code.p != 2:
        raise DimensionError("packed syndrome tables are p=2 only")
    if code.rank > 63 or code.n > 63:
        raise DimensionError("packed path supports n, rank <= 63")
    checks = code.checks
    syn_x = np.zeros(code.n, dtype=np.uint64)
    syn_z = np.zeros(code.n, dtype=np.uint64)
    for i, g in enumerate(checks):
        for j in range(code.n):
            if g.z[j]:
                syn_x[j] |= np.uint64(1 << i)
            if g.x[j]:
                syn_z[j] |= np.uint64(1 << i)
    return syn_x, syn_z


def min_weight_logical(
    code: StabilizerCode,
    w_max: int,
    *,
    budget: int = DEFAULT_ENUM_BUDGET,
    force: bool = False,
) -> DistanceScan:
    """Exhaustive minimum-weight search for a logical operator.

    Scans every Pauli pattern of weight 1..w_max in ascending weight
    (lexicographic within a weight class: support set first, then per-site
    digits), and returns the first weight carrying a vector that commutes
    with all generators but lies outside their span.  If no such vector
    exists the result certifies d > w_max.
    """
    if w_max < 1:
        raise DimensionError("w_max must be >= 1")
    total = enumeration_count(code.n, w_max, code.p)
    if total > budget and not force:
        raise BudgetError(
            f"distance scan needs {total} patterns (> budget {budget}); pass force=True"
        )
    reduced, pivots = generator_rref(code)
    checked = 0
    if code.p == 2:
        syn_x, syn_z = syndrome_tables(code)
        for w in range(1, w_max + 1):
            checked += math.comb(code.n, w) * 3**w
            ex_hits, ez_hits = kernels.zero_syndrome_hits(syn_x, syn_z, code.n, w)
            for ex, ez in zip(ex_hits, ez_hits):
                v = PauliVector.from_packed(int(ex), int(ez), code.n)
                if not gf.in_rowspace(reduced, list(pivots), v.as_row(), 2):
                    return DistanceScan(exact=w, witness=v, patterns=checked)
    else:
        digits = _nonzero_digits(code.p)
        for w in range(1, w_max + 1):
            for support in itertools.combinations(range(code.n), w):
                for assignment in itertools.product(digits, repeat=w):
                    checked += 1
                    x = [0] * code.n
                    z = [0] * code.n
                    for j, (a, b) in zip(support, assignment):
                        x[j], z[j] = a, b
                    v = PauliVector(code.p, tuple(x), tuple(z))
                    if any(symplectic_product(v, g) for g in code.generators):
                        continue
                    if not gf.in_rowspace(reduced, list(pivots), v.as_row(), code.p):
                        return DistanceScan(exact=w, witness=v, patterns=checked)
    return DistanceScan(no_logical_below=w_max + 1, patterns=checked)


def kernel_backend() -> str:
    """Which kernel implementation got selected at import ("compiled"/"fallback")."""
    return backend_name
