"""Depolarizing-channel evaluation of verified stabilizer codes.

Three evaluation routes share one decoding semantics (minimum-weight coset
leaders, deterministic ties, identity on unseen syndromes):

* seeded Monte Carlo over a counter-based stream, reproducible for any
  worker partition;
* exact enumeration of weight classes, giving the logical channel and the
  harmful-pattern census;
* the closed-form union bound evaluated on top of that census.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from ._kernels import (
    CLS_SUCCESS,
    CLS_UNCORRECTED,
    CLS_X,
    CLS_Y,
    CLS_Z,
    draw_occupancy,
    draw_pauli,
    kernels,
)
from .errors import BudgetError, DimensionError, DomainError
from .symplectic import (
    PauliVector,
    StabilizerCode,
    symplectic_product,
    syndrome_tables,
)

DEFAULT_TABLE_BUDGET = 60_000_000
DEFAULT_EXACT_BUDGET = 70_000_000

_CLASS_NAMES_K1 = {CLS_UNCORRECTED: "uncorrected", CLS_X: "X", CLS_Y: "Y", CLS_Z: "Z"}
_CLASS_NAMES_KN = {CLS_UNCORRECTED: "uncorrected", CLS_X: "logical"}


@dataclass(frozen=True)
class NoiseConfig:
    p: float
    trials: int
    seed: int
    workers: int = 1

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"error rate {self.p} outside [0, 1]")
        if self.trials < 1:
            raise DomainError("trials must be >= 1")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 bits")


@dataclass(frozen=True)
class PauliStream:
    """Counter-based depolarizing stream: state is just (seed, worker)."""

    seed: int
    worker: int = 0

    def error(self, n: int, p: float, trial: int, field_p: int = 2) -> PauliVector:
        from ._kernels import stream_key

        key = stream_key(self.seed, self.worker)
        x = [0] * n
        z = [0] * n
        for j in range(n):
            if draw_occupancy(key, trial, n, j) < p:
                t = draw_pauli(key, trial, n, j)
                x[j] = 1 if t != 2 else 0
                z[j] = 1 if t != 0 else 0
        return PauliVector(field_p, tuple(x), tuple(z))


def sample_depolarizing(n: int, p: float, stream: PauliStream, trial: int = 0,
                        field_p: int = 2) -> PauliVector:
    """One draw of the i.i.d. depolarizing channel: X, Y, Z each w.p. p/3."""
    return stream.error(n, p, trial, field_p=field_p)


def syndrome(code: StabilizerCode, e: PauliVector) -> tuple[int, ...]:
    """Digit vector of length rank: component i is (check_i, e)."""
    if e.p != code.p or e.n != code.n:
        raise DimensionError("error does not match the code")
    return tuple(symplectic_product(g, e) for g in code.checks)


def pack_digits(digits, p: int) -> int:
    out = 0
    for d in reversed(tuple(digits)):
        out = out * p + int(d)
    return out


def unpack_digits(value: int, p: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(value % p)
        value //= p
    return tuple(out)


@dataclass
class DecoderTable:
    """Syndrome -> minimum-weight coset leader, built to weight w_max.

    Leaders are stored packed (base-p digits) in syndrome-sorted arrays;
    every leader's weight is <= w_max and ties were broken by enumeration
    order (supports lexicographic, then per-site digits).
    """

    code_name: str
    p: int
    n: int
    rank: int
    w_max: int
    syndromes: np.ndarray
    leader_x: np.ndarray
    leader_z: np.ndarray
    coverage: float

    def __len__(self) -> int:
        return len(self.syndromes)

    def lookup_packed(self, syn: int) -> tuple[int, int] | None:
        pos = int(np.searchsorted(self.syndromes, np.uint64(syn)))
        if pos >= len(self.syndromes) or int(self.syndromes[pos]) != syn:
            return None
        return int(self.leader_x[pos]), int(self.leader_z[pos])

    def leader(self, syn_digits) -> PauliVector | None:
        packed = self.lookup_packed(pack_digits(syn_digits, self.p))
        if packed is None:
            return None
        ex, ez = packed
        return PauliVector(
            self.p, unpack_digits(ex, self.p, self.n), unpack_digits(ez, self.p, self.n)
        )


def table_patterns(n: int, w_max: int, p: int) -> int:
    per_site = 3 if p == 2 else p * p - 1
    return sum(math.comb(n, w) * per_site**w for w in range(w_max + 1))


def build_decoder(code: StabilizerCode, w_max: int, *,
                  budget: int = DEFAULT_TABLE_BUDGET) -> DecoderTable:
    """Enumerate errors by ascending weight; first writer wins per syndrome."""
    if w_max < 0:
        raise DomainError("w_max must be >= 0")
    total = table_patterns(code.n, w_max, code.p)
    if total > budget:
        raise BudgetError(
            f"decoder table needs {total} patterns (> budget {budget}); lower w_max"
        )
    if code.p == 2:
        return _build_decoder_packed(code, w_max)
    return _build_decoder_generic(code, w_max)


def _build_decoder_packed(code: StabilizerCode, w_max: int) -> DecoderTable:
    syn_x, syn_z = syndrome_tables(code)
    blocks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = [
        (np.zeros(1, dtype=np.uint64), np.zeros(1, dtype=np.uint64), np.zeros(1, dtype=np.uint64))
    ]
    for w in range(1, w_max + 1):
        nsup = math.comb(code.n, w)
        step = max(1, (1 << 21) // 3**w)
        for start in range(0, nsup, step):
            cnt = min(step, nsup - start)
            syn, ex, ez = kernels.weight_class_syndromes(syn_x, syn_z, code.n, w, start, cnt)
            uniq, idx = np.unique(syn, return_index=True)
            idx = np.sort(idx)  # keep enumeration order among first occurrences
            blocks.append((syn[idx], ex[idx], ez[idx]))
    syn_all = np.concatenate([b[0] for b in blocks])
    ex_all = np.concatenate([b[1] for b in blocks])
    ez_all = np.concatenate([b[2] for b in blocks])
    # np.unique returns sorted values with the index of each first (i.e.
    # lowest-weight, earliest-enumerated) occurrence: exactly first-wins.
    uniq, first = np.unique(syn_all, return_index=True)
    return DecoderTable(
        code_name=code.name,
        p=2,
        n=code.n,
        rank=code.rank,
        w_max=w_max,
        syndromes=uniq,
        leader_x=ex_all[first],
        leader_z=ez_all[first],
        coverage=len(uniq) / float(2**code.rank),
    )


def _generic_weight_patterns(n: int, w: int, p: int):
    digits = tuple((a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0))
    for support in itertools.combinations(range(n), w):
        for assignment in itertools.product(digits, repeat=w):
            x = [0] * n
            z = [0] * n
            for j, (a, b) in zip(support, assignment):
                x[j], z[j] = a, b
            yield PauliVector(p, tuple(x), tuple(z))


def _build_decoder_generic(code: StabilizerCode, w_max: int) -> DecoderTable:
    seen: dict[int, tuple[int, int]] = {0: (0, 0)}
    for w in range(1, w_max + 1):
        for e in _generic_weight_patterns(code.n, w, code.p):
            key = pack_digits(syndrome(code, e), code.p)
            if key not in seen:
                seen[key] = (pack_digits(e.x, code.p), pack_digits(e.z, code.p))
    syn = np.array(sorted(seen), dtype=np.uint64)
    lx = np.array([seen[int(s)][0] for s in syn], dtype=np.uint64)
    lz = np.array([seen[int(s)][1] for s in syn], dtype=np.uint64)
    return DecoderTable(
        code_name=code.name,
        p=code.p,
        n=code.n,
        rank=code.rank,
        w_max=w_max,
        syndromes=syn,
        leader_x=lx,
        leader_z=lz,
        coverage=len(syn) / float(code.p**code.rank),
    )


def _logical_arrays(code: StabilizerCode):
    lx_x = np.array([pv.packed()[0] for pv, _ in code.logicals], dtype=np.uint64)
    lx_z = np.array([pv.packed()[1] for pv, _ in code.logicals], dtype=np.uint64)
    lz_x = np.array([pv.packed()[0] for _, pv in code.logicals], dtype=np.uint64)
    lz_z = np.array([pv.packed()[1] for _, pv in code.logicals], dtype=np.uint64)
    return lx_x, lx_z, lz_x, lz_z


def _check_arrays(code: StabilizerCode):
    gx = np.array([g.packed()[0] for g in code.checks], dtype=np.uint64)
    gz = np.array([g.packed()[1] for g in code.checks], dtype=np.uint64)
    return gx, gz


def run_trial(code: StabilizerCode, table: DecoderTable, e: PauliVector) -> str:
    """Decode one error: "success", "uncorrected", or its logical class.

    The residual e - leader always has zero syndrome, so success is exactly
    "all symplectic pairings with the logical representatives vanish".
    """
    key = pack_digits(syndrome(code, e), code.p)
    leader = table.leader(unpack_digits(key, code.p, code.rank))
    if leader is None:
        return "uncorrected"
    r = e.sub(leader)
    hits_x = hits_z = False
    for lx, lz in code.logicals:
        if symplectic_product(r, lz):
            hits_x = True
        if symplectic_product(r, lx):
            hits_z = True
    if not hits_x and not hits_z:
        return "success"
    if code.k > 1:
        return "logical"
    if hits_x and hits_z:
        return "Y"
    return "X" if hits_x else "Z"


def wilson_interval(failures: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """95% Wilson interval; the zero-failure case reports the rule of three."""
    if failures == 0:
        return 0.0, min(1.0, 3.0 / trials)
    ph = failures / trials
    zz = z * z
    denom = 1.0 + zz / trials
    centre = ph + zz / (2 * trials)
    half = z * math.sqrt(ph * (1.0 - ph) / trials + zz / (4.0 * trials * trials))
    return max(0.0, (centre - half) / denom), min(1.0, (centre + half) / denom)


@dataclass(frozen=True)
class SimResult:
    code: str
    p: float
    trials: int
    failures_total: int
    failures_by_class: dict[str, int]
    p_l: float
    ci_low: float
    ci_high: float
    seed: int
    workers: int
    wall_time: float = 0.0


def partition_trials(trials: int, workers: int) -> list[int]:
    """Fixed split: worker w gets trials//workers plus one of the remainder."""
    base, rem = divmod(trials, workers)
    return [base + (1 if w < rem else 0) for w in range(workers)]


def estimate_logical_error(
    code: StabilizerCode,
    cfg: NoiseConfig,
    w_max: int | None = None,
    table: DecoderTable | None = None,
) -> SimResult:
    """Monte Carlo p_L with a 95% Wilson interval.

    Worker w consumes the substream keyed by (seed, w) over its fixed share
    of trials, so the result depends only on (seed, trials, workers, p).
    """
    if table is None:
        t = code.correctable_weight()
        table = build_decoder(code, w_max if w_max is not None else (t or 1))
    t0 = time.perf_counter()
    counts = np.zeros(5, dtype=np.int64)
    if code.p == 2:
        gx, gz = _check_arrays(code)
        lx_x, lx_z, lz_x, lz_z = _logical_arrays(code)
        for worker, share in enumerate(partition_trials(cfg.trials, cfg.workers)):
            if share == 0:
                continue
            counts += kernels.mc_trials(
                gx, gz, code.n, cfg.p, cfg.seed, worker, 0, share,
                table.syndromes, table.leader_x, table.leader_z,
                lx_x, lx_z, lz_x, lz_z,
            )
    else:
        for worker, share in enumerate(partition_trials(cfg.trials, cfg.workers)):
            stream = PauliStream(cfg.seed, worker)
            for trial in range(share):
                e = stream.error(code.n, cfg.p, trial, field_p=code.p)
                outcome = run_trial(code, table, e)
                counts[_outcome_index(outcome)] += 1
    failures = int(counts.sum() - counts[CLS_SUCCESS])
    lo, hi = wilson_interval(failures, cfg.trials)
    return SimResult(
        code=code.name,
        p=cfg.p,
        trials=cfg.trials,
        failures_total=failures,
        failures_by_class=_class_dict(counts, code.k),
        p_l=failures / cfg.trials,
        ci_low=lo,
        ci_high=hi,
        seed=cfg.seed,
        workers=cfg.workers,
        wall_time=time.perf_counter() - t0,
    )


def _outcome_index(outcome: str) -> int:
    return {
        "success": CLS_SUCCESS,
        "uncorrected": CLS_UNCORRECTED,
        "X": CLS_X,
        "logical": CLS_X,
        "Y": CLS_Y,
        "Z": CLS_Z,
    }[outcome]


def _class_dict(counts: np.ndarray, k: int) -> dict[str, int]:
    names = _CLASS_NAMES_K1 if k == 1 else _CLASS_NAMES_KN
    return {name: int(counts[idx]) for idx, name in names.items() if counts[idx]}


# ---------------------------------------------------------------------------
# Exact enumeration


@dataclass(frozen=True)
class WeightCensus:
    """Per-weight decode outcome counts: census[w] is a length-5 array."""

    n: int
    p: int
    w_cut: int
    counts: dict[int, np.ndarray] = field(repr=False, default_factory=dict)

    def failures(self, w: int) -> int:
        c = self.counts[w]
        return int(c.sum() - c[CLS_SUCCESS])


def decode_census(code: StabilizerCode, table: DecoderTable, w_cut: int,
                  *, budget: int = DEFAULT_EXACT_BUDGET) -> WeightCensus:
    """Classify every pattern of weight 0..w_cut through the decoder."""
    total = table_patterns(code.n, w_cut, code.p)
    if total > budget:
        raise BudgetError(f"exact census needs {total} patterns (> budget {budget})")
    counts: dict[int, np.ndarray] = {}
    zero = np.zeros(5, dtype=np.int64)
    zero[CLS_SUCCESS] = 1  # identity decodes to identity
    counts[0] = zero
    if code.p == 2:
        syn_x, syn_z = syndrome_tables(code)
        lx_x, lx_z, lz_x, lz_z = _logical_arrays(code)
        for w in range(1, w_cut + 1):
            counts[w] = np.asarray(
                kernels.decode_weight_class(
                    syn_x, syn_z, code.n, w,
                    table.syndromes, table.leader_x, table.leader_z,
                    lx_x, lx_z, lz_x, lz_z,
                ),
                dtype=np.int64,
            )
    else:
        for w in range(1, w_cut + 1):
            acc = np.zeros(5, dtype=np.int64)
            for e in _generic_channel_patterns(code.n, w, code.p):
                acc[_outcome_index(run_trial(code, table, e))] += 1
            counts[w] = acc
    return WeightCensus(n=code.n, p=code.p, w_cut=w_cut, counts=counts)


def _generic_channel_patterns(n: int, w: int, p: int):
    # Channel errors use the three depolarizing classes with digit value 1.
    classes = ((1, 0), (1, 1), (0, 1))
    for support in itertools.combinations(range(n), w):
        for assignment in itertools.product(classes, repeat=w):
            x = [0] * n
            z = [0] * n
            for j, (a, b) in zip(support, assignment):
                x[j], z[j] = a, b
            yield PauliVector(p, tuple(x), tuple(z))


@dataclass(frozen=True)
class ExactResult:
    code: str
    p: float
    p_l: float
    q: dict[str, float]
    w_cut: int
    truncation_bound: float


def weight_probability(n: int, w: int, p: float) -> float:
    """Total probability of all weight-w patterns: C(n,w) p^w (1-p)^(n-w)."""
    return math.comb(n, w) * p**w * (1.0 - p) ** (n - w)


def exact_from_census(code: StabilizerCode, census: WeightCensus, p: float) -> ExactResult:
    """Exact (to float) logical channel from a per-weight decode census.

    Each weight-w pattern carries probability (p/3)^w (1-p)^(n-w); weights
    above the census cut contribute to the reported truncation bound.
    """
    n = code.n
    q = np.zeros(5, dtype=np.float64)
    for w, counts in census.counts.items():
        q += counts * (p / 3.0) ** w * (1.0 - p) ** (n - w)
    tail = sum(weight_probability(n, w, p) for w in range(census.w_cut + 1, n + 1))
    p_l = float(q.sum() - q[CLS_SUCCESS])
    names = {CLS_SUCCESS: "I", **(_CLASS_NAMES_K1 if code.k == 1 else _CLASS_NAMES_KN)}
    return ExactResult(
        code=code.name,
        p=p,
        p_l=p_l,
        q={name: float(q[idx]) for idx, name in names.items()},
        w_cut=census.w_cut,
        truncation_bound=tail,
    )


def exact_logical_error(
    code: StabilizerCode,
    p: float,
    w_max: int,
    *,
    w_cut: int | None = None,
    table: DecoderTable | None = None,
    budget: int = DEFAULT_EXACT_BUDGET,
) -> ExactResult:
    """Exact p_L by enumeration: full when w_cut is None, truncated otherwise."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"error rate {p} outside [0, 1]")
    if table is None:
        table = build_decoder(code, w_max)
    cut = code.n if w_cut is None else min(w_cut, code.n)
    census = decode_census(code, table, cut, budget=budget)
    return exact_from_census(code, census, p)


# ---------------------------------------------------------------------------
# Harmful patterns and the union bound


@dataclass(frozen=True)
class HarmfulCount:
    """Weight-w failure census in both conventions.

    ``raw`` counts every harmful pattern of weight w; ``per_support_avg``
    divides by C(n, w).  Which of the two the source formula intends is
    ambiguous, so both travel together with the convention flag.
    """

    w: int
    raw: int
    per_support_avg: float
    convention: str = "raw-total"


def count_harmful(code: StabilizerCode, table: DecoderTable, w: int,
                  *, budget: int = DEFAULT_EXACT_BUDGET) -> HarmfulCount:
    if w == 0:
        return HarmfulCount(w=0, raw=0, per_support_avg=0.0)
    census = decode_census(code, table, w, budget=budget)
    raw = census.failures(w)
    return HarmfulCount(w=w, raw=raw, per_support_avg=raw / math.comb(code.n, w))


def union_bound_pl(
    code: StabilizerCode,
    p: float,
    harmful: dict[int, float],
    w_start: int | None = None,
) -> float:
    """Upper bound sum_{w>=w_start} H_w C(n,w) p^w (1-p)^(n-w).

    ``harmful`` maps weight -> H_w (per-support average or any chosen
    convention); weights missing from the map use the ceiling 3^w.  The
    bound is monotone in every H_w.  The default start weight is t+1, not
    the distance: with a full table the weights between t+1 and d-1 carry
    real failures, and skipping them would break bound validity.
    """
    n = code.n
    if w_start is None:
        t = code.correctable_weight()
        w_start = t + 1 if t is not None else min(harmful, default=1)
    total = 0.0
    for w in range(w_start, n + 1):
        h = harmful.get(w, float(3**w))
        total += h * math.comb(n, w) * p**w * (1.0 - p) ** (n - w)
    return total
