"""Vectorized numpy fallback for the hot kernels.

Same enumeration order, RNG draws and tie-breaking as the compiled backend;
everything here is chunked so peak memory stays a few tens of MB.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import (
    CLS_SUCCESS,
    CLS_UNCORRECTED,
    CLS_X,
    CLS_Y,
    CLS_Z,
    GOLDEN,
    NUM_CLASSES,
    stream_key,
)

U64 = np.uint64

# Per-site digit codes in enumeration order 0,1,2 -> Z, X, Y ((x,z) lex).
_XBIT = np.array([0, 1, 1], dtype=np.uint64)
_ZBIT = np.array([1, 0, 1], dtype=np.uint64)

_PATTERN_BUDGET = 1 << 21  # patterns per internal chunk


def _splitmix(x: np.ndarray) -> np.ndarray:
    x = x + U64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> U64(30))) * U64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> U64(27))) * U64(0x94D049BB133111EB)
    return x ^ (x >> U64(31))


def _digit_grid(w: int) -> np.ndarray:
    """(3^w, w) array of per-slot digit codes, first slot most significant."""
    q = np.arange(3**w, dtype=np.int64)
    place = 3 ** np.arange(w - 1, -1, -1, dtype=np.int64)
    return (q[:, None] // place[None, :]) % 3


def _supports(n: int, w: int, start: int, count: int) -> np.ndarray:
    block = list(itertools.islice(itertools.combinations(range(n), w), start, start + count))
    return np.array(block, dtype=np.int64).reshape(len(block), w)


def weight_class_syndromes(syn_x, syn_z, n, w, support_start, support_count):
    """Syndromes and packed halves for a window of weight-w supports.

    Patterns come back flattened in enumeration order: supports in
    lexicographic order, then the 3^w per-site assignments.
    """
    syn_x = np.asarray(syn_x, dtype=np.uint64)
    syn_z = np.asarray(syn_z, dtype=np.uint64)
    supports = _supports(n, w, support_start, support_count)
    nsup = supports.shape[0]
    pw = 3**w
    if nsup == 0:
        empty = np.empty(0, dtype=np.uint64)
        return empty, empty.copy(), empty.copy()
    grid = _digit_grid(w)
    # options per (support, slot, digit-code)
    sx = syn_x[supports][:, :, None] * _XBIT[None, None, :]
    sz = syn_z[supports][:, :, None] * _ZBIT[None, None, :]
    syn_opt = sx ^ sz
    shifts = supports.astype(np.uint64)[:, :, None]
    ex_opt = _XBIT[None, None, :] << shifts
    ez_opt = _ZBIT[None, None, :] << shifts
    syn = np.zeros((nsup, pw), dtype=np.uint64)
    ex = np.zeros((nsup, pw), dtype=np.uint64)
    ez = np.zeros((nsup, pw), dtype=np.uint64)
    for t in range(w):
        cols = grid[:, t]
        syn ^= syn_opt[:, t, cols]
        ex |= ex_opt[:, t, cols]
        ez |= ez_opt[:, t, cols]
    return syn.ravel(), ex.ravel(), ez.ravel()


def _support_chunks(n: int, w: int):
    total = math.comb(n, w)
    step = max(1, _PATTERN_BUDGET // (3**w))
    for start in range(0, total, step):
        yield start, min(step, total - start)


def zero_syndrome_hits(syn_x, syn_z, n, w):
    """Packed (ex, ez) of every weight-w pattern commuting with all checks."""
    hits_x: list[np.ndarray] = []
    hits_z: list[np.ndarray] = []
    for start, count in _support_chunks(n, w):
        syn, ex, ez = weight_class_syndromes(syn_x, syn_z, n, w, start, count)
        mask = syn == 0
        if mask.any():
            hits_x.append(ex[mask])
            hits_z.append(ez[mask])
    if not hits_x:
        empty = np.empty(0, dtype=np.uint64)
        return empty, empty.copy()
    return np.concatenate(hits_x), np.concatenate(hits_z)


def _parity_pair(ax, az, bx, bz):
    """Symplectic product parity of packed pairs: a.x dot b.z + b.x dot a.z."""
    return (np.bitwise_count(ax & bz) + np.bitwise_count(bx & az)) & U64(1)


def _classify(rx, rz, hit, lx_x, lx_z, lz_x, lz_z, counts):
    counts[CLS_UNCORRECTED] += int(np.count_nonzero(~hit))
    if not hit.any():
        return
    rx = rx[hit]
    rz = rz[hit]
    k = len(lx_x)
    if k == 1:
        a = _parity_pair(rx, rz, U64(lz_x[0]), U64(lz_z[0])).astype(bool)
        b = _parity_pair(rx, rz, U64(lx_x[0]), U64(lx_z[0])).astype(bool)
        counts[CLS_X] += int(np.count_nonzero(a & ~b))
        counts[CLS_Z] += int(np.count_nonzero(~a & b))
        counts[CLS_Y] += int(np.count_nonzero(a & b))
        counts[CLS_SUCCESS] += int(np.count_nonzero(~a & ~b))
    else:
        bad = np.zeros(rx.shape, dtype=bool)
        for i in range(k):
            bad |= _parity_pair(rx, rz, U64(lz_x[i]), U64(lz_z[i])).astype(bool)
            bad |= _parity_pair(rx, rz, U64(lx_x[i]), U64(lx_z[i])).astype(bool)
        counts[CLS_X] += int(np.count_nonzero(bad))
        counts[CLS_SUCCESS] += int(np.count_nonzero(~bad))


def _lookup(tab_syn, tab_ex, tab_ez, syn):
    pos = np.searchsorted(tab_syn, syn)
    pos = np.minimum(pos, len(tab_syn) - 1)
    hit = tab_syn[pos] == syn
    return hit, tab_ex[pos], tab_ez[pos]


def decode_weight_class(syn_x, syn_z, n, w, tab_syn, tab_ex, tab_ez, lx_x, lx_z, lz_x, lz_z):
    """Decode every weight-w pattern; returns per-class counts (length 5)."""
    counts = np.zeros(NUM_CLASSES, dtype=np.int64)
    for start, count in _support_chunks(n, w):
        syn, ex, ez = weight_class_syndromes(syn_x, syn_z, n, w, start, count)
        hit, cx, cz = _lookup(tab_syn, tab_ex, tab_ez, syn)
        _classify(ex ^ cx, ez ^ cz, hit, lx_x, lx_z, lz_x, lz_z, counts)
    return counts


def mc_trials(gx, gz, n, p, seed, worker, trial_start, trials, tab_syn, tab_ex, tab_ez,
              lx_x, lx_z, lz_x, lz_z):
    """Monte Carlo depolarizing trials; returns per-class counts (length 5)."""
    gx = np.asarray(gx, dtype=np.uint64)
    gz = np.asarray(gz, dtype=np.uint64)
    key = U64(stream_key(seed, worker))
    counts = np.zeros(NUM_CLASSES, dtype=np.int64)
    shifts = np.arange(n, dtype=np.uint64)
    batch = max(1, _PATTERN_BUDGET // max(n, 1))
    done = 0
    while done < trials:
        b = min(batch, trials - done)
        t_idx = np.arange(trial_start + done, trial_start + done + b, dtype=np.uint64)
        ctr = t_idx[:, None] * U64(n) + shifts[None, :]
        v_occ = _splitmix(key ^ (U64(2) * ctr * U64(GOLDEN)))
        v_typ = _splitmix(key ^ ((U64(2) * ctr + U64(1)) * U64(GOLDEN)))
        u = (v_occ >> U64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)
        occ = u < p
        typ = v_typ % U64(3)
        xb = (occ & (typ != U64(2))).astype(np.uint64)
        zb = (occ & (typ != U64(0))).astype(np.uint64)
        ex = np.bitwise_or.reduce(xb << shifts[None, :], axis=1)
        ez = np.bitwise_or.reduce(zb << shifts[None, :], axis=1)
        syn = np.zeros(b, dtype=np.uint64)
        for i in range(len(gx)):
            bit = _parity_pair(ex, ez, gx[i], gz[i])
            syn |= bit << U64(i)
        hit, cx, cz = _lookup(tab_syn, tab_ex, tab_ez, syn)
        _classify(ex ^ cx, ez ^ cz, hit, lx_x, lx_z, lz_x, lz_z, counts)
        done += b
    return counts
