# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: same contracts and bit-exact results as ``_ref``.

Plain C loops over bit-packed halves; popcount parity gives symplectic
products, splitmix64 on (key, trial, qubit) counters gives the noise stream.
"""

import math

import numpy as np

from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    static inline unsigned long long qs_popcount(unsigned long long x) {
    #if defined(_MSC_VER)
        return (unsigned long long)__popcnt64(x);
    #else
        return (unsigned long long)__builtin_popcountll(x);
    #endif
    }
    """
    uint64_t qs_popcount(uint64_t x) nogil

cdef enum:
    MAX_W = 16

cdef uint64_t GOLDEN = <uint64_t>0x9E3779B97F4A7C15
cdef uint64_t MIX1 = <uint64_t>0xBF58476D1CE4E5B9
cdef uint64_t MIX2 = <uint64_t>0x94D049BB133111EB
cdef uint64_t KEY_SALT = <uint64_t>0xD2B74407B1CE6E93
cdef double INV53 = 1.0 / 9007199254740992.0

cdef int CLS_SUCCESS = 0
cdef int CLS_UNCORRECTED = 1
cdef int CLS_X = 2
cdef int CLS_Y = 3
cdef int CLS_Z = 4

_BINOM = np.zeros((65, 65), dtype=np.int64)
for _n in range(65):
    for _w in range(_n + 1):
        _BINOM[_n, _w] = math.comb(_n, _w)
cdef int64_t[:, ::1] BINOM = _BINOM


cdef inline int64_t ipow3(int w) noexcept nogil:
    cdef int64_t out = 1
    cdef int i
    for i in range(w):
        out *= 3
    return out


cdef inline uint64_t splitmix(uint64_t x) noexcept nogil:
    x = x + GOLDEN
    x = (x ^ (x >> 30)) * MIX1
    x = (x ^ (x >> 27)) * MIX2
    return x ^ (x >> 31)


cdef inline int64_t lower_bound(const uint64_t[::1] arr, uint64_t v) noexcept nogil:
    cdef int64_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline void unrank_comb(int64_t r, int n, int w, int* out) noexcept nogil:
    cdef int i, c = 0
    cdef int64_t cnt
    for i in range(w):
        while True:
            cnt = BINOM[n - c - 1, w - i - 1]
            if cnt > r:
                break
            r -= cnt
            c += 1
        out[i] = c
        c += 1


cdef inline bint next_comb(int* supp, int n, int w) noexcept nogil:
    cdef int i = w - 1, j
    while i >= 0 and supp[i] == n - w + i:
        i -= 1
    if i < 0:
        return False
    supp[i] += 1
    for j in range(i + 1, w):
        supp[j] = supp[j - 1] + 1
    return True


cdef inline void load_site_options(const uint64_t[::1] syn_x, const uint64_t[::1] syn_z,
                                   int* supp, int w,
                                   uint64_t* cs, uint64_t* cx, uint64_t* cz) noexcept nogil:
    # digit codes 0,1,2 -> Z, X, Y
    cdef int t, j
    for t in range(w):
        j = supp[t]
        cs[3 * t + 0] = syn_z[j]
        cs[3 * t + 1] = syn_x[j]
        cs[3 * t + 2] = syn_x[j] ^ syn_z[j]
        cx[3 * t + 0] = 0
        cx[3 * t + 1] = (<uint64_t>1) << j
        cx[3 * t + 2] = (<uint64_t>1) << j
        cz[3 * t + 0] = (<uint64_t>1) << j
        cz[3 * t + 1] = 0
        cz[3 * t + 2] = (<uint64_t>1) << j


cdef inline int classify(uint64_t rx, uint64_t rz,
                         const uint64_t[::1] lx_x, const uint64_t[::1] lx_z,
                         const uint64_t[::1] lz_x, const uint64_t[::1] lz_z) noexcept nogil:
    cdef int k = lx_x.shape[0]
    cdef uint64_t a, b
    cdef int i
    if k == 1:
        a = (qs_popcount(rx & lz_z[0]) + qs_popcount(lz_x[0] & rz)) & 1
        b = (qs_popcount(rx & lx_z[0]) + qs_popcount(lx_x[0] & rz)) & 1
        if a and b:
            return CLS_Y
        if a:
            return CLS_X
        if b:
            return CLS_Z
        return CLS_SUCCESS
    for i in range(k):
        if (qs_popcount(rx & lz_z[i]) + qs_popcount(lz_x[i] & rz)) & 1:
            return CLS_X
        if (qs_popcount(rx & lx_z[i]) + qs_popcount(lx_x[i] & rz)) & 1:
            return CLS_X
    return CLS_SUCCESS


def weight_class_syndromes(syn_x, syn_z, int n, int w, support_start, support_count):
    """Window of weight-w supports: flattened (syndrome, ex, ez) arrays."""
    if w < 1 or w > MAX_W:
        raise ValueError(f"w={w} outside supported range 1..{MAX_W}")
    cdef const uint64_t[::1] sx = np.ascontiguousarray(syn_x, dtype=np.uint64)
    cdef const uint64_t[::1] sz = np.ascontiguousarray(syn_z, dtype=np.uint64)
    cdef int64_t nsup = support_count
    cdef int64_t pw = ipow3(w)
    syn_out = np.empty(nsup * pw, dtype=np.uint64)
    ex_out = np.empty(nsup * pw, dtype=np.uint64)
    ez_out = np.empty(nsup * pw, dtype=np.uint64)
    cdef uint64_t[::1] syn_v = syn_out
    cdef uint64_t[::1] ex_v = ex_out
    cdef uint64_t[::1] ez_v = ez_out
    cdef int supp[MAX_W]
    cdef uint64_t cs[3 * MAX_W]
    cdef uint64_t cx[3 * MAX_W]
    cdef uint64_t cz[3 * MAX_W]
    cdef int64_t s, q, tmp, idx = 0
    cdef int t, c
    cdef uint64_t acc_s, acc_x, acc_z
    if nsup <= 0:
        return syn_out[:0], ex_out[:0], ez_out[:0]
    unrank_comb(support_start, n, w, supp)
    with nogil:
        for s in range(nsup):
            load_site_options(sx, sz, supp, w, cs, cx, cz)
            for q in range(pw):
                acc_s = 0
                acc_x = 0
                acc_z = 0
                tmp = q
                for t in range(w - 1, -1, -1):
                    c = tmp % 3
                    tmp //= 3
                    acc_s ^= cs[3 * t + c]
                    acc_x |= cx[3 * t + c]
                    acc_z |= cz[3 * t + c]
                syn_v[idx] = acc_s
                ex_v[idx] = acc_x
                ez_v[idx] = acc_z
                idx += 1
            if s + 1 < nsup:
                next_comb(supp, n, w)
    return syn_out, ex_out, ez_out


def zero_syndrome_hits(syn_x, syn_z, int n, int w):
    """Packed (ex, ez) of every weight-w pattern commuting with all checks."""
    if w < 1 or w > MAX_W:
        raise ValueError(f"w={w} outside supported range 1..{MAX_W}")
    cdef const uint64_t[::1] sx = np.ascontiguousarray(syn_x, dtype=np.uint64)
    cdef const uint64_t[::1] sz = np.ascontiguousarray(syn_z, dtype=np.uint64)
    cdef int supp[MAX_W]
    cdef uint64_t cs[3 * MAX_W]
    cdef uint64_t cx[3 * MAX_W]
    cdef uint64_t cz[3 * MAX_W]
    cdef int64_t pw = ipow3(w)
    cdef int64_t nsup = math.comb(n, w)
    cdef int64_t s, q, tmp
    cdef int t, c
    cdef uint64_t acc_s, acc_x, acc_z
    hits_x = []
    hits_z = []
    for t in range(w):
        supp[t] = t
    for s in range(nsup):
        load_site_options(sx, sz, supp, w, cs, cx, cz)
        for q in range(pw):
            acc_s = 0
            acc_x = 0
            acc_z = 0
            tmp = q
            for t in range(w - 1, -1, -1):
                c = tmp % 3
                tmp //= 3
                acc_s ^= cs[3 * t + c]
                acc_x |= cx[3 * t + c]
                acc_z |= cz[3 * t + c]
            if acc_s == 0:
                hits_x.append(acc_x)
                hits_z.append(acc_z)
        if s + 1 < nsup:
            next_comb(supp, n, w)
    return (np.array(hits_x, dtype=np.uint64), np.array(hits_z, dtype=np.uint64))


def decode_weight_class(syn_x, syn_z, int n, int w, tab_syn, tab_ex, tab_ez,
                        lx_x, lx_z, lz_x, lz_z):
    """Decode every weight-w pattern; returns per-class counts (length 5)."""
    if w < 1 or w > MAX_W:
        raise ValueError(f"w={w} outside supported range 1..{MAX_W}")
    cdef const uint64_t[::1] sx = np.ascontiguousarray(syn_x, dtype=np.uint64)
    cdef const uint64_t[::1] sz = np.ascontiguousarray(syn_z, dtype=np.uint64)
    cdef const uint64_t[::1] ts = np.ascontiguousarray(tab_syn, dtype=np.uint64)
    cdef const uint64_t[::1] tx = np.ascontiguousarray(tab_ex, dtype=np.uint64)
    cdef const uint64_t[::1] tz = np.ascontiguousarray(tab_ez, dtype=np.uint64)
    cdef const uint64_t[::1] ax = np.ascontiguousarray(lx_x, dtype=np.uint64)
    cdef const uint64_t[::1] az = np.ascontiguousarray(lx_z, dtype=np.uint64)
    cdef const uint64_t[::1] bx = np.ascontiguousarray(lz_x, dtype=np.uint64)
    cdef const uint64_t[::1] bz = np.ascontiguousarray(lz_z, dtype=np.uint64)
    counts = np.zeros(5, dtype=np.int64)
    cdef int64_t[::1] cnt = counts
    cdef int supp[MAX_W]
    cdef uint64_t cs[3 * MAX_W]
    cdef uint64_t cx[3 * MAX_W]
    cdef uint64_t cz[3 * MAX_W]
    cdef int64_t pw = ipow3(w)
    cdef int64_t nsup = math.comb(n, w)
    cdef int64_t s, q, tmp, pos
    cdef int t, c
    cdef uint64_t acc_s, acc_x, acc_z
    for t in range(w):
        supp[t] = t
    with nogil:
        for s in range(nsup):
            load_site_options(sx, sz, supp, w, cs, cx, cz)
            for q in range(pw):
                acc_s = 0
                acc_x = 0
                acc_z = 0
                tmp = q
                for t in range(w - 1, -1, -1):
                    c = tmp % 3
                    tmp //= 3
                    acc_s ^= cs[3 * t + c]
                    acc_x |= cx[3 * t + c]
                    acc_z |= cz[3 * t + c]
                pos = lower_bound(ts, acc_s)
                if pos >= ts.shape[0] or ts[pos] != acc_s:
                    cnt[CLS_UNCORRECTED] += 1
                else:
                    cnt[classify(acc_x ^ tx[pos], acc_z ^ tz[pos], ax, az, bx, bz)] += 1
            if s + 1 < nsup:
                next_comb(supp, n, w)
    return counts


def mc_trials(gx, gz, int n, double p, seed, worker, trial_start, trials,
              tab_syn, tab_ex, tab_ez, lx_x, lx_z, lz_x, lz_z):
    """Monte Carlo depolarizing trials; returns per-class counts (length 5)."""
    cdef const uint64_t[::1] gxv = np.ascontiguousarray(gx, dtype=np.uint64)
    cdef const uint64_t[::1] gzv = np.ascontiguousarray(gz, dtype=np.uint64)
    cdef const uint64_t[::1] ts = np.ascontiguousarray(tab_syn, dtype=np.uint64)
    cdef const uint64_t[::1] tx = np.ascontiguousarray(tab_ex, dtype=np.uint64)
    cdef const uint64_t[::1] tz = np.ascontiguousarray(tab_ez, dtype=np.uint64)
    cdef const uint64_t[::1] ax = np.ascontiguousarray(lx_x, dtype=np.uint64)
    cdef const uint64_t[::1] az = np.ascontiguousarray(lx_z, dtype=np.uint64)
    cdef const uint64_t[::1] bx = np.ascontiguousarray(lz_x, dtype=np.uint64)
    cdef const uint64_t[::1] bz = np.ascontiguousarray(lz_z, dtype=np.uint64)
    counts = np.zeros(5, dtype=np.int64)
    cdef int64_t[::1] cnt = counts
    cdef uint64_t key = splitmix(<uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    key = splitmix(key ^ ((<uint64_t>worker) * KEY_SALT))
    cdef int64_t t0 = trial_start, ntr = trials
    cdef int64_t t, pos
    cdef int j, rk = gxv.shape[0]
    cdef uint64_t ctr, v, ex, ez, syn, bit, c3
    cdef double u
    with nogil:
        for t in range(t0, t0 + ntr):
            ex = 0
            ez = 0
            for j in range(n):
                ctr = (<uint64_t>t) * (<uint64_t>n) + (<uint64_t>j)
                v = splitmix(key ^ ((<uint64_t>2) * ctr * GOLDEN))
                u = <double>(v >> 11) * INV53
                if u < p:
                    v = splitmix(key ^ (((<uint64_t>2) * ctr + 1) * GOLDEN))
                    c3 = v % 3
                    if c3 != 2:  # X or Y
                        ex |= (<uint64_t>1) << j
                    if c3 != 0:  # Y or Z
                        ez |= (<uint64_t>1) << j
            syn = 0
            for j in range(rk):
                bit = (qs_popcount(ex & gzv[j]) + qs_popcount(gxv[j] & ez)) & 1
                syn |= bit << j
            pos = lower_bound(ts, syn)
            if pos >= ts.shape[0] or ts[pos] != syn:
                cnt[CLS_UNCORRECTED] += 1
            else:
                cnt[classify(ex ^ tx[pos], ez ^ tz[pos], ax, az, bx, bz)] += 1
    return counts
