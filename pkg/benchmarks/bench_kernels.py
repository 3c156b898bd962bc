#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Covers the two hot paths: weight-class enumeration (distance search /
decoder build / exact census) and Monte Carlo decoding trials.  Both
backends produce identical outputs; this only times them.

Usage: python benchmarks/bench_kernels.py [--trials N] [--repeat R]
"""

import argparse
import math
import time

import numpy as np

from quasistab._kernels import available_backends
from quasistab.codes import build_five_qubit, quadratic_residue_code
from quasistab.noise import build_decoder
from quasistab.symplectic import syndrome_tables


def _timeit(fn, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_distance_scan(backends, repeat):
    code = quadratic_residue_code(13)
    syn_x, syn_z = syndrome_tables(code)
    print(f"\nzero-syndrome scan, {code.params}, w=5 "
          f"({math.comb(13, 5) * 3**5:,} patterns)")
    reference = None
    for name, mod in backends.items():
        t, out = _timeit(lambda m=mod: m.zero_syndrome_hits(syn_x, syn_z, 13, 5), repeat)
        if reference is None:
            reference = out
        else:
            assert np.array_equal(reference[0], out[0])
        print(f"  {name:9s} {t * 1e3:9.1f} ms   ({len(out[0])} hits)")


def bench_decode_census(backends, repeat):
    code = quadratic_residue_code(13)
    table = build_decoder(code, 2)
    syn_x, syn_z = syndrome_tables(code)
    lx, lz = code.logicals[0]
    arrs = (
        np.array([lx.packed()[0]], dtype=np.uint64),
        np.array([lx.packed()[1]], dtype=np.uint64),
        np.array([lz.packed()[0]], dtype=np.uint64),
        np.array([lz.packed()[1]], dtype=np.uint64),
    )
    w = 5
    print(f"\ndecode census, {code.params}, w={w} "
          f"({math.comb(13, w) * 3**w:,} patterns)")
    reference = None
    for name, mod in backends.items():
        t, out = _timeit(
            lambda m=mod: m.decode_weight_class(
                syn_x, syn_z, 13, w,
                table.syndromes, table.leader_x, table.leader_z, *arrs,
            ),
            repeat,
        )
        if reference is None:
            reference = out
        else:
            assert np.array_equal(reference, out)
        print(f"  {name:9s} {t * 1e3:9.1f} ms   (counts {list(out)})")


def bench_mc(backends, trials, repeat):
    code = build_five_qubit()
    table = build_decoder(code, 1)
    gx = np.array([g.packed()[0] for g in code.checks], dtype=np.uint64)
    gz = np.array([g.packed()[1] for g in code.checks], dtype=np.uint64)
    lx, lz = code.logicals[0]
    arrs = (
        np.array([lx.packed()[0]], dtype=np.uint64),
        np.array([lx.packed()[1]], dtype=np.uint64),
        np.array([lz.packed()[0]], dtype=np.uint64),
        np.array([lz.packed()[1]], dtype=np.uint64),
    )
    print(f"\nMonte Carlo trials, {code.params}, p=0.1, {trials:,} trials")
    reference = None
    for name, mod in backends.items():
        t, out = _timeit(
            lambda m=mod: m.mc_trials(
                gx, gz, 5, 0.1, 42, 0, 0, trials,
                table.syndromes, table.leader_x, table.leader_z, *arrs,
            ),
            repeat,
        )
        if reference is None:
            reference = out
        else:
            assert np.array_equal(reference, out)
        rate = trials / t
        print(f"  {name:9s} {t * 1e3:9.1f} ms   ({rate / 1e6:.1f} M trials/s)")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = available_backends()
    print("backends:", ", ".join(backends))
    if len(backends) < 2:
        print("note: compiled extension not built; timing fallback only")
    bench_distance_scan(backends, args.repeat)
    bench_decode_census(backends, args.repeat)
    bench_mc(backends, args.trials, args.repeat)


if __name__ == "__main__":
    main()
