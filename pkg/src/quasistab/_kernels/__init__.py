"""Kernel backend selection.

The weight-class enumeration and Monte Carlo inner loops dominate runtime,
so they exist twice: a Cython extension (``_speed``) and a vectorized numpy
fallback (``_ref``) with bit-identical semantics.  The compiled module wins
when importable; ``benchmarks/bench_kernels.py`` compares the two.

This module also pins the counter-based RNG contract shared by both
backends: every draw is ``splitmix64`` of a per-worker key combined with a
(trial, qubit, purpose) counter, so results never depend on execution order
or batching.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
KEY_SALT = 0xD2B74407B1CE6E93

# Outcome classes shared by the decode/Monte Carlo kernels.
CLS_SUCCESS = 0
CLS_UNCORRECTED = 1  # syndrome missing from the table
CLS_X = 2  # k > 1 codes lump every logical failure here
CLS_Y = 3
CLS_Z = 4
NUM_CLASSES = 5


def splitmix64(x: int) -> int:
    """Reference scalar splitmix64; the backends replicate this exactly."""
    x = (x + GOLDEN) & MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & MASK64
    return x ^ (x >> 31)


def stream_key(seed: int, worker: int) -> int:
    """Per-worker substream key derived from (seed, worker)."""
    return splitmix64(splitmix64(seed & MASK64) ^ ((worker * KEY_SALT) & MASK64))


def draw_occupancy(key: int, trial: int, n: int, qubit: int) -> float:
    """Uniform in [0, 1) deciding whether qubit ``qubit`` of ``trial`` errs."""
    c = (trial * n + qubit) & MASK64
    v = splitmix64((key ^ ((2 * c * GOLDEN) & MASK64)) & MASK64)
    return (v >> 11) * (1.0 / 9007199254740992.0)


def draw_pauli(key: int, trial: int, n: int, qubit: int) -> int:
    """Error type for an erring qubit: 0 -> X, 1 -> Y, 2 -> Z."""
    c = (trial * n + qubit) & MASK64
    v = splitmix64((key ^ (((2 * c + 1) * GOLDEN) & MASK64)) & MASK64)
    return v % 3


import os as _os

_forced = _os.environ.get("QUASISTAB_BACKEND")
if _forced == "fallback":
    from . import _ref as kernels

    backend_name = "fallback"
else:
    try:
        from . import _speed as kernels

        backend_name = "compiled"
    except ImportError:  # extension not built; numpy fallback
        if _forced == "compiled":
            raise
        from . import _ref as kernels

        backend_name = "fallback"


def available_backends() -> dict[str, object]:
    """All importable backends, keyed by name (for tests and benchmarks)."""
    from . import _ref

    out: dict[str, object] = {"fallback": _ref}
    try:
        from . import _speed

        out["compiled"] = _speed
    except ImportError:
        pass
    return out
