"""Quasi-orthogonal stabilizer code toolkit.

Builds and verifies the small code families of the quasi-orthogonal
geometric framework, evaluates them under depolarizing noise (Monte Carlo
and exact enumeration), and computes the analytic overlap models and
Gilbert-Varshamov bounds.
"""

__version__ = "0.1.0"

from .symplectic import (
    DistanceInfo,
    DistanceScan,
    PauliVector,
    StabilizerCode,
    is_totally_singular,
    kernel_backend,
    logical_representatives,
    min_weight_logical,
    symplectic_dual,
    symplectic_product,
)

__all__ = [
    "DistanceInfo",
    "DistanceScan",
    "PauliVector",
    "StabilizerCode",
    "is_totally_singular",
    "kernel_backend",
    "logical_representatives",
    "min_weight_logical",
    "symplectic_dual",
    "symplectic_product",
    "__version__",
]
