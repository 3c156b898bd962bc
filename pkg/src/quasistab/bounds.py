"""Closed-form rate bounds and suppression metrics.

Gilbert-Varshamov rates for the orthogonal (three error types per qubit)
and quasi-orthogonal (q < 3 effective types) regimes, the q-ary entropy
surface, fidelity/trace-distance bounds with their Fuchs-van de Graaf
sandwich, and the log-log scaling exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .symplectic import StabilizerCode

LOG2_3 = math.log2(3.0)


def entropy_h2(x: float) -> float:
    """Binary entropy with the boundary convention H(0) = H(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_hq(q: float, x: float) -> float:
    """q-ary entropy H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)."""
    if q <= 1.0:
        raise DomainError(f"entropy base q must exceed 1, got {q}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    if x == 0.0:
        return 0.0
    lq = math.log(q)
    out = x * math.log(q - 1.0) / lq
    out -= x * math.log(x) / lq
    if x < 1.0:
        out -= (1.0 - x) * math.log(1.0 - x) / lq
    return out


def gvb_orthogonal(delta: float) -> float:
    """Orthogonal GVB rate 1 - 2 delta log2(3) - H2(2 delta); may be negative."""
    if not 0.0 <= delta < 0.5:
        raise DomainError(f"relative distance {delta} outside [0, 0.5)")
    return 1.0 - 2.0 * delta * LOG2_3 - entropy_h2(2.0 * delta)


def gvb_quasi(delta: float, q: float) -> float:
    """Quasi-orthogonal GVB rate 1 - 2 delta log2(q) - H2(2 delta).

    q counts the effective error types per qubit; q=3 reproduces the
    orthogonal bound, q=2 the X/Z-dominated relaxation.
    """
    if not 0.0 <= delta < 0.5:
        raise DomainError(f"relative distance {delta} outside [0, 0.5)")
    if q <= 1.0:
        raise DomainError(f"effective error count q must exceed 1, got {q}")
    return 1.0 - 2.0 * delta * math.log2(q) - entropy_h2(2.0 * delta)


def rate_surface(q_grid, delta_grid) -> list[list[float]]:
    """Dense grid of R(q, delta) = 1 - H_q(2 delta), rows indexed by q."""
    return [[1.0 - entropy_hq(q, 2.0 * d) for d in delta_grid] for q in q_grid]


@dataclass(frozen=True)
class BoundCurve:
    mode: str  # "orthogonal" | "quasi"
    q: float
    samples: tuple[tuple[float, float], ...]  # (delta, R_raw)

    def __post_init__(self):
        if self.samples and self.samples[0][0] == 0.0 and abs(self.samples[0][1] - 1.0) > 1e-12:
            raise DomainError("R(0) must be 1")


def bound_curve(mode: str, q: float, deltas) -> BoundCurve:
    if mode == "orthogonal":
        samples = tuple((d, gvb_orthogonal(d)) for d in deltas)
        return BoundCurve(mode=mode, q=3.0, samples=samples)
    if mode == "quasi":
        samples = tuple((d, gvb_quasi(d, q)) for d in deltas)
        return BoundCurve(mode=mode, q=q, samples=samples)
    raise DomainError(f"unknown bound mode {mode!r}")


@dataclass(frozen=True)
class MetricsRow:
    p: float
    p_l: float
    fidelity_lb: float
    trace_ub: float
    suppression: float | None
    eta: float | None = None


def metric_row(p: float, p_l: float, eta: float | None = None) -> MetricsRow:
    """Fidelity/trace-distance bounds and the suppression factor at one p.

    F >= 1 - p_L and D <= sqrt(p_L) saturate the right Fuchs-van de Graaf
    inequality exactly: sqrt(1 - F) = sqrt(p_L) = D.
    """
    if not 0.0 <= p_l <= 1.0:
        raise DomainError(f"p_L {p_l} outside [0, 1]")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p {p} outside [0, 1]")
    fidelity = 1.0 - p_l
    trace = math.sqrt(p_l)
    supp = (p_l / p) if p > 0.0 else None
    if 1.0 - math.sqrt(fidelity) > trace + 1e-12:
        raise DomainError("Fuchs-van de Graaf sandwich violated")
    return MetricsRow(p=p, p_l=p_l, fidelity_lb=fidelity, trace_ub=trace, suppression=supp, eta=eta)


def scaling_exponent(grid) -> list[tuple[float, float | None]]:
    """eta(p) = -d ln p_L / d ln p by central differences in log-log space.

    Endpoints use one-sided differences; entries with non-positive p_L give
    None.  The grid must be sorted with at least three positive-p points.
    """
    pts = list(grid)
    if len(pts) < 3:
        raise DomainError("need at least 3 grid points")
    ps = [p for p, _ in pts]
    if any(p <= 0 for p in ps) or any(a >= b for a, b in zip(ps, ps[1:])):
        raise DomainError("grid must be strictly increasing with positive p")
    logs = [
        (math.log(p), math.log(pl) if pl > 0 else None)
        for p, pl in pts
    ]
    out: list[tuple[float, float | None]] = []
    for i, (p, _) in enumerate(pts):
        lo = max(i - 1, 0)
        hi = min(i + 1, len(pts) - 1)
        xl, yl = logs[lo]
        xh, yh = logs[hi]
        if yl is None or yh is None or xh == xl:
            out.append((p, None))
        else:
            out.append((p, (yh - yl) / (xh - xl)))
    return out


def fit_exponent(grid) -> float:
    """Least-squares slope of ln p_L against ln p over the whole grid."""
    pts = [(math.log(p), math.log(pl)) for p, pl in grid if p > 0 and pl > 0]
    if len(pts) < 2:
        raise DomainError("need at least 2 positive points to fit")
    n = len(pts)
    mx = sum(x for x, _ in pts) / n
    my = sum(y for _, y in pts) / n
    num = sum((x - mx) * (y - my) for x, y in pts)
    den = sum((x - mx) ** 2 for x, _ in pts)
    return num / den


def overhead(code: StabilizerCode) -> Fraction:
    """Physical-per-logical overhead n/k as an exact rational."""
    if code.k < 1:
        raise DomainError("overhead undefined for k = 0")
    return Fraction(code.n, code.k)
