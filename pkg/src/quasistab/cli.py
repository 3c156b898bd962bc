"""Command-line surface.

Subcommands: construct, verify, distance, simulate, exact, bounds, table1,
metrics.  Exit codes: 0 success, 1 verification/mathematical failure,
2 resource or input error.  Every randomized command either receives an
explicit --seed or records the one it generated in its output metadata.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    gvb_orthogonal,
    gvb_quasi,
    metric_row,
    overhead,
    rate_surface,
    scaling_exponent,
)
from .codefile import load_code, save_code
from .codes import build_by_selector
from .errors import BudgetError, DomainError, QuasistabError, VerificationError
from .noise import (
    NoiseConfig,
    build_decoder,
    count_harmful,
    decode_census,
    estimate_logical_error,
    exact_from_census,
)
from .overlap import (
    DEFAULT_EPSILON,
    DEFAULT_PHI,
    OverlapSpec,
    effective_distance,
    model_params_from_census,
    pl_leading,
    pl_quasi,
)
from .symplectic import min_weight_logical

SIM_HEADER = [
    "code", "n", "k", "d_or_bound", "p", "trials", "failures", "p_L",
    "ci_low", "ci_high", "fidelity_lb", "trace_ub", "suppression", "eta", "seed",
]
EXACT_HEADER = SIM_HEADER + [
    "q_I", "q_X", "q_Y", "q_Z", "q_logical", "q_uncorrected",
    "truncation_bound", "pl_model_orth", "pl_model_quasi",
]
BOUNDS_HEADER = ["mode", "q", "delta", "R_raw", "R_clamped"]
HARMFUL_HEADER = ["code", "w", "raw", "per_support_avg", "convention"]
TABLE1_HEADER = ["mapping", "n", "t", "d", "overhead", "min_weight", "exponent", "flags"]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return f"{float(value)!r}"
    return str(value)


def write_csv(path: str, header: list[str], rows, meta: list[tuple[str, object]]) -> None:
    lines = [f"# {key}={_fmt(val)}" for key, val in meta]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def parse_p_grid(spec: str) -> list[float]:
    """start:stop:scale:count with scale in {lin, log}; endpoints inclusive."""
    parts = spec.split(":")
    if len(parts) != 4:
        raise DomainError(f"p-grid {spec!r} must be start:stop:scale:count")
    try:
        start, stop = float(parts[0]), float(parts[1])
        scale, count = parts[2], int(parts[3])
    except ValueError as exc:
        raise DomainError(f"bad p-grid {spec!r}") from exc
    if count < 1:
        raise DomainError("p-grid count must be >= 1")
    if count == 1:
        return [start]
    if scale == "lin":
        step = (stop - start) / (count - 1)
        grid = [start + step * i for i in range(count)]
    elif scale == "log":
        if start <= 0 or stop <= 0:
            raise DomainError("log p-grid needs positive endpoints")
        ratio = (stop / start) ** (1.0 / (count - 1))
        grid = [start * ratio**i for i in range(count)]
    else:
        raise DomainError(f"unknown p-grid scale {scale!r}")
    grid[0], grid[-1] = start, stop
    return grid


def _load(path: str):
    if not Path(path).exists():
        raise DomainError(f"code file not found: {path}")
    return load_code(path)


def _distance_column(code) -> str:
    return code.distance.label().replace(" ", "")


def _eta_column(ps: list[float], pls: list[float]) -> list[float | None]:
    positive = [(p, pl) for p, pl in zip(ps, pls) if p > 0]
    if len(positive) < 3:
        return [None] * len(ps)
    eta_map = dict(scaling_exponent(positive))
    return [eta_map.get(p) if p > 0 else None for p in ps]


# ---------------------------------------------------------------------------
# Subcommands


def cmd_construct(args) -> int:
    selector = args.code
    if args.prime is not None:
        if selector not in ("qr", f"qr:{args.prime}"):
            raise DomainError("--prime only combines with the qr selector")
        selector = f"qr:{args.prime}"
    code = build_by_selector(selector, w_max=args.w_max, force=args.force_budget)
    if args.out:
        save_code(code, args.out)
    print(f"{code.name}: {code.params} (rank {code.rank}, distance {code.distance.label()})")
    return 0


def cmd_verify(args) -> int:
    code = _load(args.code)
    print(f"{code.name}: verified {code.params}")
    return 0


def cmd_distance(args) -> int:
    code = _load(args.code)
    scan = min_weight_logical(code, args.w_max, force=args.force_budget)
    if scan.exact is not None:
        print(f"{code.name}: exact distance {scan.exact} (witness {scan.witness})")
    else:
        print(f"{code.name}: no logical of weight <= {args.w_max}; d >= {scan.no_logical_below}")
    code = code.with_distance(scan.to_info(claimed=code.distance.claimed))
    if args.tau is not None:
        ov = OverlapSpec(args.epsilon, args.phi)
        d_eff = effective_distance(code, args.tau, ov)
        print(f"{code.name}: effective distance {d_eff} at tau={args.tau}, "
              f"epsilon={ov.epsilon}, phi={ov.phi}")
    if args.out:
        save_code(code, args.out)
    return 0


def cmd_simulate(args) -> int:
    code = _load(args.code)
    grid = parse_p_grid(args.p_grid)
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    w_max = args.w_max if args.w_max is not None else (code.correctable_weight() or 1)
    table = build_decoder(code, w_max)
    results = []
    for p in grid:
        cfg = NoiseConfig(p=p, trials=args.trials, seed=seed, workers=args.workers)
        results.append(estimate_logical_error(code, cfg, table=table))
    etas = _eta_column(grid, [r.p_l for r in results])
    rows = []
    for r, eta in zip(results, etas):
        m = metric_row(r.p, r.p_l, eta)
        rows.append([
            code.name, code.n, code.k, _distance_column(code), r.p, r.trials,
            r.failures_total, r.p_l, r.ci_low, r.ci_high,
            m.fidelity_lb, m.trace_ub, m.suppression, m.eta, r.seed,
        ])
    meta = [
        ("command", "simulate"), ("version", __version__), ("code", code.name),
        ("p_grid", args.p_grid), ("trials", args.trials), ("seed", seed),
        ("workers", args.workers), ("w_max", w_max),
        ("epsilon", args.epsilon), ("phi", args.phi),
    ]
    write_csv(args.out, SIM_HEADER, rows, meta)
    return 0


def cmd_exact(args) -> int:
    code = _load(args.code)
    grid = parse_p_grid(args.p_grid)
    w_max = args.w_max if args.w_max is not None else (code.correctable_weight() or 1)
    table = build_decoder(code, w_max)
    w_cut = args.w_cut if args.w_cut is not None else code.n
    census = decode_census(code, table, w_cut)
    params = model_params_from_census(code, census, args.epsilon)
    if args.c_lead is not None or args.c_leak is not None:
        from dataclasses import replace

        params = replace(
            params,
            c_lead=args.c_lead if args.c_lead is not None else params.c_lead,
            c_leak=args.c_leak if args.c_leak is not None else params.c_leak,
        )
    exacts = [exact_from_census(code, census, p) for p in grid]
    etas = _eta_column(grid, [e.p_l for e in exacts])
    rows = []
    for e, eta in zip(exacts, etas):
        m = metric_row(e.p, min(e.p_l, 1.0), eta)
        q = e.q
        rows.append([
            code.name, code.n, code.k, _distance_column(code), e.p, None, None,
            e.p_l, None, None, m.fidelity_lb, m.trace_ub, m.suppression, m.eta, None,
            q.get("I"), q.get("X"), q.get("Y"), q.get("Z"),
            q.get("logical"), q.get("uncorrected"),
            e.truncation_bound,
            pl_leading(e.p, params.t, params.c_lead),
            pl_quasi(e.p, params),
        ])
    meta = [
        ("command", "exact"), ("version", __version__), ("code", code.name),
        ("p_grid", args.p_grid), ("w_max", w_max), ("w_cut", w_cut),
        ("epsilon", args.epsilon), ("phi", args.phi),
        ("c_lead", params.c_lead), ("c_leak", params.c_leak), ("t", params.t),
    ]
    write_csv(args.out, EXACT_HEADER, rows, meta)
    if args.harmful_out:
        hrows = []
        for w in range(0, w_cut + 1):
            import math as _math

            raw = census.failures(w)
            per = raw / _math.comb(code.n, w) if w else 0.0
            hrows.append([code.name, w, raw, per, "raw-total"])
        write_csv(args.harmful_out, HARMFUL_HEADER, hrows,
                  [("command", "exact-harmful"), ("version", __version__),
                   ("code", code.name), ("w_max", w_max), ("w_cut", w_cut)])
    return 0


def cmd_bounds(args) -> int:
    rows = []
    if args.mode == "2d":
        deltas = [0.25 * i / (args.steps - 1) for i in range(args.steps)]
        for d in deltas:
            r = gvb_orthogonal(d)
            rows.append(["orthogonal", 3.0, d, r, max(r, 0.0)])
        for d in deltas:
            r = gvb_quasi(d, args.q)
            rows.append(["quasi", args.q, d, r, max(r, 0.0)])
    else:
        deltas = [0.25 * i / (args.steps - 1) for i in range(args.steps)]
        qs = [1.5 + (4.0 - 1.5) * i / (args.q_steps - 1) for i in range(args.q_steps)]
        surface = rate_surface(qs, deltas)
        for qi, q in enumerate(qs):
            for di, d in enumerate(deltas):
                r = surface[qi][di]
                rows.append(["surface", q, d, r, max(r, 0.0)])
    meta = [
        ("command", "bounds"), ("version", __version__), ("mode", args.mode),
        ("q", args.q), ("steps", args.steps), ("q_steps", args.q_steps),
    ]
    write_csv(args.out, BOUNDS_HEADER, rows, meta)
    return 0


_TABLE1_CLAIMS = [
    # mapping, selector, claimed (n, t, d, overhead, min_weight, exponent)
    ("3 -> 8", "eight-three", (8, 1, 3, "2.67x", 3, 2)),
    ("4 -> 10", "ten-four", (10, 1, 3, "2.5x", 3, 2)),
    ("1 -> 13", "qr:13", (13, 2, 5, "13x", 5, 3)),
    ("1 -> 29", "qr:29", (29, 5, 11, "29x", 11, 6)),
]


def cmd_table1(args) -> int:
    rows = []
    for mapping, selector, claim in _TABLE1_CLAIMS:
        code = build_by_selector(selector)
        d = code.distance.best()
        t = code.correctable_weight()
        ov = overhead(code)
        ov_text = f"{float(ov):.2f}x".replace(".00x", "x").replace("0x", "x") \
            if float(ov) != int(ov) else f"{int(ov)}x"
        flags = []
        if code.distance.exact is None:
            flags.append(f"d-unverified(floor {code.distance.lower_bound})")
        cn, ct, cd, cov, cmw, cexp = claim
        if code.n != cn or t != ct or d != cd or t + 1 != cexp:
            flags.append("mismatch-vs-claimed")
        rows.append([mapping, code.n, t, d, ov_text, d, t + 1, ";".join(flags)])
    widths = [max(len(str(r[i])) for r in rows + [TABLE1_HEADER]) for i in range(len(TABLE1_HEADER))]
    print("  ".join(h.ljust(w) for h, w in zip(TABLE1_HEADER, widths)))
    for row in rows:
        print("  ".join(str(c).ljust(w) for c, w in zip(row, widths)))
    if args.out:
        write_csv(args.out, TABLE1_HEADER, rows,
                  [("command", "table1"), ("version", __version__)])
    return 0


def cmd_metrics(args) -> int:
    path = Path(args.input)
    if not path.exists():
        raise DomainError(f"input CSV not found: {args.input}")
    header: list[str] | None = None
    data: list[list[str]] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        cells = line.split(",")
        if header is None:
            header = cells
        else:
            data.append(cells)
    if header is None or "p" not in header or "p_L" not in header:
        raise DomainError("input CSV must carry 'p' and 'p_L' columns")
    idx = {name: header.index(name) for name in header}

    def get(row, name, default=""):
        return row[idx[name]] if name in idx and idx[name] < len(row) else default

    by_code: dict[str, list[list[str]]] = {}
    for row in data:
        by_code.setdefault(get(row, "code", "?"), []).append(row)
    rows = []
    for code_name, group in by_code.items():
        ps = [float(get(r, "p")) for r in group]
        pls = [float(get(r, "p_L")) for r in group]
        etas = _eta_column(ps, pls)
        for r, p, pl, eta in zip(group, ps, pls, etas):
            m = metric_row(p, min(pl, 1.0), eta)
            rows.append([
                code_name, get(r, "n"), get(r, "k"), get(r, "d_or_bound"), p,
                get(r, "trials"), get(r, "failures"), pl,
                get(r, "ci_low"), get(r, "ci_high"),
                m.fidelity_lb, m.trace_ub, m.suppression, m.eta, get(r, "seed"),
            ])
    meta = [("command", "metrics"), ("version", __version__), ("input", args.input)]
    write_csv(args.out, SIM_HEADER, rows, meta)
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    fmt_cls = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="quasistab",
        description="Quasi-orthogonal stabilizer codes: construction, verification, "
                    "and depolarizing-noise evaluation.",
        formatter_class=fmt_cls,
    )
    parser.add_argument("--version", action="version", version=f"quasistab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str):
        return sub.add_parser(name, help=help_text, formatter_class=fmt_cls)

    c = add("construct", "build a code and write a code file")
    c.add_argument("--code", required=True,
                   help="five | eight-three | ten-four | qr:<prime> | mpc:<fixture>")
    c.add_argument("--prime", type=int, default=None,
                   help="prime for the qr selector (same as qr:<prime>)")
    c.add_argument("--out", help="output code file")
    c.add_argument("--w-max", type=int, default=None, help="distance search depth")
    c.add_argument("--force-budget", action="store_true", help="override enumeration budgets")
    c.set_defaults(func=cmd_construct)

    v = add("verify", "load a code file and re-run all checks")
    v.add_argument("--code", required=True)
    v.set_defaults(func=cmd_verify)

    d = add("distance", "bounded minimum-weight logical search")
    d.add_argument("--code", required=True)
    d.add_argument("--w-max", type=int, required=True)
    d.add_argument("--force-budget", action="store_true")
    d.add_argument("--tau", type=float, default=None,
                   help="also compute the effective distance at this threshold")
    d.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    d.add_argument("--phi", type=float, default=DEFAULT_PHI)
    d.add_argument("--out", help="write the updated code file here")
    d.set_defaults(func=cmd_distance)

    s = add("simulate", "Monte Carlo p_L over a p-grid")
    s.add_argument("--code", required=True)
    s.add_argument("--p-grid", required=True, help="start:stop:scale:count, scale lin|log")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--w-max", type=int, default=None)
    s.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    s.add_argument("--phi", type=float, default=DEFAULT_PHI)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    e = add("exact", "exact enumeration p_L over a p-grid")
    e.add_argument("--code", required=True)
    e.add_argument("--p-grid", required=True)
    e.add_argument("--w-max", type=int, default=None, help="decoder table depth")
    e.add_argument("--w-cut", type=int, default=None, help="census truncation weight")
    e.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    e.add_argument("--phi", type=float, default=DEFAULT_PHI)
    e.add_argument("--c-lead", type=float, default=None)
    e.add_argument("--c-leak", type=float, default=None)
    e.add_argument("--harmful-out", help="also write the H_w census CSV here")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_exact)

    b = add("bounds", "GVB curves (2d) or rate surface (3d)")
    b.add_argument("--mode", choices=["2d", "3d"], default="2d")
    b.add_argument("--q", type=float, default=2.0, help="effective error types for the quasi series")
    b.add_argument("--steps", type=int, default=512)
    b.add_argument("--q-steps", type=int, default=64)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bounds)

    t = add("table1", "live-computed parameter table with claim diffs")
    t.add_argument("--out", help="also write the table as CSV")
    t.set_defaults(func=cmd_table1)

    m = add("metrics", "recompute metric columns from a results CSV")
    m.add_argument("--input", required=True)
    m.add_argument("--out", required=True)
    m.set_defaults(func=cmd_metrics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (BudgetError, DomainError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuasistabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
