"""Acceptance gate: the primary criteria at their stated tolerances.

Each test prints one PASS/FAIL line per criterion (run with -s to see them
live).  Expensive artifacts (codes, tables, censuses) are shared per
session.
"""

import math
import time
from pathlib import Path

import mpmath
import pytest

from quasistab.bounds import (
    fit_exponent,
    gvb_orthogonal,
    gvb_quasi,
    metric_row,
    scaling_exponent,
)
from quasistab.cli import EXACT_HEADER, SIM_HEADER, main as cli_main, parse_p_grid
from quasistab.codefile import save_code
from quasistab.codes import quadratic_residue_code
from quasistab.noise import (
    NoiseConfig,
    build_decoder,
    decode_census,
    estimate_logical_error,
    exact_from_census,
    union_bound_pl,
    weight_probability,
)
from quasistab.overlap import OverlapSpec, QuasiModelParams, effective_distance, pl_leading, pl_quasi
from quasistab.symplectic import min_weight_logical

mpmath.mp.dps = 40


def check(name: str, ok: bool, detail: str = "") -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def censuses(small_codes, tables):
    out = {}
    for code in small_codes:
        cut = code.n if code.n <= 10 else 7
        out[code.name] = decode_census(code, tables[code.name], cut)
    return out


# --- 1. code parameters ------------------------------------------------------


def test_accept_code_parameters(five, eight3, ten4, qr13):
    check("code-params/five", (five.n, five.k, five.distance.exact) == (5, 1, 3),
          f"{five.params}")
    check("code-params/eight-three", (eight3.n, eight3.k, eight3.distance.exact) == (8, 3, 3),
          f"{eight3.params}")
    check("code-params/ten-four", (ten4.n, ten4.k, ten4.distance.exact) == (10, 4, 3),
          f"{ten4.params}")
    check("code-params/qr13", (qr13.n, qr13.k, qr13.distance.exact) == (13, 1, 5),
          f"{qr13.params}")
    t0 = time.perf_counter()
    qr29 = quadratic_residue_code(29)
    scan = min_weight_logical(qr29, 5, force=True)
    elapsed = time.perf_counter() - t0
    check(
        "code-params/qr29",
        qr29.k == 1 and scan.exact is None and scan.no_logical_below == 6 and elapsed < 300,
        f"k={qr29.k}, no logical below 6 certified in {elapsed:.1f}s (budget 300s)",
    )


# --- 2. Monte Carlo vs exact oracle -------------------------------------------


def test_accept_mc_vs_oracle(five, eight3, tables, censuses):
    for code in (five, eight3):
        table = tables[code.name]
        census = censuses[code.name]
        for p in (0.05, 0.1, 0.2):
            exact = exact_from_census(code, census, p).p_l
            cfg = NoiseConfig(p=p, trials=10**6, seed=20240542, workers=4)
            res = estimate_logical_error(code, cfg, table=table)
            sigma = math.sqrt(exact * (1 - exact) / cfg.trials)
            dev = abs(res.p_l - exact) / sigma
            check(
                f"mc-oracle/{code.name}/p={p}",
                dev < 3.0 and res.wall_time < 60.0,
                f"|mc-exact| = {dev:.2f} sigma, {res.wall_time:.2f}s (3 sigma, 60s budgets)",
            )


# --- 3. scaling exponents -------------------------------------------------------


def test_accept_scaling_exponents(small_codes, censuses):
    grid = parse_p_grid("0.001:0.01:log:9")
    want = {"five": (2.0, 0.15), "eight-three": (2.0, 0.15),
            "ten-four": (2.0, 0.15), "qr13": (3.0, 0.3)}
    for code in small_codes:
        census = censuses[code.name]
        pts = [(p, exact_from_census(code, census, p).p_l) for p in grid]
        slope = fit_exponent(pts)
        target, tol = want[code.name]
        check(
            f"scaling/{code.name}",
            abs(slope - target) <= tol,
            f"fitted eta = {slope:.4f}, target {target} +/- {tol}",
        )
    qr29 = quadratic_residue_code(29)
    t = qr29.correctable_weight()
    params = QuasiModelParams(t=t, c_lead=1.0, c_leak=0.0, epsilon=0.0)
    slope = fit_exponent([(p, pl_quasi(p, params)) for p in grid])
    check(
        "scaling/qr29-analytic",
        t + 1 == 6 and abs(slope - 6.0) < 1e-9,
        f"t+1 = {t + 1} asserted by construction (claimed d=11); model slope {slope:.4f}",
    )


# --- 4. union bound -------------------------------------------------------------


def test_accept_union_bound(small_codes, tables, censuses):
    ps = (0.001, 0.01, 0.05, 0.1, 0.2, 0.3)
    for code in small_codes:
        census = censuses[code.name]
        t = code.correctable_weight()
        harmful = {
            w: census.failures(w) / math.comb(code.n, w)
            for w in census.counts
            if w >= 1
        }
        ok = True
        detail = []
        for p in ps:
            res = exact_from_census(code, census, p)
            exact_upper = res.p_l + res.truncation_bound
            bound = union_bound_pl(code, p, harmful, w_start=t + 1)
            if bound < exact_upper:
                ok = False
                detail.append(f"p={p}: bound {bound} < exact {exact_upper}")
        zeros = all(census.failures(w) == 0 for w in range(t + 1))
        check(
            f"union-bound/{code.name}",
            ok and zeros,
            "; ".join(detail) or f"bound dominates on grid; H_w = 0 for w <= {t}",
        )


# --- 5. GVB dominance ------------------------------------------------------------


def test_accept_gvb():
    def mp_h2(x):
        x = mpmath.mpf(x)
        return -x * mpmath.log(x, 2) - (1 - x) * mpmath.log(1 - x, 2)

    spot_orth = float(1 - 2 * mpmath.mpf("0.1") * mpmath.log(3, 2) - mp_h2("0.2"))
    spot_quasi = float(1 - 2 * mpmath.mpf("0.1") - mp_h2("0.2"))
    ok_dom = all(
        gvb_quasi(0.25 * i / 512, 2.0) - gvb_orthogonal(0.25 * i / 512) > 0
        for i in range(1, 513)
    )
    ok_spots = (
        abs(gvb_orthogonal(0.1) - spot_orth) < 1e-12
        and abs(spot_orth - (-0.0389)) < 1e-4
        and abs(gvb_quasi(0.1, 2.0) - spot_quasi) < 1e-12
        and abs(spot_quasi - 0.0781) < 1e-4
    )
    ok_reduce = all(
        abs(gvb_quasi(0.2499 * i / 999, 3.0) - gvb_orthogonal(0.2499 * i / 999)) <= 1e-12
        for i in range(1000)
    )
    check("gvb/dominance", ok_dom, "quasi(q=2) > orthogonal on 512-point grid")
    check("gvb/spot-values", ok_spots,
          f"R_orth(0.1) = {gvb_orthogonal(0.1):.6f}, R_quasi(0.1,2) = {gvb_quasi(0.1, 2):.6f}")
    check("gvb/q3-reduction", ok_reduce, "|quasi(q=3) - orthogonal| <= 1e-12 on 1000 points")


# --- 6. metrics consistency ------------------------------------------------------


def test_accept_metrics_consistency(five, censuses):
    rows = []
    for p in parse_p_grid("0.001:0.3:log:25"):
        p_l = exact_from_census(five, censuses["five"], p).p_l
        rows.append(metric_row(p, min(p_l, 1.0)))
    fvdg = all(
        1 - math.sqrt(r.fidelity_lb) <= r.trace_ub + 1e-12
        and r.trace_ub <= math.sqrt(1 - r.fidelity_lb) + 1e-8
        for r in rows
    )
    check("metrics/fvdg", fvdg, f"{len(rows)} emitted rows satisfy the sandwich")

    synth = [(p, 0.37 * p**3) for p in parse_p_grid("0.001:0.01:log:12")]
    etas = [eta for _, eta in scaling_exponent(synth)[1:-1]]
    ok_eta = all(abs(e - 3.0) < 1e-6 for e in etas)
    check("metrics/eta-synthetic", ok_eta, f"max |eta - 3| = {max(abs(e - 3) for e in etas):.2e}")

    params = QuasiModelParams(t=1, c_lead=2.5, c_leak=7.0, epsilon=0.0)
    grid = parse_p_grid("0.0001:0.3:log:40")
    bitwise = all(pl_quasi(p, params) == pl_leading(p, 1, 2.5) for p in grid)
    check("metrics/model-eps0-bitwise", bitwise, "pl_quasi(eps=0) == leading model, 40 points")


# --- 7. figure-input substitute criteria --------------------------------------------


def test_accept_figure_inputs(tmp_path, small_codes, five):
    # The paper's 30-40% / two-orders-of-magnitude figure claims are not
    # reproducible (epsilon, leakage coefficient and decoder unspecified);
    # the substituted property set runs with the documented defaults.
    out_dir = tmp_path
    produced = []
    for code in small_codes:
        path = out_dir / f"{code.name}.code"
        save_code(code, path)
        sim = out_dir / f"sim_{code.name}.csv"
        rc = cli_main([
            "simulate", "--code", str(path), "--p-grid", "0.01:0.3:log:8",
            "--trials", "20000", "--seed", "11", "--out", str(sim),
        ])
        produced.append(rc == 0 and _csv_complete(sim, SIM_HEADER, 8))
        if code.n <= 13:
            exact = out_dir / f"exact_{code.name}.csv"
            cut = [] if code.n <= 10 else ["--w-cut", "7"]
            rc = cli_main([
                "exact", "--code", str(path), "--p-grid", "0.01:0.3:log:8",
                "--epsilon", "0.05", "--phi", "0.0", "--out", str(exact), *cut,
            ])
            produced.append(rc == 0 and _csv_complete(exact, EXACT_HEADER, 8))
    qr29 = quadratic_residue_code(29)
    p29 = out_dir / "qr29.code"
    save_code(qr29, p29)
    sim29 = out_dir / "sim_qr29.csv"
    rc = cli_main([
        "simulate", "--code", str(p29), "--p-grid", "0.05:0.3:log:4",
        "--trials", "5000", "--seed", "11", "--w-max", "3", "--out", str(sim29),
    ])
    produced.append(rc == 0 and _csv_complete(sim29, SIM_HEADER, 4))
    bounds_csv = out_dir / "bounds.csv"
    rc = cli_main(["bounds", "--mode", "2d", "--steps", "128", "--out", str(bounds_csv)])
    produced.append(rc == 0)
    check("figure-inputs/pipelines", all(produced),
          f"{len(produced)} CSV pipelines complete with defaults eps=0.05, phi=0")

    ok_deff = all(
        effective_distance(code, 1e-9, OverlapSpec(0.0)) == code.distance.exact
        for code in small_codes
        if code.n <= 13
    )
    check("figure-inputs/deff-eps0", ok_deff, "d_eff(eps=0) = d on all n <= 13 fixtures")

    params = QuasiModelParams(t=2, c_lead=4.0, c_leak=1.5, epsilon=0.05)
    tiny = [(p, pl_quasi(p, params)) for p in parse_p_grid("1e-09:1e-07:log:7")]
    etas = [eta for _, eta in scaling_exponent(tiny)[1:-1]]
    ok_leak = all(abs(e - params.t) < 0.01 for e in etas)
    check("figure-inputs/eta-leakage-limit", ok_leak,
          f"eta(0+) -> t = {params.t} on synthetic leakage grid (max dev "
          f"{max(abs(e - params.t) for e in etas):.4f})")


def _csv_complete(path: Path, header, nrows: int) -> bool:
    lines = [l for l in path.read_text().splitlines() if l and not l.startswith("#")]
    if not lines or lines[0].split(",") != header:
        return False
    body = lines[1:]
    if len(body) != nrows:
        return False
    return all(len(r.split(",")) == len(header) for r in body)


# --- 8. determinism -----------------------------------------------------------------


def test_accept_determinism(tmp_path, five):
    path = tmp_path / "five.code"
    save_code(five, path)
    outs = []
    for tag in ("a", "b"):
        sim = tmp_path / f"det_{tag}.csv"
        rc = cli_main([
            "simulate", "--code", str(path), "--p-grid", "0.001:0.3:log:10",
            "--trials", "100000", "--seed", "42", "--workers", "3", "--out", str(sim),
        ])
        assert rc == 0
        outs.append(sim.read_bytes())
    check("determinism/simulate", outs[0] == outs[1], "byte-identical CSV bodies")
    outs = []
    for tag in ("a", "b"):
        ex = tmp_path / f"dete_{tag}.csv"
        rc = cli_main([
            "exact", "--code", str(path), "--p-grid", "0.001:0.3:log:10",
            "--out", str(ex),
        ])
        assert rc == 0
        outs.append(ex.read_bytes())
    check("determinism/exact", outs[0] == outs[1], "byte-identical CSV bodies")
