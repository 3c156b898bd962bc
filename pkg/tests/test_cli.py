"""CLI contract tests: exit codes, schema golden headers, determinism."""

import math
from pathlib import Path

import pytest

from quasistab.cli import (
    BOUNDS_HEADER,
    EXACT_HEADER,
    HARMFUL_HEADER,
    SIM_HEADER,
    main,
    parse_p_grid,
)
from quasistab.errors import DomainError

DATA_FIXTURE = Path(__file__).parent.parent / "src" / "quasistab" / "data" / "eight_three.fixture"


def run(*argv) -> int:
    return main(list(argv))


def read_csv(path: Path):
    meta, header, rows = {}, None, []
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows


# --- p-grid parsing -------------------------------------------------------------


def test_p_grid_log():
    grid = parse_p_grid("0.001:0.3:log:25")
    assert len(grid) == 25
    assert grid[0] == 0.001 and grid[-1] == 0.3
    ratios = [b / a for a, b in zip(grid, grid[1:])]
    assert max(ratios) - min(ratios) < 1e-9


def test_p_grid_lin_and_single():
    assert parse_p_grid("0:0.3:lin:4") == pytest.approx([0.0, 0.1, 0.2, 0.3])
    assert parse_p_grid("0.05:0.9:log:1") == [0.05]


def test_p_grid_errors():
    for bad in ("0.1:0.2:log", "0:0.3:log:5", "a:b:lin:3", "0.1:0.2:geom:4"):
        with pytest.raises(DomainError):
            parse_p_grid(bad)


# --- construct / verify / distance ------------------------------------------------


@pytest.mark.parametrize("selector,params", [
    ("five", "[[5,1,3]]"),
    ("eight-three", "[[8,3,3]]"),
    ("ten-four", "[[10,4,3]]"),
    ("qr:13", "[[13,1,5]]"),
])
def test_construct_verify_round_trip(tmp_path, capsys, selector, params):
    out = tmp_path / "code.txt"
    assert run("construct", "--code", selector, "--out", str(out)) == 0
    assert params in capsys.readouterr().out
    assert run("verify", "--code", str(out)) == 0
    assert "verified" in capsys.readouterr().out


def test_construct_mpc_fixture(tmp_path, capsys):
    out = tmp_path / "mpc.code"
    assert run("construct", "--code", f"mpc:{DATA_FIXTURE}", "--out", str(out), "--w-max", "3") == 0
    assert "[[8,3,3]]" in capsys.readouterr().out


def test_construct_rejects_bad_prime(capsys):
    assert run("construct", "--code", "qr:11") == 2


def test_construct_prime_flag(capsys):
    assert run("construct", "--code", "qr", "--prime", "13") == 0
    assert "[[13,1,5]]" in capsys.readouterr().out
    assert run("construct", "--code", "five", "--prime", "13") == 2


def test_construct_unknown_selector():
    assert run("construct", "--code", "whatever") == 2


def test_verify_missing_file():
    assert run("verify", "--code", "/nonexistent/x.code") == 2


def test_verify_corrupted_file(tmp_path, five):
    from quasistab.codefile import dump_code

    path = tmp_path / "bad.code"
    path.write_text(dump_code(five).replace("11000|00101", "11000|00111"))
    assert run("verify", "--code", str(path)) == 1


def test_distance_command(tmp_path, capsys):
    code_path = tmp_path / "five.code"
    run("construct", "--code", "five", "--out", str(code_path))
    capsys.readouterr()
    assert run("distance", "--code", str(code_path), "--w-max", "3") == 0
    assert "exact distance 3" in capsys.readouterr().out


def test_distance_with_effective(tmp_path, capsys):
    code_path = tmp_path / "five.code"
    run("construct", "--code", "five", "--out", str(code_path))
    capsys.readouterr()
    assert run("distance", "--code", str(code_path), "--w-max", "3",
               "--tau", "0.1", "--epsilon", "0.1") == 0
    out = capsys.readouterr().out
    assert "effective distance 3" in out


def test_distance_budget_exit_code(tmp_path):
    code_path = tmp_path / "qr29.code"
    assert run("construct", "--code", "qr:29", "--out", str(code_path)) == 0
    # enumerating to w=13 on n=29 blows the default budget
    assert run("distance", "--code", str(code_path), "--w-max", "13") == 2


# --- simulate / exact ---------------------------------------------------------------


def test_simulate_schema_and_determinism(tmp_path, five):
    from quasistab.codefile import save_code

    code_path = tmp_path / "five.code"
    save_code(five, code_path)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["simulate", "--code", str(code_path), "--p-grid", "0.01:0.2:log:5",
            "--trials", "20000", "--seed", "7", "--workers", "2"]
    assert run(*args, "--out", str(out1)) == 0
    assert run(*args, "--out", str(out2)) == 0
    assert out1.read_bytes() == out2.read_bytes()
    meta, header, rows = read_csv(out1)
    assert header == SIM_HEADER
    assert len(rows) == 5
    assert meta["seed"] == "7"
    assert meta["epsilon"] == "0.05"  # documented default


def test_simulate_p0_row(tmp_path, five):
    from quasistab.codefile import save_code

    code_path = tmp_path / "five.code"
    save_code(five, code_path)
    out = tmp_path / "sim.csv"
    assert run("simulate", "--code", str(code_path), "--p-grid", "0:0.2:lin:3",
               "--trials", "1000", "--seed", "3", "--out", str(out)) == 0
    _, header, rows = read_csv(out)
    first = dict(zip(header, rows[0]))
    assert first["p"] == "0.0" and first["p_L"] == "0.0" and first["failures"] == "0"


def test_simulate_records_generated_seed(tmp_path, five):
    from quasistab.codefile import save_code

    code_path = tmp_path / "five.code"
    save_code(five, code_path)
    out = tmp_path / "sim.csv"
    assert run("simulate", "--code", str(code_path), "--p-grid", "0.1:0.1:lin:1",
               "--trials", "100", "--out", str(out)) == 0
    meta, header, rows = read_csv(out)
    seed = int(meta["seed"])
    assert all(int(dict(zip(header, r))["seed"]) == seed for r in rows)


def test_exact_schema_and_determinism(tmp_path, five):
    from quasistab.codefile import save_code

    code_path = tmp_path / "five.code"
    save_code(five, code_path)
    out1, out2 = tmp_path / "e1.csv", tmp_path / "e2.csv"
    h1 = tmp_path / "h1.csv"
    args = ["exact", "--code", str(code_path), "--p-grid", "0.01:0.3:log:7"]
    assert run(*args, "--out", str(out1), "--harmful-out", str(h1)) == 0
    assert run(*args, "--out", str(out2)) == 0
    assert out1.read_bytes() == out2.read_bytes()
    meta, header, rows = read_csv(out1)
    assert header == EXACT_HEADER
    assert len(rows) == 7
    _, hheader, hrows = read_csv(h1)
    assert hheader == HARMFUL_HEADER
    assert len(hrows) == 6  # w = 0..5


def test_exact_q_columns_sum_to_one(tmp_path, five):
    from quasistab.codefile import save_code

    code_path = tmp_path / "five.code"
    save_code(five, code_path)
    out = tmp_path / "e.csv"
    assert run("exact", "--code", str(code_path), "--p-grid", "0.1:0.1:lin:1",
               "--out", str(out)) == 0
    _, header, rows = read_csv(out)
    row = dict(zip(header, rows[0]))
    total = sum(float(row[c]) for c in ("q_I", "q_X", "q_Y", "q_Z") if row[c])
    assert total == pytest.approx(1.0, abs=1e-12)
    assert float(row["truncation_bound"]) == 0.0


# --- bounds / table1 / metrics ---------------------------------------------------------


def test_bounds_2d(tmp_path):
    out = tmp_path / "b.csv"
    assert run("bounds", "--mode", "2d", "--steps", "64", "--out", str(out)) == 0
    _, header, rows = read_csv(out)
    assert header == BOUNDS_HEADER
    assert len(rows) == 128
    by_mode = {}
    for r in rows:
        by_mode.setdefault(r[0], []).append(r)
    # delta = 0 rows have R = 1; dominance holds row-wise
    for mode, series in by_mode.items():
        assert float(series[0][3]) == 1.0
    for o, q in zip(by_mode["orthogonal"][1:], by_mode["quasi"][1:]):
        assert float(q[3]) > float(o[3])
    # clamped column never negative
    assert all(float(r[4]) >= 0.0 for r in rows)


def test_bounds_3d(tmp_path):
    out = tmp_path / "s.csv"
    assert run("bounds", "--mode", "3d", "--steps", "16", "--q-steps", "8",
               "--out", str(out)) == 0
    _, header, rows = read_csv(out)
    assert header == BOUNDS_HEADER and len(rows) == 16 * 8
    zeros = [r for r in rows if float(r[2]) == 0.0]
    assert all(float(r[3]) == 1.0 for r in zeros)


def test_table1_output(capsys):
    assert run("table1") == 0
    out = capsys.readouterr().out
    assert "3 -> 8" in out and "2.67x" in out
    assert "1 -> 29" in out and "29x" in out and "d-unverified" in out
    # exponent column is t+1 for every row
    lines = [l for l in out.splitlines() if "->" in l]
    assert len(lines) == 4


def test_metrics_command(tmp_path, five):
    from quasistab.codefile import save_code

    code_path = tmp_path / "five.code"
    save_code(five, code_path)
    sim = tmp_path / "sim.csv"
    run("simulate", "--code", str(code_path), "--p-grid", "0.01:0.2:log:5",
        "--trials", "5000", "--seed", "1", "--out", str(sim))
    out = tmp_path / "m.csv"
    assert run("metrics", "--input", str(sim), "--out", str(out)) == 0
    _, header, rows = read_csv(out)
    assert header == SIM_HEADER
    for r in rows:
        row = dict(zip(header, r))
        p_l = float(row["p_L"])
        assert float(row["fidelity_lb"]) == pytest.approx(1 - p_l)
        assert float(row["trace_ub"]) == pytest.approx(math.sqrt(p_l))


def test_metrics_missing_columns(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    assert run("metrics", "--input", str(bad), "--out", str(tmp_path / "o.csv")) == 2
