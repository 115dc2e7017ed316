import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonclassical_sn import ProblemConfig
from nonclassical_sn.cli import EXIT_CONFIG, EXIT_IO, EXIT_NOT_CONVERGED, EXIT_OK, main
from nonclassical_sn.config import ConfigError, emit_config, from_mapping, parse_config

MINIMAL = """\
x = 20
cells = 200
n = 16
m = 10
c = 0.999
sigma_t = 1.0
model = "exponential"
q = 1.0
xi = 1e-6
solver = "si"
"""


@pytest.fixture
def minimal_file(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text(MINIMAL)
    return path


def test_minimal_file_is_valid(minimal_file):
    cfg = parse_config(minimal_file)
    assert cfg == ProblemConfig(x=20.0, cells=200, n=16, m=10, c=0.999, sigma_t=1.0,
                                model="exponential", q=1.0, xi=1e-6, solver="si")
    assert cfg.free_path_nodes == 10 and cfg.stopping_norm == "l2"


@pytest.mark.parametrize("change, key, message", [
    ({"c": 1.0}, "c", "c must lie in [0,1)"),
    ({"n": 3}, "n", "N must be even"),
    ({"cells": 0}, "cells", "positive"),
    ({"model": "tabulated"}, "model", "unknown model"),
    ({"m": 2.5}, "m", "integer"),
])
def test_rejects_invalid_values(minimal_file, change, key, message):
    with pytest.raises(ConfigError, match=message.replace("[", r"\[").replace(")", r"\)")) as info:
        parse_config(minimal_file, change)
    assert info.value.key == key


def test_unknown_and_missing_keys(minimal_file):
    with pytest.raises(ConfigError, match="unknown key") as info:
        parse_config(minimal_file, {"omega": 1.0})
    assert info.value.key == "omega"
    values = {"x": 20.0, "cells": 200}
    with pytest.raises(ConfigError, match="missing required field"):
        from_mapping(values)


configs = st.builds(
    ProblemConfig,
    x=st.floats(1e-3, 1e4), cells=st.integers(1, 5000), n=st.integers(1, 32).map(lambda k: 2 * k),
    m=st.integers(0, 80), c=st.floats(0.0, 1.0, exclude_max=True),
    sigma_t=st.floats(1e-3, 1e3), model=st.sampled_from(["exponential", "diffusion_mimic"]),
    q=st.floats(-1e3, 1e3), xi=st.floats(1e-14, 1e-1), max_iterations=st.integers(1, 10**6),
    solver=st.sampled_from(["si", "s2sa"]), fp_nodes=st.none() | st.integers(1, 512),
    stopping_norm=st.sampled_from(["l2", "pointwise"]),
)


@settings(max_examples=200)
@given(cfg=configs)
def test_round_trip(tmp_path_factory, cfg):
    path = tmp_path_factory.mktemp("rt") / "cfg.toml"
    path.write_text(emit_config(cfg))
    assert parse_config(path) == cfg


def _read_csv(path):
    return path.read_text(encoding="utf-8").splitlines()


def test_solve_writes_solution_and_report(tmp_path, capsys):
    code = main(["solve", "--preset", "figure", "--model", "exponential", "--c", "0.5",
                 "--output-dir", str(tmp_path), "--psi", "0,0", "--psi", "3,15"])
    assert code == EXIT_OK
    lines = _read_csv(tmp_path / "solution.csv")
    assert len(lines) == 401
    assert lines[0] == "x,phi,f,psi_0_0,psi_3_15"
    assert "\r" not in (tmp_path / "solution.csv").read_text()
    assert "converged" in capsys.readouterr().out
    report = _read_csv(tmp_path / "report.csv")
    assert report[0] == "iterations,converged,rho_estimate,wall_time"


@pytest.mark.parametrize("solver, iterations", [("si", 56), ("s2sa", 6)])
def test_solve_thick_slab_iteration_counts(tmp_path, solver, iterations):
    code = main(["solve", "--preset", "table", "--c", "0.8", "--solver", solver,
                 "--output-dir", str(tmp_path)])
    assert code == EXIT_OK
    row = _read_csv(tmp_path / "report.csv")[1].split(",")
    assert int(row[0]) == iterations and row[1] == "1"
    assert math.isfinite(float(row[2]))


def test_solve_from_config_file_with_flag_override(tmp_path, minimal_file):
    code = main(["solve", "--config", str(minimal_file), "--cells", "10", "--c", "0.3",
                 "--output-dir", str(tmp_path)])
    assert code == EXIT_OK
    assert len(_read_csv(tmp_path / "solution.csv")) == 21


def test_solution_is_bit_identical(tmp_path):
    args = ["solve", "--preset", "figure", "--model", "diffusion_mimic", "--cells", "40"]
    main(args + ["--output-dir", str(tmp_path / "a")])
    main(args + ["--output-dir", str(tmp_path / "b")])
    assert (tmp_path / "a/solution.csv").read_bytes() == (tmp_path / "b/solution.csv").read_bytes()


def test_scan(tmp_path, capsys):
    args = ["scan", "--preset", "figure", "--cells", "20", "--c-list", "0.5,0.9",
            "--solvers", "si,s2sa"]
    assert main(args + ["--output", str(tmp_path / "a.csv")]) == EXIT_OK
    assert main(args + ["--output", str(tmp_path / "b.csv")]) == EXIT_OK
    lines = _read_csv(tmp_path / "a.csv")
    assert lines[0] == "c,solver,iterations,rho_estimate,status"
    assert [line.split(",")[:2] for line in lines[1:]] == [
        ["0.5", "si"], ["0.5", "s2sa"], ["0.90000000000000002", "si"], ["0.90000000000000002", "s2sa"]]
    assert all(line.endswith("converged") for line in lines[1:])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    assert main(["scan", "--preset", "figure", "--c-list", ""]) == EXIT_OK
    assert capsys.readouterr().out == "c,solver,iterations,rho_estimate,status\n"


def test_scan_records_row_errors(tmp_path):
    assert main(["scan", "--preset", "figure", "--cells", "10", "--c-list", "0.5,1.5",
                 "--solvers", "si", "--output", str(tmp_path / "s.csv")]) == EXIT_OK
    rows = _read_csv(tmp_path / "s.csv")[1:]
    assert rows[0].endswith("converged")
    assert "error" in rows[1]


def test_exit_codes(tmp_path, minimal_file):
    assert main(["solve", "--config", str(minimal_file), "--c", "1.0"]) == EXIT_CONFIG
    assert main(["solve", "--config", str(tmp_path / "absent.toml")]) == EXIT_IO
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["solve", "--preset", "figure", "--cells", "10",
                 "--output-dir", str(blocker / "sub")]) == EXIT_IO
    assert main(["solve", "--preset", "figure", "--cells", "10", "--max_iterations", "2",
                 "--output-dir", str(tmp_path)]) == EXIT_NOT_CONVERGED
    with pytest.raises(SystemExit) as info:
        main(["solve", "--n", "four"])
    assert info.value.code == EXIT_CONFIG
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == EXIT_CONFIG


def test_verify_prints_one_line_per_check(capsys):
    code = main(["verify"])
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert all(line.startswith(("PASS", "FAIL")) for line in lines)
    assert code == (EXIT_OK if all(line.startswith("PASS") for line in lines) else EXIT_CONFIG)
