import io
import subprocess
import sys

import numpy as np
import pytest

from diamond_bath import sweep
from diamond_bath.bath import decoherence_factors
from diamond_bath.cli import EXIT_CONFIG, EXIT_NUMERICAL, main
from diamond_bath.config import parse_config
from diamond_bath.quadrature import QuadratureError
from diamond_bath.sweep import read_csv, run_scenario, to_csv_string

CONFIG = """
cluster.J = -1
cluster.Jz = 1
cluster.J0 = 1
bath.lambda = 0.01
bath.s = 2
bath.omega_c = 20
bath.beta = 1
grid.t_end = 4
grid.n_points = 9
sweep.param = s
sweep.values = 0.5, 3
outputs = negativity, gamma, delta, purity, negativity_isolated
"""


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(CONFIG)
    return path


def test_run_writes_csv(config_file, tmp_path):
    out = tmp_path / "out.csv"
    assert main(["run", str(config_file), "--out", str(out)]) == 0
    with open(out) as fh:
        table = read_csv(fh)
    assert table.columns == ["t", "s", "negativity", "gamma", "delta", "purity", "negativity_isolated"]
    assert len(table.rows) == 18
    # Sweep-major ordering, time ascending inside each block.
    assert list(table.column("s")) == [0.5] * 9 + [3.0] * 9
    np.testing.assert_allclose(table.column("t")[:9], np.linspace(0, 4, 9))
    sc = parse_config(CONFIG)
    row = table.select(s=3.0).rows[5]
    f = decoherence_factors(row[0], sc.bath.replace(s=3.0))
    assert (row[3], row[4]) == (f.gamma, f.delta)


def test_stdout_and_columns(config_file, capsys):
    assert main(["run", str(config_file), "--columns", "gamma,negativity"]) == 0
    table = read_csv(io.StringIO(capsys.readouterr().out))
    assert table.columns == ["t", "s", "gamma", "negativity"]


def test_csv_is_exact_round_trip():
    table = run_scenario(parse_config(CONFIG))
    again = read_csv(io.StringIO(to_csv_string(table)))
    assert again == table


def test_results_independent_of_jobs():
    sc = parse_config(CONFIG)
    assert to_csv_string(run_scenario(sc, jobs=1)) == to_csv_string(run_scenario(sc, jobs=3))


def test_factors_command(config_file, capsys):
    assert main(["factors", str(config_file)]) == 0
    table = read_csv(io.StringIO(capsys.readouterr().out))
    assert table.columns == ["t", "s", "gamma", "delta"]


def test_presets_listing(capsys):
    assert main(["presets"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert [line.split("\t")[0] for line in lines] == ["fig2", "fig3", "fig4", "fig5"]


def test_config_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text(CONFIG + "bath.colour = red\n")
    assert main(["run", str(bad)]) == EXIT_CONFIG
    assert "unknown key" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.cfg")]) == EXIT_CONFIG
    good = tmp_path / "good.cfg"
    good.write_text(CONFIG)
    assert main(["run", str(good), "--out", str(tmp_path / "no" / "dir.csv")]) == EXIT_CONFIG


def test_usage_errors_exit_2():
    for argv in (["preset", "fig9"], ["run"], ["run", "x.cfg", "--columns", "entropy"], ["run", "x", "--jobs", "0"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2


def test_quadrature_failure_exit_3(config_file, capsys, monkeypatch):
    def fail(t, bath, **kwargs):
        raise QuadratureError("forced", estimate=1.0, t=t)

    monkeypatch.setattr(sweep, "decoherence_factors", fail)
    assert main(["run", str(config_file)]) == EXIT_NUMERICAL
    assert "numerical failure" in capsys.readouterr().err


def test_module_entry_point(config_file):
    proc = subprocess.run(
        [sys.executable, "-m", "diamond_bath", "factors", str(config_file)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.splitlines()[0] == "t,s,gamma,delta"


def test_explicit_state_uses_general_path():
    amps = ", ".join(["1"] + ["0"] * 14 + ["1"])
    sc = parse_config(CONFIG + "initial.state = explicit\ninitial.amplitudes = " + amps + "\n")
    table = run_scenario(sc, columns=["negativity", "negativity_isolated", "purity"])
    n = table.column("negativity")
    assert np.all((n >= 0) & (n <= 0.5))
    # The four-spin GHZ-like start leaves the pair in diag(1/2, 0, 0, 1/2).
    assert table.rows[0][2:] == (0.0, 0.0, pytest.approx(0.5))


def test_psi_I_negativity_column_matches_general_path():
    from diamond_bath.dynamics import rho_ab_psiI
    from diamond_bath.entanglement import negativity_general

    sc = parse_config(CONFIG)
    table = run_scenario(sc, columns=["negativity"])
    for t, s_value, n in table.rows:
        f = decoherence_factors(t, sc.bath.replace(s=s_value))
        assert n == pytest.approx(negativity_general(rho_ab_psiI(t, sc.cluster, f)), abs=1e-12)
    assert table.select(t=0.0).column("negativity").tolist() == [0.0, 0.0]
