import filecmp

import numpy as np
import pytest

from bellbath.runner.cli import main
from bellbath.runner.config import ConfigError, ScenarioConfig, load_config, parse_config
from bellbath.runner.esd import detect_esd
from bellbath.runner.presets import PRESETS, get_preset
from bellbath.runner.reproduce import TARGETS, reproduction_grid
from bellbath.runner.scenario import COLUMNS, read_csv, run_scenario, write_csv
from bellbath.states import InitialState

SMALL = """\
name = small
gamma = 0.6
fock_dim = 12
T = 1.0
t_max = 3.0
n_points = 16
leakage_tol = 1.0   # tiny bath: leakage is not the point here
"""


def _small(tmp_path, extra=""):
    path = tmp_path / "small.cfg"
    path.write_text(SMALL + f"output = {tmp_path / 'out'}\n" + extra)
    return path


def test_parse_defaults_and_values():
    cfg = parse_config(SMALL)
    assert cfg.name == "small" and cfg.fock_dim == 12 and cfg.N is None
    assert cfg.initial == InitialState("e1")
    assert cfg.sweep_axis is None and len(cfg.points()) == 1
    cfg = parse_config("N = 40\ninitial = e3:theta=0.5\ndt = 0.01\ncouple_b = yes\n")
    assert cfg.N == 40 and cfg.initial == InitialState("e3", 0.5)
    assert cfg.dt == 0.01 and cfg.couple_b


@pytest.mark.parametrize("text, needle", [
    ("gamma = 0.6\nbogus = 1\n", ":2: unknown field 'bogus'"),
    ("gamma = abc\n", ":1: field 'gamma'"),
    ("gamma\n", ":1: expected 'key = value'"),
    ("[sweep]\naxis = mu0\nvalues = 1\n", ":2: field 'axis'"),
    ("[sweep]\naxis = T\n", "needs both"),
    ("[sweep]\naxis = T\nvalues = \n", "'values'"),
    ("t_max = -1\n", "'t_max'"),
    ("n_points = 1\n", "'n_points'"),
    ("gamma = 0.1\ngamma = 0.2\n", ":2: field 'gamma' given twice"),
    ("[other]\n", "unknown section"),
    ("gamma = 2\n", "gamma"),
    ("N = 10\nfock_dim = 20\n", "fock_dim"),
])
def test_parse_errors_name_line_and_field(text, needle):
    with pytest.raises(ConfigError) as info:
        parse_config(text, source="x.cfg")
    assert needle in str(info.value)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_config_round_trip(name):
    cfg = get_preset(name)
    assert parse_config(cfg.to_text()) == cfg


def test_preset_point_counts():
    assert [v for v, _ in get_preset("fig1").points()] == [0.0, 0.2, 0.6, 1.0]
    fig5 = get_preset("fig5")
    assert [v for v, _ in fig5.points()] == [0.2, 1.0, 5.0]
    assert all(p.N == 40 and p.gamma == 0.6 for _, p in fig5.points())
    fig3 = get_preset("fig3")
    assert fig3.sweep_axis == "g" and [p.g for _, p in fig3.points()] == [2.0, 4.0, 8.0]


def test_single_value_sweep_gives_single_csv(tmp_path):
    path = _small(tmp_path, "[sweep]\naxis = gamma\nvalues = 0.2\n")
    result = run_scenario(load_config(path))
    assert [p.name for p in result.paths] == ["small_gamma=0.2.csv"]
    assert result.gates_ok


def test_csv_columns_and_round_trip(tmp_path):
    result = run_scenario(load_config(_small(tmp_path)))
    traj = result.points[0].trajectory
    back = read_csv(result.paths[0])
    assert open(result.paths[0]).read().count(",".join(COLUMNS)) == 1
    table = traj.table()
    printed = np.array([[float("%.15g" % x) for x in row] for row in table])
    assert np.array_equal(back.table(), printed)
    assert back.header["fock_dim"] == "12" and back.header["initial"] == "e1"
    # writing the parsed data again is a fixed point
    again = write_csv(tmp_path / "again.csv", back)
    assert np.array_equal(read_csv(again).table(), back.table())


def test_manifest_rerun_identical(tmp_path):
    path = _small(tmp_path, "[sweep]\naxis = T\nvalues = 0.5, 2\n")
    first = run_scenario(load_config(path))
    rerun = run_scenario(load_config(first.manifest), output=tmp_path / "rerun")
    for a, b in zip(first.paths, rerun.paths):
        assert a.name == b.name
        assert filecmp.cmp(a, b, shallow=False)


def test_parallel_matches_serial(tmp_path):
    cfg = load_config(_small(tmp_path, "[sweep]\naxis = gamma\nvalues = 1.0, 0.0, 0.6\n"))
    serial = run_scenario(cfg, workers=1, output=tmp_path / "serial")
    parallel = run_scenario(cfg, workers=3, output=tmp_path / "parallel")
    for a, b in zip(serial.paths, parallel.paths):
        assert filecmp.cmp(a, b, shallow=False)


def test_group_columns(tmp_path):
    result = run_scenario(load_config(_small(tmp_path)))
    traj = result.points[0].trajectory
    assert traj.C[0] == pytest.approx(1.0, abs=1e-12)
    assert traj.Fd_group1[0] == pytest.approx(1.0, abs=1e-12)
    assert traj.Fd_group2[0] == pytest.approx(1.0, abs=1e-12)


def test_cli_exit_codes(tmp_path, capsys):
    good = _small(tmp_path)
    assert main(["run", str(good)]) == 0
    assert main(["sweep", str(good)]) == 2  # no [sweep] section
    strict = tmp_path / "strict.cfg"
    strict.write_text(good.read_text().replace("leakage_tol = 1.0", "leakage_tol = 1e-30"))
    assert main(["run", str(strict)]) == 1
    assert "GATE FAILED" in capsys.readouterr().out
    bad = tmp_path / "bad.cfg"
    bad.write_text("gamma = 7\n")
    assert main(["run", str(bad)]) == 2
    assert main(["run", str(tmp_path / "missing.cfg")]) == 2


def test_cli_presets(capsys):
    assert main(["presets", "list"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in PRESETS)
    assert main(["presets", "emit", "fig5"]) == 0
    assert parse_config(capsys.readouterr().out) == get_preset("fig5")


def test_esd_examples():
    t = np.arange(8.0)
    assert detect_esd(t, np.ones(8)) == []
    c = np.array([1, 0.5, 0, 0, 0.2, 0, 0, 0])
    first, last = detect_esd(t, c)
    assert (first.onset, first.end, first.revival) == (2.0, 3.0, 4.0)
    assert not first.open
    assert (last.onset, last.end) == (5.0, 7.0) and last.open
    # tiny positive values are not death
    assert detect_esd(t[:3], [1, 1e-300, 1]) == []


def test_reproduction_grid_contains_quoted_times():
    grid = reproduction_grid([tg.time for tg in TARGETS])
    assert grid[0] == 0 and np.all(np.diff(grid) > 0)
    for target in TARGETS:
        assert np.min(np.abs(grid - target.time)) <= 2e-3


def test_scenario_config_validation():
    with pytest.raises(ConfigError):
        ScenarioConfig(sweep_axis="gamma", sweep_values=())
    with pytest.raises(ConfigError):
        ScenarioConfig(mode="rk4")


def test_epsilon_window_brackets_count():
    from bellbath.runner.reproduce import epsilon_window
    from bellbath.thermal import retained_levels
    e = np.arange(30.0)
    lo, hi = epsilon_window(e, 1.0, 10)
    assert retained_levels(e, 1.0, lo) == 10
    assert retained_levels(e, 1.0, np.nextafter(hi, 0)) == 10
    assert retained_levels(e, 1.0, hi) == 9
