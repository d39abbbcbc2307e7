import pytest

from epiage.cli import main
from epiage.io import read_trajectory

CONFIG = """
[parameters]
mu = 0.0125
beta = 60
phi = 60
gamma = 13
rho = 76.65
contact = 1

[grid]
age_max = 100
time_max = 0.5
age_steps = 200
time_steps = auto

[initial]
kind = bump
amplitude = 0.5
center = 20
width = 5

[sweep]
param = beta
values = 0.011, 60, 120
"""


@pytest.fixture()
def config_path(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text(CONFIG)
    return path


def test_thresholds_command(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["thresholds", "--config", str(config_path), "--out", str(out)]) == 0
    text = (out / "report.txt").read_text()
    assert "bistable-candidate" in text
    assert "R0 = 0.82" in text


def test_simulate_command(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["simulate", "--config", str(config_path), "--out", str(out)]) == 0
    field = read_trajectory(out / "trajectory.csv")
    assert field.ages.size == 201
    b_lines = (out / "b_series.csv").read_text().splitlines()
    assert b_lines[0] == "t,B"
    assert (out / "initial.csv").exists()
    assert (out / "report.txt").exists()


def test_steady_command(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["steady", "--config", str(config_path), "--out", str(out)]) == 0
    lines = (out / "steady_states.csv").read_text().splitlines()
    branches = {line.split(",")[0] for line in lines[1:]}
    assert branches == {"0", "1"}
    captured = capsys.readouterr()
    assert "fixed point" in captured.out


def test_bifurcation_command(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["bifurcation", "--config", str(config_path), "--out", str(out)]) == 0
    lines = (out / "diagram.csv").read_text().splitlines()
    # 0 + 2 + 1 branches across the swept transmission values
    assert len(lines) == 4


def test_preset_command_writes_artifacts(tmp_path):
    out = tmp_path / "preset_out"
    assert main(["preset", "extinction", "--out", str(out)]) == 0
    for name in (
        "report.txt",
        "initial.csv",
        "trajectory.csv",
        "b_series.csv",
        "steady_states.csv",
    ):
        assert (out / name).exists()
    assert "extinction" in (out / "report.txt").read_text()


def test_presets_are_deterministic(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    main(["preset", "extinction", "--out", str(out1)])
    main(["preset", "extinction", "--out", str(out2)])
    for name in ("trajectory.csv", "b_series.csv", "report.txt", "steady_states.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_missing_config_is_clean_error(tmp_path, capsys):
    code = main(["thresholds", "--config", str(tmp_path / "nope.ini")])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_bad_config_reports_line(config_path, tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text(CONFIG.replace("rho = 76.65", "rho = many"))
    code = main(["thresholds", "--config", str(bad), "--out", str(tmp_path / "o")])
    assert code == 2
    err = capsys.readouterr().err
    assert "line" in err
