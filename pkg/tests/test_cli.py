import json
import math
import subprocess
import sys

import pytest

from qosc.cli import main, parse_grid, parse_tolerances, UsageError
from qosc.table import Table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_grid():
    assert parse_grid("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_grid("0.1, 0.3") == [0.1, 0.3]
    with pytest.raises(UsageError):
        parse_grid("1:0:0.1")
    with pytest.raises(UsageError):
        parse_grid("a,b")


def test_parse_tolerances():
    t = parse_tolerances(["all=1e-3", "gram=1e-4"])
    assert t["gram"] == 1e-4 and t["qnum"] == 1e-3
    with pytest.raises(UsageError):
        parse_tolerances(["bogus=1"])


def test_spectrum_undeformed_degeneracy(capsys):
    code, out, _ = run(capsys, "spectrum", "--w", "0", "--nmax", "2", "--lmax", "4")
    assert code == 0
    t = Table.from_csv(out)
    assert t.columns == ["n", "l", "kind", "branch", "alpha", "energy"]
    shell = [r for r in t.records() if abs(r["energy"] - 3.5) < 1e-12]
    assert sorted((r["n"], r["l"]) for r in shell) == [(0, 2), (1, 0)]


def test_spectrum_minus_level_and_multi_w(capsys):
    code, out, _ = run(capsys, "spectrum", "--w-range", "0.5:1:0.5", "--lmax", "0",
                       "--nmax", "0", "--format", "json")
    t = Table.from_json(out)
    assert t.columns[0] == "w"
    assert len(t.where(w=1.0, branch="minus")) == 1


def test_spectrum_circle_cqprime_l1_absent(capsys):
    code, out, _ = run(capsys, "spectrum", "--regime", "circle", "--w", "2.5",
                       "--casimir", "cqprime", "--lmax", "1")
    assert code == 0
    assert len(Table.from_csv(out).where(l=1)) == 0


def test_deterministic_output(capsys):
    argv = ["spectrum", "--w", "0.7", "--casimir", "both", "--lmax", "4"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_exit_codes(capsys):
    assert run(capsys, "spectrum", "--regime", "circle", "--w", str(math.pi / 3))[0] == 2
    assert run(capsys, "spectrum")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    code, out, _ = run(capsys, "check", "--group", "qnum", "--tol", "all=1e-30")
    assert code == 3
    assert out.strip().endswith("checks passed")


def test_check_default_passes(capsys):
    code, out, _ = run(capsys, "check", "--group", "spectrum,quadrupole")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_tolerance_precedence(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\ngroup = qnum\ntol = qnum=1e-30\n")
    monkeypatch.setenv("QOSC_TOL_OVERRIDE", "qnum=1")
    assert run(capsys, "check", "--config", str(cfg))[0] == 3
    assert run(capsys, "check", "--config", str(cfg), "--tol", "qnum=1")[0] == 0
    cfg.write_text("group = qnum\n")
    monkeypatch.setenv("QOSC_TOL_OVERRIDE", "qnum=1e-30")
    assert run(capsys, "check", "--config", str(cfg))[0] == 3


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("w = 1.0\nlmax = 0\nnmax = 0\n")
    t = Table.from_csv(run(capsys, "spectrum", "--config", str(cfg))[1])
    assert len(t) == 2
    t = Table.from_csv(run(capsys, "spectrum", "--config", str(cfg), "--w", "0")[1])
    assert len(t) == 1
    cfg.write_text("colour = red\n")
    assert run(capsys, "spectrum", "--config", str(cfg))[0] == 1


def test_wavefunction(capsys):
    code, out, _ = run(capsys, "wavefunction", "--w", "0", "--r", "1", "--theta", "1",
                       "--phi", "0")
    t = Table.from_csv(out)
    ref = math.sqrt(2 / math.gamma(1.5)) * math.exp(-0.5) / math.sqrt(4 * math.pi)
    assert t.column("re")[0] == pytest.approx(ref, rel=1e-12)
    assert run(capsys, "wavefunction", "--w", "1", "--l", "1", "--branch", "minus")[0] == 2


def test_quadrupole_and_figures(tmp_path, capsys):
    code, out, _ = run(capsys, "quadrupole", "--w", "1.0", "--nmax", "1")
    t = Table.from_csv(out)
    assert len(t) == 4
    out_file = tmp_path / "fig.json"
    assert run(capsys, "figures", "--figure", "2", "--w", "0.5,1.0", "--format", "json",
               "--out", str(out_file))[0] == 0
    data = json.loads(out_file.read_text())
    assert data["columns"] == ["w", "curve", "value"]
    assert len(data["rows"]) == 8


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qosc", "--version"], capture_output=True,
                         text=True)
    assert res.returncode == 0 and "qosc" in res.stdout
