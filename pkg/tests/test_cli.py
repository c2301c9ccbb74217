import pytest

from evident.attributes import AttributeTable
from evident.cli import main
from evident.graphs import builtin


def test_datasets(capsys):
    assert main(["datasets"]) == 0
    out = capsys.readouterr().out
    assert "karate" in out and "nodes=105" in out


def test_run_writes_outputs(tmp_path, capsys):
    out = tmp_path / "res"
    code = main(["run", "--dataset", "karate", "--kinds", "numerical,evidential", "--scenarios", "1",
                 "--reps", "2", "--noise", "0,1", "--out", str(out)])
    assert code == 0
    assert (out / "results.csv").exists() and (out / "karate_scenario1.svg").exists()
    assert "4 cells written" in capsys.readouterr().out


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(f"dataset = karate\nkinds = evidential\nscenarios = 1\nreps = 9\nnoise = 0\nout = {tmp_path / 'o'}\n")
    assert main(["run", "--config", str(cfg), "--reps", "2"]) == 0
    rows = (tmp_path / "o" / "results.csv").read_text().splitlines()
    assert rows[1].split(",")[4] == "2"


@pytest.mark.parametrize(
    "argv",
    [["run", "--dataset", "karat", "--out", "x"], ["run", "--noise", "9..1"], ["run", "--reps", "many"]],
)
def test_run_errors_exit_nonzero(argv, tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) != 0
    assert "evident: error:" in capsys.readouterr().err


def test_nmi_command(tmp_path, capsys):
    (tmp_path / "p.csv").write_text("node,cluster\na,1\nb,1\nc,2\nd,2\n")
    (tmp_path / "t.csv").write_text("node,class\nd,x\nc,x\nb,y\na,y\n")
    assert main(["nmi", "--pred", str(tmp_path / "p.csv"), "--truth", str(tmp_path / "t.csv")]) == 0
    assert capsys.readouterr().out.strip() == "1.000000"
    (tmp_path / "t.csv").write_text("node,class\na,x\n")
    assert main(["nmi", "--pred", str(tmp_path / "p.csv"), "--truth", str(tmp_path / "t.csv")]) == 2


def test_attributes_command(tmp_path):
    path = tmp_path / "a.csv"
    assert main(["attributes", "--dataset", "dolphins", "--kind", "probabilistic", "--scenario", "2",
                 "--noise", "3", "--out", str(path)]) == 0
    table = AttributeTable.from_csv(path, builtin("dolphins")[1])
    assert table.N == 62 and table.scenario == 2
