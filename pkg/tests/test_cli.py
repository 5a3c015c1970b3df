import json

import pandas as pd
import pytest

import settings
from cli import main, parse_config
from errors import InputError


def test_j_expand(capsys):
    assert main(["j-expand", "--terms", "3"]) == 0
    out = capsys.readouterr().out
    assert "196884" in out
    assert "21493760" in out


def test_transitive(tmp_path):
    out = tmp_path / "transitive.json"
    assert main(["transitive", "--n", "2", "--out", str(out)]) == 0
    rows = json.loads(out.read_text(encoding="utf-8"))["classes"]
    assert {(r["a"], r["b"], r["d"]) for r in rows} == {(2, 0, 1), (1, 0, 2), (1, 1, 2)}


def test_transitive_over_cap():
    assert main(["transitive", "--n", "9"]) == 2


def test_pairs_csv_and_xlsx(tmp_path):
    csv_path = tmp_path / "pairs.csv"
    xlsx_path = tmp_path / "pairs.xlsx"
    assert main(["pairs", "--group", "S3", "--out", str(csv_path)]) == 0
    assert main(["pairs", "--group", "S3", "--out", str(xlsx_path)]) == 0
    assert len(pd.read_csv(csv_path, encoding="utf-8-sig")) == 8
    assert pd.read_excel(xlsx_path, engine="openpyxl")["class_size"].sum() == 18


def test_save_to_report_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "REPORT_DIR", tmp_path)
    assert main(["pairs", "--group", "Z/2", "--save"]) == 0
    assert len(list(tmp_path.glob("*_pairs.json"))) == 1


def test_faber_and_replicates(tmp_path):
    out = tmp_path / "faber.json"
    assert main(["faber", "--n", "2", "--j", "--order", "20", "--out", str(out)]) == 0
    assert json.loads(out.read_text(encoding="utf-8"))["coefficients"] == ["-393768", "0", "1"]
    out = tmp_path / "replicates.json"
    assert main(["replicates", "--nmax", "3", "--j", "--order", "40", "--out", str(out)]) == 0
    assert json.loads(out.read_text(encoding="utf-8"))["success"] is True


def test_replicates_failure_exits_one(tmp_path):
    series = tmp_path / "f.txt"
    series.write_text("denom=1 trunc=10\n-1 1\n1 1\n2 1\n", encoding="utf-8")
    assert main(["replicates", "--nmax", "2", "--series", str(series)]) == 1


def test_verify_hecke_equivalence_on_group():
    assert main(["verify", "hecke-equivalence", "--group", "Z/2", "--n-list", "2,3,4"]) == 0


def test_verify_hecke_equivalence_classical(tmp_path):
    out = tmp_path / "hecke.json"
    assert main(["verify", "hecke-equivalence", "--j", "--order", "40", "--n-list", "2,3", "--out", str(out)]) == 0
    labels = {row["check"] for run in json.loads(out.read_text(encoding="utf-8"))["runs"] for row in run["deltas"]}
    assert any("经典" in label for label in labels)


def test_fixture_then_hecke(tmp_path):
    fixture = tmp_path / "random.json"
    assert main(["fixture", "--kind", "random", "--group", "Z/2", "--seed", "5", "--out", str(fixture)]) == 0
    for impl in ("geometric", "combinatorial"):
        out = tmp_path / f"{impl}.json"
        assert main(["hecke", "--n", "2", "--impl", impl, "--norton", str(fixture), "--out", str(out)]) == 0
    geometric = json.loads((tmp_path / "geometric.json").read_text(encoding="utf-8"))["result"]
    combinatorial = json.loads((tmp_path / "combinatorial.json").read_text(encoding="utf-8"))["result"]
    assert geometric == combinatorial


def test_hecke_classical_on_j():
    assert main(["hecke", "--n", "3", "--impl", "classical", "--j", "--order", "40"]) == 0
    assert main(["hecke", "--n", "3", "--impl", "classical", "--group", "Z/2"]) == 2


def test_broken_fixture_fails_t_equivariance(tmp_path):
    fixture = tmp_path / "broken.json"
    report = tmp_path / "t.json"
    assert main(["fixture", "--kind", "broken", "--out", str(fixture)]) == 0
    assert main(["verify", "t-equivariance", "--norton", str(fixture), "--out", str(report)]) == 1
    assert report.exists()
    assert json.loads(report.read_text(encoding="utf-8"))["ok"] is False


def test_twisted_fixture_checks():
    assert main(["verify", "t-equivariance"]) == 0
    assert main(["verify", "twisted-support"]) == 0


@pytest.mark.parametrize("argv", [
    ["verify", "cocycles", "--n-max", "4"],
    ["verify", "counting", "--n-max", "4"],
    ["verify", "level1", "--group", "S3", "--t-order", "4"],
    ["verify", "numeric", "--tau", "2i", "1.2i"],
    ["verify", "replicability", "--order", "3", "--j-order", "40"],
    ["verify", "sym-exp-identity", "--group", "Z/2", "--t-order", "2", "--trunc", "6"],
    ["verify", "untwisted-replicability", "--n-max", "2", "--order", "20"],
    ["fricke", "--n", "5", "--g", "2"],
    ["cocycle", "--n", "6", "--s", "4", "--check-all"],
])
def test_passing_commands(argv):
    assert main(argv) == 0


def test_bad_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["hecke", "--n", "2", "--norton", str(bad)]) == 2
    assert main(["hecke", "--n", "2", "--norton", str(tmp_path / "missing.json")]) == 2
    assert main(["pairs", "--group", "Z/2", "--out", str(tmp_path / "report.txt")]) == 2
    assert main(["pairs", "--group", "GL(2,3)"]) == 2
    assert main(["fricke", "--n", "4", "--g", "2"]) == 2


def test_parse_config_validates_ranges():
    with pytest.raises(InputError):
        parse_config(["hecke", "--n", "0"])
    config = parse_config(["verify", "numeric", "--tau", "2i", "0.3+1.1i"])
    assert config.tau == (2j, complex(0.3, 1.1))
