import datetime
import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

import reports
import settings
from errors import InputError
from exact_arith import root_of_unity
from finite_groups import pair_classes, symmetric_group
from fixtures import twisted_z2_fixture
from norton import check_T_equivariance
from qseries import PuiseuxSeries, j_expansion


def test_default_json_serializer():
    payload = {
        "fraction": Fraction(3, 4),
        "root": root_of_unity(4, 1),
        "complex": 1 + 2j,
        "count": np.int64(7),
        "date": datetime.date(2024, 7, 16),
        "path": Path("reports/a.json"),
        "series": PuiseuxSeries({-1: 1}, trunc=2),
    }
    decoded = json.loads(json.dumps(payload, default=reports.default_json_serializer))
    assert decoded["fraction"] == "3/4"
    assert decoded["root"] == "[0,1;order=4]"
    assert decoded["complex"] == [1.0, 2.0]
    assert decoded["count"] == 7
    assert decoded["date"] == "2024-07-16"
    assert decoded["series"]["trunc"] == "2"
    with pytest.raises(TypeError):
        reports.default_json_serializer(object())


def test_series_table_limit():
    table = reports.series_table(j_expansion(10), limit=3)
    assert list(table.columns) == ["exponent", "coefficient"]
    assert table["coefficient"].tolist() == ["1", "196884", "21493760"]


def test_pair_class_table():
    G = symmetric_group(3)
    table = reports.pair_class_table(G, pair_classes(G))
    assert len(table) == 8
    assert table["class_size"].sum() == 18


def test_t_report_table():
    f = twisted_z2_fixture()
    table = reports.t_report_table(f.group, check_T_equivariance(f))
    assert table["agrees"].all()
    assert set(table["root_exponent"]) == {"0", "1/2"}


def test_print_table(capsys):
    reports.print_table(pd.DataFrame(), "空")
    out = capsys.readouterr().out
    assert "== 空 ==" in out
    assert "(空表)" in out


@pytest.mark.parametrize("suffix", [".json", ".csv", ".xlsx"])
def test_save_report(tmp_path, suffix):
    table = pd.DataFrame([{"n": 2, "ok": True}, {"n": 3, "ok": False}])
    path = reports.save_report(tmp_path / "nested" / f"report{suffix}", table, {"rows": [Fraction(1, 2)]})
    assert path.exists()
    if suffix == ".json":
        assert json.loads(path.read_text(encoding="utf-8")) == {"rows": ["1/2"]}
    elif suffix == ".csv":
        assert pd.read_csv(path, encoding="utf-8-sig")["n"].tolist() == [2, 3]
    else:
        assert pd.read_excel(path, engine="openpyxl")["n"].tolist() == [2, 3]


def test_save_report_rejects_unknown_suffix(tmp_path):
    with pytest.raises(InputError):
        reports.save_report(tmp_path / "report.txt", pd.DataFrame(), {})


def test_default_report_path(monkeypatch, tmp_path):
    monkeypatch.setattr(settings, "REPORT_DIR", tmp_path)
    path = reports.default_report_path("verify_cocycles")
    assert path.parent == tmp_path
    assert path.name.endswith("_verify_cocycles.json")
