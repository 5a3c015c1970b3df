"""
报告表格与结构化输出。

每个验证结果都转换为一个 pandas DataFrame（打印到标准输出或写成 csv/xlsx）
以及一个可 JSON 序列化的字典；比较级数的行都带有截断位置。
"""
import datetime
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional, Union

import numpy as np
import pandas as pd

import settings
from errors import InputError
from exact_arith import CycloElem
from finite_groups import Group, PairClass
from qseries import EXACT, PuiseuxSeries
from series_io import format_trunc, series_to_dict

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)


def default_json_serializer(obj):
    """json.dump 的 default 钩子：Fraction、分圆元素、级数、复数与 numpy 标量转成可序列化的值。"""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, CycloElem):
        return str(obj)
    if isinstance(obj, PuiseuxSeries):
        return series_to_dict(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, (datetime.datetime, datetime.date)):
        return obj.isoformat()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError("Type %s not serializable" % type(obj))


def format_pair(G: Group, pair) -> str:
    return f"({G.format_element(pair[0])}, {G.format_element(pair[1])})"


def _trunc_cell(trunc) -> str:
    return format_trunc(trunc) if trunc == EXACT else str(Fraction(trunc))


# --- 表格 ---
def series_table(s: PuiseuxSeries, limit: Optional[int] = None) -> pd.DataFrame:
    rows = [{"exponent": str(e), "coefficient": str(c)} for e, c in s.items()]
    if limit is not None:
        rows = rows[:limit]
    return pd.DataFrame(rows, columns=["exponent", "coefficient"])


def norton_table(f, limit: int = 8) -> pd.DataFrame:
    """每个类取前 limit 项。"""
    G = f.group
    rows = []
    for pc in f.classes():
        s = f.values[pc]
        for e, c in list(s.items())[:limit]:
            rows.append({"class": format_pair(G, pc.representative), "exponent": str(e),
                         "coefficient": str(c), "trunc": _trunc_cell(s.trunc)})
    return pd.DataFrame(rows, columns=["class", "exponent", "coefficient", "trunc"])


def support_table(G: Group, report) -> pd.DataFrame:
    rows = [{
        "class": format_pair(G, e.pair_class.representative),
        "n": e.twist.n, "s": e.twist.s, "N": e.twist.N,
        "ok": e.ok,
        "bad_exponent": str(e.bad_exponent) if e.bad_exponent is not None else "",
    } for e in report.entries]
    return pd.DataFrame(rows, columns=["class", "n", "s", "N", "ok", "bad_exponent"])


def pair_class_table(G: Group, classes: Iterable[PairClass]) -> pd.DataFrame:
    rows = [{
        "representative": format_pair(G, pc.representative),
        "class_size": pc.class_size,
        "centralizer_order": pc.centralizer_order,
    } for pc in classes]
    return pd.DataFrame(rows, columns=["representative", "class_size", "centralizer_order"])


def transitive_table(G: Group, rows: Iterable) -> pd.DataFrame:
    data = []
    for pc, lattice in rows:
        data.append({
            "representative": format_pair(G, pc.representative),
            "a": lattice.a, "b": lattice.b, "d": lattice.d,
            "centralizer_order": pc.centralizer_order,
        })
    return pd.DataFrame(data, columns=["representative", "a", "b", "d", "centralizer_order"])


def delta_table(G: Group, label: str, deltas: dict) -> pd.DataFrame:
    """逐类差级数的汇总：是否为零、截断位置、第一个非零项。"""
    rows = []
    for pc, delta in deltas.items():
        first = next(iter(delta.items()), None)
        rows.append({
            "check": label,
            "class": format_pair(G, pc.representative),
            "zero": delta.is_zero(),
            "trunc": _trunc_cell(delta.trunc),
            "first_nonzero": f"{first[1]}·q^{first[0]}" if first else "",
        })
    return pd.DataFrame(rows, columns=["check", "class", "zero", "trunc", "first_nonzero"])


def t_report_table(G: Group, report) -> pd.DataFrame:
    rows = [{
        "class": format_pair(G, e.pair_class.representative),
        "agrees": e.agrees,
        "scalar": str(e.scalar) if e.scalar is not None else "",
        "root_exponent": str(e.scalar_exponent) if e.scalar_exponent is not None else "",
        "trunc": _trunc_cell(e.trunc),
        "reason": e.reason,
    } for e in report.entries]
    return pd.DataFrame(rows, columns=["class", "agrees", "scalar", "root_exponent", "trunc", "reason"])


def numeric_report_table(G: Group, report) -> pd.DataFrame:
    rows = [{
        "class": format_pair(G, e.pair_class.representative),
        "max_deviation": e.max_deviation,
        "scalar": f"{e.scalar.real:.6f}{e.scalar.imag:+.6f}i",
        "truncation_ok": e.truncation_ok,
    } for e in report.entries]
    return pd.DataFrame(rows, columns=["class", "max_deviation", "scalar", "truncation_ok"])


def replicates_table(result, limit: int = 12) -> pd.DataFrame:
    rows = []
    for a, series in sorted(result.replicates.items()):
        for e, c in list(series.items())[:limit]:
            rows.append({"a": a, "exponent": str(e), "coefficient": str(c),
                         "guaranteed_trunc": _trunc_cell(result.guaranteed_orders[a])})
    return pd.DataFrame(rows, columns=["a", "exponent", "coefficient", "guaranteed_trunc"])


def replicability_table(report) -> pd.DataFrame:
    rows = [{
        "t_degree": e.degree,
        "lhs": str(e.lhs),
        "rhs_constant": e.is_constant,
        "rhs_valuation": str(e.rhs.valuation),
        "trunc": _trunc_cell(e.rhs.trunc),
        "matches": e.matches,
    } for e in report.entries]
    return pd.DataFrame(rows, columns=["t_degree", "lhs", "rhs_constant", "rhs_valuation", "trunc", "matches"])


def identity_table(G: Group, report) -> pd.DataFrame:
    rows = [{
        "identity": report.name,
        "class": format_pair(G, e.pair_class.representative),
        "t_degree": e.degree,
        "agrees": e.agrees,
        "trunc": _trunc_cell(e.trunc),
    } for e in report.entries]
    return pd.DataFrame(rows, columns=["identity", "class", "t_degree", "agrees", "trunc"])


def untwisted_table(entries) -> pd.DataFrame:
    rows = [{"h": e.h_label, "n": e.n, "agrees": e.agrees, "trunc": _trunc_cell(e.trunc)} for e in entries]
    return pd.DataFrame(rows, columns=["h", "n", "agrees", "trunc"])


def records_table(records: List[dict]) -> pd.DataFrame:
    return pd.DataFrame(records)


# --- 输出 ---
def print_table(df: pd.DataFrame, title: str = "") -> None:
    if title:
        print(f"== {title} ==")
    print(df.to_string(index=False) if not df.empty else "(空表)")


def save_report(out_path: Union[str, Path], table: pd.DataFrame, structured: dict) -> Path:
    """
    按后缀保存报告：.json 写结构化报告，.csv 与 .xlsx 写表格。

    Raises:
        InputError: 不支持的后缀。
    """
    out_path = Path(out_path)
    suffix = out_path.suffix.lower()
    if suffix not in (".json", ".csv", ".xlsx"):
        raise InputError(f"不支持的输出格式 {suffix}，请使用 .json/.csv/.xlsx", out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    try:
        if suffix == ".json":
            with open(out_path, "w", encoding="utf-8") as f:
                json.dump(structured, f, ensure_ascii=False, indent=2, default=default_json_serializer)
        elif suffix == ".csv":
            table.to_csv(out_path, index=False, encoding="utf-8-sig")
        else:
            table.to_excel(out_path, index=False, engine="openpyxl")
        logger.info(f"报告成功保存到: {out_path}")
    except OSError as e:
        logger.error(f"保存报告时出错: {e}")
        raise
    return out_path


def default_report_path(command: str, suffix: str = ".json") -> Path:
    """reports/<日期>_<命令>.json，目录由 settings.REPORT_DIR 决定。"""
    time_now = datetime.datetime.now().strftime("%Y-%m-%d")
    return Path(settings.REPORT_DIR) / f"{time_now}_{command}{suffix}"
