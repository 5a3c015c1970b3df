"""
级数与 Norton 级数文件的读写。

文本格式（每个级数一个文件）：
    denom=N trunc=p/q|inf
    <指数> <系数>
    ...
指数与有理系数写作 p/q，整数不带分母（如 -1、196884）；分圆系数写作 [c0,c1,...;order=L]（幂基坐标）。
以 # 开头的行为注释。

Norton 文件为 JSON：
    {"group": 群描述, "classes": [{"rep": [g, h], "series": 结构化级数}], "twist": [{"element": g, "s": s}]}
"""
import json
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Union

from cocycles import twist_data
from errors import InputError, PreconditionError
from exact_arith import CycloElem, totient
from finite_groups import (CyclicProductGroup, DirectProductGroup, Group, SymmetricGroup, class_of,
                           parse_group_spec)
from norton import NortonSeries
from qseries import EXACT, PuiseuxSeries

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)

_HEADER = re.compile(r"denom\s*=\s*(\d+)\s+trunc\s*=\s*(\S+)")
_CYCLO = re.compile(r"\[([^;\]]*);\s*order\s*=\s*(\d+)\]")


# --- 基本元素 ---
def format_trunc(trunc) -> str:
    return "inf" if trunc == EXACT else str(trunc)


def parse_trunc(text: str):
    text = text.strip()
    if text == "inf":
        return EXACT
    return Fraction(text)


def format_coefficient(c: CycloElem) -> str:
    return str(c)


def parse_coefficient(text: str) -> CycloElem:
    text = text.strip()
    match = _CYCLO.fullmatch(text)
    if match:
        order = int(match.group(2))
        coords = [Fraction(x) for x in match.group(1).split(",")]
        if len(coords) != totient(order):
            raise ValueError(f"Q(ζ_{order}) 需要 {totient(order)} 个坐标，收到 {len(coords)}")
        return CycloElem(order, tuple(coords))
    return CycloElem.rational(Fraction(text))


# --- 文本格式 ---
def format_series(s: PuiseuxSeries) -> str:
    lines = [f"denom={s.denom} trunc={format_trunc(s.trunc)}"]
    for exp, c in s.items():
        lines.append(f"{exp} {format_coefficient(c)}")
    return "\n".join(lines) + "\n"


def parse_series(text: str, path=None) -> PuiseuxSeries:
    """
    解析文本格式的级数。

    Raises:
        InputError: 格式错误，消息中带有文件与行号。
    """
    header = None
    terms = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if header is None:
                match = _HEADER.fullmatch(line)
                if not match:
                    raise ValueError("首行应为 'denom=N trunc=T'")
                header = (int(match.group(1)), parse_trunc(match.group(2)))
                continue
            exp_text, coeff_text = line.split(None, 1)
            exp = Fraction(exp_text)
            if exp in terms:
                raise ValueError(f"指数 {exp} 重复")
            terms[exp] = parse_coefficient(coeff_text)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(str(e), path, line_no)
    if header is None:
        raise InputError("缺少 'denom=N trunc=T' 首行", path)
    denom, trunc = header
    try:
        return _build_series(terms, denom, trunc)
    except PreconditionError as e:
        raise InputError(str(e), path)


def _build_series(terms, denom, trunc) -> PuiseuxSeries:
    orders = {c.order for c in terms.values() if not c.is_rational()}
    if len(orders) > 1:
        raise PreconditionError(f"系数的分圆阶不一致: {sorted(orders)}")
    beyond = [e for e in terms if e >= trunc]
    if beyond:
        raise PreconditionError(f"指数 {beyond[0]} 不小于截断位置 {trunc}")
    return PuiseuxSeries(terms, denom, trunc, orders.pop() if orders else None)


def read_series(path: Union[str, Path]) -> PuiseuxSeries:
    """按后缀读取：.json 为结构化格式，其余为文本格式。"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"读取级数文件 {path} 失败: {e}")
        raise InputError(f"无法读取文件: {e}", path)
    if path.suffix == ".json":
        try:
            return series_from_dict(json.loads(text), path)
        except json.JSONDecodeError as e:
            raise InputError(f"JSON 格式错误: {e.msg}", path, e.lineno)
    return parse_series(text, path)


def write_series(path: Union[str, Path], s: PuiseuxSeries) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix == ".json":
        with open(path, "w", encoding="utf-8") as f:
            json.dump(series_to_dict(s), f, ensure_ascii=False, indent=2)
    else:
        path.write_text(format_series(s), encoding="utf-8")
    logger.info(f"级数成功保存到: {path}")


# --- 结构化格式 ---
def series_to_dict(s: PuiseuxSeries) -> dict:
    return {
        "denom": s.denom,
        "trunc": format_trunc(s.trunc),
        "order": s.order,
        "terms": [[str(e), format_coefficient(c)] for e, c in s.items()],
    }


def series_from_dict(obj: dict, path=None) -> PuiseuxSeries:
    try:
        terms = {}
        for exp_text, coeff_text in obj["terms"]:
            exp = Fraction(str(exp_text))
            if exp in terms:
                raise ValueError(f"指数 {exp} 重复")
            terms[exp] = parse_coefficient(str(coeff_text))
        return _build_series(terms, int(obj.get("denom", 1)), parse_trunc(str(obj.get("trunc", "inf"))))
    except (KeyError, TypeError, ValueError, ZeroDivisionError, PreconditionError) as e:
        raise InputError(f"结构化级数格式错误: {e}", path)


# --- Norton 文件 ---
def group_spec(G: Group) -> Union[str, dict]:
    """群的可序列化描述，能被 parse_group_spec 还原。"""
    if isinstance(G, (CyclicProductGroup, SymmetricGroup)):
        return G.label
    if isinstance(G, DirectProductGroup):
        return {"direct_product": [group_spec(G.left), group_spec(G.right)]}
    labels = [G.format_element(x) for x in G.elements]
    table = [[G.index(G.mul(x, y)) for y in G.elements] for x in G.elements]
    return {"label": G.label, "labels": labels, "table": table}


def norton_to_dict(f: NortonSeries) -> dict:
    G = f.group
    data = {
        "group": group_spec(G),
        "classes": [{"rep": [G.format_element(pc.g), G.format_element(pc.h)],
                     "series": series_to_dict(f.values[pc])} for pc in f.classes()],
    }
    if f.twist is not None:
        data["twist"] = [{"element": G.format_element(g), "s": td.s} for g, td in f.twist.items()]
    return data


def norton_from_dict(obj: dict, path=None) -> NortonSeries:
    """
    Raises:
        InputError: 群描述、元素标签或级数格式错误，或共轭类重复/缺失。
    """
    if not isinstance(obj, dict) or "group" not in obj or "classes" not in obj:
        raise InputError("Norton 文件必须包含 group 与 classes", path)
    try:
        G = parse_group_spec(obj["group"])
    except InputError as e:
        raise InputError(str(e), path)
    values = {}
    for idx, entry in enumerate(obj["classes"]):
        try:
            g_label, h_label = entry["rep"]
            g, h = G.parse_element(str(g_label)), G.parse_element(str(h_label))
            pc = class_of(G, g, h)
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"classes[{idx}] 的 rep 格式错误: {e}", path)
        except InputError as e:
            raise InputError(f"classes[{idx}]: {e}", path)
        if pc in values:
            raise InputError(f"classes[{idx}] 与之前的条目属于同一个共轭类", path)
        values[pc] = series_from_dict(entry.get("series", {}), path)
    twist = None
    if obj.get("twist"):
        twist = {}
        for idx, entry in enumerate(obj["twist"]):
            try:
                g = G.parse_element(str(entry["element"]))
                twist[g] = twist_data(G.element_order(g), int(entry["s"]))
            except (KeyError, TypeError, ValueError) as e:
                raise InputError(f"twist[{idx}] 格式错误: {e}", path)
    try:
        return NortonSeries(G, values, twist)
    except PreconditionError as e:
        raise InputError(str(e), path)


def read_norton(path: Union[str, Path]) -> NortonSeries:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            obj = json.load(f)
    except OSError as e:
        logger.error(f"读取 Norton 文件 {path} 失败: {e}")
        raise InputError(f"无法读取文件: {e}", path)
    except json.JSONDecodeError as e:
        raise InputError(f"JSON 格式错误: {e.msg}", path, e.lineno)
    f_norton = norton_from_dict(obj, path)
    logger.info(f"成功读取 Norton 级数 {path}，群 {f_norton.group.label}，共 {len(f_norton.values)} 个类")
    return f_norton


def write_norton(path: Union[str, Path], f: NortonSeries) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(path, "w", encoding="utf-8") as fp:
            json.dump(norton_to_dict(f), fp, ensure_ascii=False, indent=2)
        logger.info(f"Norton 级数成功保存到: {path}")
    except OSError as e:
        logger.error(f"保存 Norton 文件时出错: {e}")
        raise
