## 命令行入口
# 1. 解析子命令与参数，汇总为 RunConfig 并校验
# 2. 读取级数 / Norton 文件，或生成 j 展开与随机样例
# 3. 执行计算或验证，打印表格，按 --out 的后缀保存报告
# 退出码：0 成功，1 验证失败（报告照常写出），2 输入错误或前置条件不满足
import argparse
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd
from sympy import divisor_sigma, npartitions

import settings
from cocycles import (CyclicCocycle, action_order, chain_map_check, coboundary_check, is_normalized,
                      restrict_to_power, tn_action, twist_data)
from errors import InputError, PreconditionError, VerificationFailure
from fixtures import (broken_twisted_fixture, monster_z2_norton, random_norton, save_random_fixture,
                      twisted_z2_fixture)
from finite_groups import (Group, SymmetricGroup, conjugacy_classes, pair_classes, parse_group_spec,
                           symmetric_group, transitive_pair_classes, trivial_group)
from hecke import ModuliPoint, fricke, hecke_classical, hecke_combinatorial, hecke_geometric, verify_equivalence
from norton import (S_MATRIX, NortonSeries, check_T_equivariance, constant_norton, numeric_check,
                    pullback_from_trivial, validate_twisted_support)
from power_ops import (extract_replicates, lambda_exp_identity, level1_exp_sym, level1_ops,
                       level1_product_check, sym_exp_identity, sym_lambda_product, sym_n,
                       untwisted_replicability, verify_replicability)
from qseries import PuiseuxSeries, faber, j_expansion
import reports
from series_io import norton_to_dict, read_norton, read_series, series_to_dict, write_norton

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)

COMMANDS = ("j-expand", "faber", "replicates", "hecke", "verify", "pairs", "transitive", "cocycle",
            "fricke", "fixture")
VERIFY_TARGETS = ("hecke-equivalence", "replicability", "sym-exp-identity", "cocycles", "counting",
                  "level1", "numeric", "untwisted-replicability", "t-equivariance", "twisted-support")
FIXTURE_KINDS = ("random", "twisted", "broken", "monster-z2")


@dataclass(frozen=True)
class RunConfig:
    """一次运行的全部参数；构造时校验数值范围与输入文件。"""
    command: str
    target: Optional[str] = None
    group: str = "1"
    series_path: Optional[Path] = None
    norton_path: Optional[Path] = None
    use_j: bool = False
    n: Optional[int] = None
    n_list: Tuple[int, ...] = ()
    n_max: Optional[int] = None
    order: int = settings.DEFAULT_J_TERMS
    t_order: Optional[int] = None
    terms: Optional[int] = None
    s: int = 0
    g: int = 1
    impl: str = "geometric"
    kind: str = "random"
    check_all: bool = False
    seed: int = settings.DEFAULT_SEED
    samples: int = 1
    trunc: int = settings.DEFAULT_FIXTURE_TRUNC
    tau: Tuple[complex, ...] = (2j,)
    tolerance: float = settings.DEFAULT_TOLERANCE
    out: Optional[Path] = None
    save: bool = False
    verbose: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"未知的子命令: {self.command}")
        if self.command == "verify" and self.target not in VERIFY_TARGETS:
            raise InputError(f"未知的验证目标: {self.target}")
        for name in ("n", "n_max", "t_order", "terms"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise InputError(f"--{name.replace('_', '-')} 必须为正整数，收到 {value}")
        for name in ("order", "samples", "trunc"):
            if getattr(self, name) < 1:
                raise InputError(f"--{name} 必须为正整数，收到 {getattr(self, name)}")
        if any(n < 1 for n in self.n_list):
            raise InputError(f"--n-list 中的每一项都必须为正整数: {self.n_list}")
        if self.tolerance <= 0:
            raise InputError(f"--tolerance 必须为正，收到 {self.tolerance}")
        for path in (self.series_path, self.norton_path):
            if path is not None and not Path(path).is_file():
                raise InputError("文件不存在或不可读", path)
        if self.out is not None and Path(self.out).suffix.lower() not in (".json", ".csv", ".xlsx"):
            raise InputError("输出文件必须以 .json/.csv/.xlsx 结尾", self.out)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        values = {k: v for k, v in vars(args).items() if k in cls.__dataclass_fields__ and v is not None}
        return cls(**values)


@dataclass
class Outcome:
    """一个子命令的结果：表格、结构化报告与是否通过。"""
    title: str
    table: pd.DataFrame
    structured: Dict = field(default_factory=dict)
    ok: bool = True


# --- 数据来源 ---
def _load_series(config: RunConfig) -> PuiseuxSeries:
    if config.series_path is not None:
        return read_series(config.series_path)
    return j_expansion(config.order)


def _load_norton(config: RunConfig, G: Optional[Group] = None, sample: int = 0) -> NortonSeries:
    """--norton 文件优先，其次 --j（沿 G -> 1 拉回），否则按种子生成随机 Norton 级数。"""
    if config.norton_path is not None:
        return read_norton(config.norton_path)
    G = G or parse_group_spec(config.group)
    if config.use_j:
        return pullback_from_trivial(j_expansion(config.order), G)
    return random_norton(G, config.seed + sample, config.trunc)


def _require(value, flag: str):
    if value is None:
        raise InputError(f"缺少参数 {flag}")
    return value


# --- 子命令 ---
def cmd_j_expand(config: RunConfig) -> Outcome:
    terms = config.terms or settings.DEFAULT_J_TERMS
    # j − 744 在 q^0 处为 0，其余系数全非零，取 terms 阶足够给出 terms 个非零项
    j = j_expansion(terms)
    table = reports.series_table(j, limit=terms)
    return Outcome("j − 744", table, {"command": "j-expand", "series": series_to_dict(j)})


def cmd_faber(config: RunConfig) -> Outcome:
    n = _require(config.n, "--n")
    f = _load_series(config) if config.series_path else j_expansion(max(n, config.order))
    result = faber(f, n)
    table = pd.DataFrame([{"power": k, "coefficient": str(c)} for k, c in enumerate(result.coefficients)])
    return Outcome(f"Φ_{n} 的系数", table, {
        "command": "faber", "n": n,
        "coefficients": [str(c) for c in result.coefficients],
        "series": series_to_dict(result.series),
    })


def cmd_replicates(config: RunConfig) -> Outcome:
    n_max = _require(config.n_max, "--nmax")
    result = extract_replicates(_load_series(config), n_max)
    structured = {
        "command": "replicates", "success": result.success, "reason": result.reason,
        "failure": list(result.failure) if result.failure else None,
        "replicates": {str(a): series_to_dict(s) for a, s in result.replicates.items()},
    }
    return Outcome("复制函数", reports.replicates_table(result), structured, result.success)


def cmd_hecke(config: RunConfig) -> Outcome:
    n = _require(config.n, "--n")
    f = _load_norton(config)
    if config.impl == "classical":
        if f.group.order != 1:
            raise PreconditionError("classical 实现只适用于平凡群")
        series = f.values[f.classes()[0]]
        extracted = extract_replicates(series, n)
        if not extracted.success:
            raise PreconditionError(f"输入级数不可复制: {extracted.reason}")
        value = hecke_classical(series, n, extracted.replicates)
        result = NortonSeries(f.group, {f.classes()[0]: value})
    elif config.impl == "combinatorial":
        result = hecke_combinatorial(f, n)
    else:
        result = hecke_geometric(f, n)
    return Outcome(f"T_{n}（{config.impl}）", reports.norton_table(result),
                   {"command": "hecke", "impl": config.impl, "n": n, "result": norton_to_dict(result)})


def cmd_pairs(config: RunConfig) -> Outcome:
    G = parse_group_spec(config.group)
    classes = pair_classes(G)
    table = reports.pair_class_table(G, classes)
    return Outcome(f"{G.label} 的交换对共轭类", table, {"command": "pairs", "group": G.label,
                                                   "classes": table.to_dict(orient="records")})


def cmd_transitive(config: RunConfig) -> Outcome:
    n = _require(config.n, "--n")
    G = symmetric_group(n)
    table = reports.transitive_table(G, transitive_pair_classes(n))
    return Outcome(f"Σ{n} 的传递交换对", table, {"command": "transitive", "n": n,
                                             "classes": table.to_dict(orient="records")})


def _cocycle_record(alpha: CyclicCocycle, exhaustive: bool) -> dict:
    td = twist_data(alpha.n, alpha.s)
    record = {
        "n": alpha.n, "s": alpha.s,
        "normalized": is_normalized(alpha),
        "tn_action": str(tn_action(alpha)),
        "action_order": action_order(alpha),
        "restricted_trivial": restrict_to_power(alpha, action_order(alpha)).s == 0,
        "N": td.N,
    }
    if exhaustive:
        record["cocycle"] = coboundary_check(alpha)
    return record


def cmd_cocycle(config: RunConfig) -> Outcome:
    n = _require(config.n, "--n")
    alpha = CyclicCocycle(n, config.s)
    record = _cocycle_record(alpha, config.check_all)
    ok = record["normalized"] and record.get("cocycle", True)
    return Outcome(f"Z/{n} 上的 3-上闭链 s={alpha.s}", pd.DataFrame([record]),
                   {"command": "cocycle", **record}, ok)


def cmd_fricke(config: RunConfig) -> Outcome:
    n = _require(config.n, "--n")
    point = fricke(n, config.g)
    twice = fricke(n, point)
    start = ModuliPoint(n, config.g)
    rows = [
        {"step": "start", "point": start.describe()},
        {"step": "W_n", "point": point.describe()},
        {"step": "W_n²", "point": twice.describe()},
    ]
    involution = twice.same_point(start)
    structured = {"command": "fricke", "n": n, "g": config.g, "image": [list(r) for r in point.matrix],
                  "involution": involution}
    return Outcome(f"W_{n}", pd.DataFrame(rows), structured, involution)


def cmd_fixture(config: RunConfig) -> Outcome:
    if config.out is None or Path(config.out).suffix.lower() != ".json":
        raise InputError("fixture 需要以 .json 结尾的 --out")
    if config.kind == "random":
        G = parse_group_spec(config.group)
        save_random_fixture(G, config.seed, config.trunc, config.out)
        f = read_norton(config.out)
    else:
        builders: Dict[str, Callable[[], NortonSeries]] = {
            "twisted": twisted_z2_fixture,
            "broken": broken_twisted_fixture,
            "monster-z2": lambda: monster_z2_norton(config.order),
        }
        f = builders[config.kind]()
        write_norton(config.out, f)
    return Outcome(f"样例 {config.kind}", reports.norton_table(f), norton_to_dict(f))


# --- verify ---
def verify_hecke_equivalence(config: RunConfig) -> Outcome:
    n_list = config.n_list or (2, 3, 4)
    G = parse_group_spec(config.group) if config.norton_path is None else None
    frames: List[pd.DataFrame] = []
    structured = {"command": "verify hecke-equivalence", "runs": []}
    ok = True
    samples = 1 if (config.norton_path or config.use_j) else config.samples
    for sample in range(samples):
        f = _load_norton(config, G, sample)
        replicates = None
        if config.use_j and f.group.order == 1:
            j = f.values[f.classes()[0]]
            replicates = {a: j for a in range(1, max(n_list) + 1)}
        for n in n_list:
            report = verify_equivalence(f, n, replicates)
            deltas = dict(report.deltas)
            frame = reports.delta_table(f.group, f"T_{n} 几何-组合 #{sample}", deltas)
            if report.classical_delta is not None:
                classical = {f.classes()[0]: report.classical_delta}
                frame = pd.concat([frame, reports.delta_table(f.group, f"T_{n} 几何-经典", classical)])
            frames.append(frame)
            structured["runs"].append({"sample": sample, "n": n, "agrees": report.agrees,
                                       "deltas": frame.to_dict(orient="records")})
            ok = ok and report.agrees
    return Outcome("Hecke 实现的等价性", pd.concat(frames, ignore_index=True), structured, ok)


def verify_replicability_cmd(config: RunConfig) -> Outcome:
    order = config.t_order or 4
    report = verify_replicability(_load_series(config), order)
    table = reports.replicability_table(report)
    return Outcome("f(t) − f(q) = t^{-1}Λ_{-t}(f)", table,
                   {"command": "verify replicability", "ok": report.ok, "rows": table.to_dict(orient="records")},
                   report.ok)


def verify_sym_exp(config: RunConfig) -> Outcome:
    d = config.t_order or 4
    f = _load_norton(config)
    results = [sym_exp_identity(f, d), lambda_exp_identity(f, d), sym_lambda_product(f, d)]
    table = pd.concat([reports.identity_table(f.group, r) for r in results], ignore_index=True)
    ok = all(r.ok for r in results)
    return Outcome("Sym_t = exp(ΣT_k t^k)", table,
                   {"command": "verify sym-exp-identity", "ok": ok, "rows": table.to_dict(orient="records")}, ok)


def verify_cocycles(config: RunConfig) -> Outcome:
    n_max = config.n_max or 12
    records = []
    ok = True
    for n in range(1, n_max + 1):
        chain = chain_map_check(n)
        for s in range(n):
            alpha = CyclicCocycle(n, s)
            record = _cocycle_record(alpha, exhaustive=True)
            record["chain_map"] = chain.ok
            expected_order = n // gcd(n, s)
            record["ok"] = (record["cocycle"] and record["normalized"] and record["restricted_trivial"]
                            and record["chain_map"] and tn_action(alpha) == Fraction(s, n)
                            and record["action_order"] == expected_order)
            ok = ok and record["ok"]
            records.append(record)
    table = reports.records_table(records)
    return Outcome("Z/n 上闭链检验", table, {"command": "verify cocycles", "ok": ok, "rows": records}, ok)


def verify_counting(config: RunConfig) -> Outcome:
    n_max = config.n_max or 7
    records = []
    point = trivial_group()
    one = constant_norton(point, 1)
    for n in range(1, n_max + 1):
        classes = transitive_pair_classes(n)
        sym_value = sym_n(one, n).values[pair_classes(point)[0]]
        records.append({
            "n": n,
            "transitive_classes": len(classes),
            "sigma_n": int(divisor_sigma(n)),
            "centralizers_equal_n": all(pc.centralizer_order == n for pc, _ in classes),
            "sym_n_of_1": str(sym_value.rational_coefficient(0)),
            "partitions": int(npartitions(n)),
        })
    ok = all(r["transitive_classes"] == r["sigma_n"] and r["centralizers_equal_n"]
             and r["sym_n_of_1"] == str(r["partitions"]) for r in records)
    return Outcome("计数检验", reports.records_table(records),
                   {"command": "verify counting", "ok": ok, "rows": records}, ok)


def verify_level1(config: RunConfig) -> Outcome:
    d = config.t_order or 8
    G = parse_group_spec(config.group)
    reps = [cls[0] for cls in conjugacy_classes(G)]
    characters = {
        "trivial": {g: Fraction(1) for g in reps},
        "regular": {g: Fraction(G.order if g == G.identity else 0) for g in reps},
    }
    if isinstance(G, SymmetricGroup):
        characters["permutation"] = {g: Fraction(sum(1 for i, x in enumerate(g) if i == x)) for g in reps}
    records = []
    ok = True
    for name, chi in characters.items():
        total = level1_ops(G, chi, "total_sym", d)
        via_exp = level1_exp_sym(G, chi, d)
        product_ok = level1_product_check(G, chi, d)
        for k in range(d + 1):
            for g in reps:
                agrees = total[k][g] == via_exp[k][g]
                records.append({"character": name, "class": G.format_element(g), "t_degree": k,
                                "sym": str(total[k][g]), "exp_adams": str(via_exp[k][g]),
                                "agrees": agrees, "lambda_sym_product": product_ok})
                ok = ok and agrees and product_ok
                if name == "trivial":
                    ok = ok and total[k][g] == 1
    return Outcome("一阶幂运算", reports.records_table(records),
                   {"command": "verify level1", "ok": ok, "rows": records}, ok)


def verify_numeric(config: RunConfig) -> Outcome:
    terms = config.terms or settings.DEFAULT_NUMERIC_TERMS
    if config.norton_path is not None:
        f = read_norton(config.norton_path)
    else:
        f = pullback_from_trivial(j_expansion(terms), parse_group_spec(config.group))
    report = numeric_check(f, S_MATRIX, config.tau, config.tolerance)
    table = reports.numeric_report_table(f.group, report)
    structured = {"command": "verify numeric", "tau": list(config.tau), "tolerance": config.tolerance,
                  "max_deviation": report.max_deviation, "ok": report.ok,
                  "rows": table.to_dict(orient="records")}
    return Outcome("S 变换数值检验", table, structured, report.ok)


def verify_untwisted(config: RunConfig) -> Outcome:
    n_max = config.n_max or 4
    f = read_norton(config.norton_path) if config.norton_path else monster_z2_norton(config.order)
    entries = untwisted_replicability(f, n_max)
    table = reports.untwisted_table(entries)
    ok = all(e.agrees for e in entries)
    return Outcome("无扭曲扇区的可复制性", table,
                   {"command": "verify untwisted-replicability", "ok": ok,
                    "rows": table.to_dict(orient="records")}, ok)


def verify_t_equivariance(config: RunConfig) -> Outcome:
    f = read_norton(config.norton_path) if config.norton_path else twisted_z2_fixture()
    report = check_T_equivariance(f)
    table = reports.t_report_table(f.group, report)
    return Outcome("T 等变性", table, {"command": "verify t-equivariance", "ok": report.ok,
                                       "rows": table.to_dict(orient="records")}, report.ok)


def verify_twisted_support(config: RunConfig) -> Outcome:
    f = read_norton(config.norton_path) if config.norton_path else twisted_z2_fixture()
    report = validate_twisted_support(f)
    table = reports.support_table(f.group, report)
    return Outcome("扭曲扇区的指数", table, {"command": "verify twisted-support", "ok": report.ok,
                                         "rows": table.to_dict(orient="records")}, report.ok)


HANDLERS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "j-expand": cmd_j_expand,
    "faber": cmd_faber,
    "replicates": cmd_replicates,
    "hecke": cmd_hecke,
    "pairs": cmd_pairs,
    "transitive": cmd_transitive,
    "cocycle": cmd_cocycle,
    "fricke": cmd_fricke,
    "fixture": cmd_fixture,
}

VERIFY_HANDLERS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "hecke-equivalence": verify_hecke_equivalence,
    "replicability": verify_replicability_cmd,
    "sym-exp-identity": verify_sym_exp,
    "cocycles": verify_cocycles,
    "counting": verify_counting,
    "level1": verify_level1,
    "numeric": verify_numeric,
    "untwisted-replicability": verify_untwisted,
    "t-equivariance": verify_t_equivariance,
    "twisted-support": verify_twisted_support,
}


def run(config: RunConfig) -> int:
    """
    执行一个子命令。

    Returns:
        int: 退出码。0 成功，1 验证失败，2 输入错误 / 前置条件不满足 / 超出枚举上限。
    """
    name = f"verify {config.target}" if config.command == "verify" else config.command
    logger.info(f"开始执行 {name}...")
    try:
        handler = VERIFY_HANDLERS[config.target] if config.command == "verify" else HANDLERS[config.command]
        outcome = handler(config)
        reports.print_table(outcome.table, outcome.title)
        out = config.out
        if out is None and config.save:
            out = reports.default_report_path(name.replace(" ", "_"))
        if out is not None and config.command != "fixture":
            reports.save_report(out, outcome.table, outcome.structured)
        if not outcome.ok:
            raise VerificationFailure(f"{name} 验证未通过")
    except VerificationFailure as e:
        logger.error(str(e))
        return 1
    except (InputError, PreconditionError) as e:
        logger.error(f"{name} 执行失败: {e}")
        return 2
    logger.info(f"{name} 执行成功")
    return 0


# --- 参数解析 ---
def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"无法解析整数列表: {text!r}")


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"无法解析复数: {text!r}")


def _add_source_options(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument('--series', dest='series_path', type=Path, help='级数文件（文本或 .json）')
    source.add_argument('--j', dest='use_j', action='store_true', help='使用 j − 744')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', type=Path, help='报告输出路径（.json/.csv/.xlsx）')
    common.add_argument('--save', action='store_true', help='未给出 --out 时保存到 settings.REPORT_DIR')
    common.add_argument('--verbose', action='store_true', help='输出 DEBUG 日志')
    common.add_argument('--seed', type=int, help='随机样例的种子')

    parser = argparse.ArgumentParser(description='Norton 级数上的 Hecke 算子、复制函数与幂运算')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('j-expand', parents=[common], help='j − 744 的 q 展开')
    p.add_argument('--terms', type=int, default=settings.DEFAULT_J_TERMS, help='输出的非零项数')

    p = sub.add_parser('faber', parents=[common], help='Faber 多项式 Φ_n')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--order', type=int, help='--j 时 j 的展开阶数')
    _add_source_options(p)

    p = sub.add_parser('replicates', parents=[common], help='提取复制函数 f^(a)')
    p.add_argument('--nmax', dest='n_max', type=int, required=True)
    p.add_argument('--order', type=int, help='--j 时 j 的展开阶数')
    _add_source_options(p)

    p = sub.add_parser('hecke', parents=[common], help='计算 T_n(f)')
    p.add_argument('--impl', choices=('geometric', 'combinatorial', 'classical'), default='geometric')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--group', type=str, help='群描述，如 1、Z/2、Z/2xZ/2、S3')
    p.add_argument('--norton', dest='norton_path', type=Path, help='Norton 级数文件')
    p.add_argument('--j', dest='use_j', action='store_true', help='使用沿 G -> 1 拉回的 j − 744')
    p.add_argument('--order', type=int)
    p.add_argument('--trunc', type=int, help='随机样例的截断位置')

    p = sub.add_parser('pairs', parents=[common], help='交换对共轭类')
    p.add_argument('--group', type=str, required=True)

    p = sub.add_parser('transitive', parents=[common], help='Σn 的传递交换对与 Hecke 三元组')
    p.add_argument('--n', type=int, required=True)

    p = sub.add_parser('cocycle', parents=[common], help='Z/n 上的 3-上闭链')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--s', type=int, required=True)
    p.add_argument('--check-all', dest='check_all', action='store_true', help='穷举检验上闭链条件')

    p = sub.add_parser('fricke', parents=[common], help='Fricke 对合 W_n')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--g', type=int, default=1, help='Z/n 的生成元')

    p = sub.add_parser('fixture', parents=[common], help='生成 Norton 级数样例文件')
    p.add_argument('--kind', choices=FIXTURE_KINDS, default='random')
    p.add_argument('--group', type=str)
    p.add_argument('--trunc', type=int)
    p.add_argument('--order', type=int)

    verify = sub.add_parser('verify', help='验证套件')
    targets = verify.add_subparsers(dest='target', required=True)

    p = targets.add_parser('hecke-equivalence', parents=[common])
    p.add_argument('--group', type=str, default='1')
    p.add_argument('--n-list', dest='n_list', type=_int_list, default=(2, 3, 4))
    p.add_argument('--norton', dest='norton_path', type=Path)
    p.add_argument('--j', dest='use_j', action='store_true')
    p.add_argument('--order', type=int)
    p.add_argument('--samples', type=int)
    p.add_argument('--trunc', type=int)

    p = targets.add_parser('replicability', parents=[common])
    p.add_argument('--order', dest='t_order', type=int, default=4, help='比较到 t 的次数')
    p.add_argument('--j-order', dest='order', type=int, help='j 的展开阶数')
    p.add_argument('--series', dest='series_path', type=Path)

    p = targets.add_parser('sym-exp-identity', parents=[common])
    p.add_argument('--group', type=str, default='1')
    p.add_argument('--t-order', dest='t_order', type=int, default=4)
    p.add_argument('--norton', dest='norton_path', type=Path)
    p.add_argument('--j', dest='use_j', action='store_true')
    p.add_argument('--order', type=int)
    p.add_argument('--trunc', type=int)

    p = targets.add_parser('cocycles', parents=[common])
    p.add_argument('--n-max', dest='n_max', type=int, default=12)

    p = targets.add_parser('counting', parents=[common])
    p.add_argument('--n-max', dest='n_max', type=int, default=7)

    p = targets.add_parser('level1', parents=[common])
    p.add_argument('--group', type=str, default='1')
    p.add_argument('--t-order', dest='t_order', type=int, default=8)

    p = targets.add_parser('numeric', parents=[common])
    p.add_argument('--tau', type=_complex, nargs='+', default=[2j], help='采样点，如 2i 0.3+1.1i')
    p.add_argument('--terms', type=int, default=settings.DEFAULT_NUMERIC_TERMS)
    p.add_argument('--tolerance', type=float, default=settings.DEFAULT_TOLERANCE)
    p.add_argument('--group', type=str, default='1')
    p.add_argument('--norton', dest='norton_path', type=Path)

    p = targets.add_parser('untwisted-replicability', parents=[common])
    p.add_argument('--n-max', dest='n_max', type=int, default=4)
    p.add_argument('--order', type=int, default=30)
    p.add_argument('--norton', dest='norton_path', type=Path)

    for name in ('t-equivariance', 'twisted-support'):
        p = targets.add_parser(name, parents=[common])
        p.add_argument('--norton', dest='norton_path', type=Path)

    return parser


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    if getattr(args, 'tau', None) is not None:
        args.tau = tuple(args.tau)
    return RunConfig.from_args(args)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        config = parse_config(argv)
    except InputError as e:
        logging.basicConfig(level=logging.INFO, format=settings.LOG_FORMAT)
        logger.error(f"参数错误: {e}")
        return 2
    logging.basicConfig(level=logging.DEBUG if config.verbose else logging.INFO, format=settings.LOG_FORMAT)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
