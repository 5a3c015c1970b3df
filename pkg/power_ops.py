"""
二阶幂运算：交换置换对上的 ψ、对称幂与外幂、生成函数恒等式，
以及复制函数（replicate）的提取与可复制性检验；另附一阶（K 理论）特征标层。

约定：按带符号共轭类和直接计算的 λ_n 满足 Σ λ_n (−t)^n = exp(−Σ_{k≥1} T_k t^k) = 1/Sym_t。
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions

import hecke
from errors import PreconditionError, TruncationError
from finite_groups import (Group, PairClass, conjugacy_classes, hecke_triples, orbit_decomposition,
                           pair_classes, pair_sgn, pullback_pair, symmetric_group, trivial_group)
from norton import NortonSeries, constant_norton, evaluate
from qseries import (PuiseuxSeries, aligned_product, check_normalized, constant, difference,
                     faber_polynomials, substitute, sum_series)

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)


# --- ψ 与对称幂 ---
def _psi_value(f: NortonSeries, pair, lattices) -> PuiseuxSeries:
    G = f.group
    value = constant(1)
    for lattice in lattices:
        a, b, d = lattice.triple
        factor = substitute(evaluate(f, *pullback_pair(G, pair, lattice.triple)), a, b, d)
        value = aligned_product(value, factor)
    return value


def psi_pair(f: NortonSeries, sigma: tuple, rho: tuple) -> NortonSeries:
    """
    ψ_{σ,ρ}(f)：在类 [g,h] 处为 ⟨σ,ρ⟩ 各轨道 O 上
    substitute(f(g^{d_O}, g^{-b_O} h^{a_O}), a_O, b_O, d_O) 的乘积。

    Raises:
        PreconditionError: σ 与 ρ 不交换。
    """
    lattices = [lattice for _, lattice in orbit_decomposition(sigma, rho)]
    return NortonSeries.from_function(
        f.group, lambda pc: _psi_value(f, pc.representative, lattices).rationalize())


def _class_weighted_sum(f: NortonSeries, n: int, signed: bool) -> NortonSeries:
    if n < 0:
        raise PreconditionError(f"幂次不能为负: {n}")
    if n == 0:
        return constant_norton(f.group, 1)
    Sn = symmetric_group(n)
    terms = []
    for spc in pair_classes(Sn):
        sigma, rho = spc.representative
        weight = Fraction(pair_sgn(sigma, rho) if signed else 1, spc.centralizer_order)
        lattices = [lattice for _, lattice in orbit_decomposition(sigma, rho)]
        terms.append((weight, lattices))
    logger.debug(f"{'λ' if signed else 'sym'}_{n}: Σ{n} 共 {len(terms)} 个交换对共轭类")

    def value(pc: PairClass) -> PuiseuxSeries:
        parts = [_psi_value(f, pc.representative, lattices).scale(weight) for weight, lattices in terms]
        return sum_series(parts).rationalize()

    return NortonSeries.from_function(f.group, value)


def sym_n(f: NortonSeries, n: int) -> NortonSeries:
    """sym_n(f) = (1/n!) Σ_{σρ=ρσ} ψ_{σ,ρ}(f)，按共轭类以 1/|C(σ,ρ)| 加权。"""
    return _class_weighted_sum(f, n, signed=False)


def lambda2_n(f: NortonSeries, n: int) -> NortonSeries:
    """λ_n(f) = (1/n!) Σ_{σρ=ρσ} sgn(σ,ρ)·ψ_{σ,ρ}(f)。"""
    return _class_weighted_sum(f, n, signed=True)


# --- t 的截断多项式，系数为级数 ---
def _t_mul(a: List[PuiseuxSeries], b: List[PuiseuxSeries], d: int) -> List[PuiseuxSeries]:
    return [sum_series([aligned_product(a[i], b[m - i]) for i in range(m + 1)]) for m in range(d + 1)]


def _t_exp(coeffs: List[PuiseuxSeries], d: int) -> List[PuiseuxSeries]:
    """exp(Σ_{k≥1} coeffs[k] t^k)，递推 m·E_m = Σ_{k=1}^{m} k·a_k·E_{m-k}。"""
    result = [constant(1)]
    for m in range(1, d + 1):
        parts = [aligned_product(coeffs[k].scale(k), result[m - k]) for k in range(1, m + 1)]
        result.append(sum_series(parts).scale(Fraction(1, m)).rationalize())
    return result


@dataclass
class TotalPowerSeries:
    """Σ_k coefficients[k]·t^k，k = 0..var_order，每个系数是一个 Norton 级数。"""
    var_order: int
    coefficients: List[NortonSeries]

    @property
    def group(self) -> Group:
        return self.coefficients[0].group

    def at(self, pc: PairClass) -> List[PuiseuxSeries]:
        return [c.values[pc] for c in self.coefficients]

    def alternate(self) -> "TotalPowerSeries":
        """t -> −t。"""
        flipped = [c if k % 2 == 0 else NortonSeries.from_function(c.group, lambda pc, c=c: -c.values[pc])
                   for k, c in enumerate(self.coefficients)]
        return TotalPowerSeries(self.var_order, flipped)


def total_sym(f: NortonSeries, var_order: int) -> TotalPowerSeries:
    return TotalPowerSeries(var_order, [sym_n(f, k) for k in range(var_order + 1)])


def total_lambda(f: NortonSeries, var_order: int) -> TotalPowerSeries:
    return TotalPowerSeries(var_order, [lambda2_n(f, k) for k in range(var_order + 1)])


def exp_hecke_series(f: NortonSeries, var_order: int, sign: int = 1) -> TotalPowerSeries:
    """exp(sign·Σ_{k=1}^{d} T_k(f) t^k)，T_k 取几何 Hecke 算子。"""
    heckes = [None] + [hecke.hecke_geometric(f, k) for k in range(1, var_order + 1)]
    by_class = {}
    for pc in f.classes():
        coeffs = [constant(0)] + [heckes[k].values[pc].scale(sign) for k in range(1, var_order + 1)]
        by_class[pc] = _t_exp(coeffs, var_order)
    return TotalPowerSeries(var_order, [NortonSeries(f.group, {pc: by_class[pc][k] for pc in by_class})
                                        for k in range(var_order + 1)])


@dataclass
class IdentityEntry:
    pair_class: PairClass
    degree: int
    agrees: bool
    trunc: object


@dataclass
class IdentityReport:
    name: str
    entries: List[IdentityEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.agrees for e in self.entries)


def _compare(name: str, left: TotalPowerSeries, right: TotalPowerSeries) -> IdentityReport:
    report = IdentityReport(name)
    for pc in left.coefficients[0].classes():
        for k, (a, b) in enumerate(zip(left.at(pc), right.at(pc))):
            delta = difference(a, b)
            report.entries.append(IdentityEntry(pc, k, delta.is_zero(), delta.trunc))
            if not delta.is_zero():
                logger.warning(f"{name}: 类 {pc.representative} 的 t^{k} 系数不一致")
    return report


def sym_exp_identity(f: NortonSeries, var_order: int) -> IdentityReport:
    """Sym_t(f) = exp(Σ T_k(f) t^k)，逐类逐 t 次数比较。"""
    return _compare("sym-exp", total_sym(f, var_order), exp_hecke_series(f, var_order))


def lambda_exp_identity(f: NortonSeries, var_order: int) -> IdentityReport:
    """Λ_{−t}(f) = exp(−Σ T_k(f) t^k)。"""
    return _compare("lambda-exp", total_lambda(f, var_order).alternate(), exp_hecke_series(f, var_order, -1))


def sym_lambda_product(f: NortonSeries, var_order: int) -> IdentityReport:
    """Sym_t(f)·Λ_{−t}(f) = 1（到 t^d）。"""
    sym = total_sym(f, var_order)
    lam = total_lambda(f, var_order).alternate()
    one = [constant(1)] + [constant(0)] * var_order
    report = IdentityReport("sym-lambda")
    for pc in f.classes():
        product = _t_mul(sym.at(pc), lam.at(pc), var_order)
        for k in range(var_order + 1):
            delta = difference(product[k], one[k])
            report.entries.append(IdentityEntry(pc, k, delta.is_zero(), delta.trunc))
    return report


def invert_t_series(coeffs: Sequence[PuiseuxSeries], var_order: int) -> List[PuiseuxSeries]:
    """1/(1 + Σ_{k≥1} c_k t^k) 的前 d+1 个系数（c_0 必须为 1）。"""
    if not difference(coeffs[0], constant(1)).is_zero():
        raise PreconditionError("t^0 系数必须为常数 1")
    inverse = [constant(1)]
    for m in range(1, var_order + 1):
        inverse.append(-sum_series([aligned_product(coeffs[k], inverse[m - k]) for k in range(1, m + 1)]))
    return inverse


# --- 复制函数 ---
@dataclass
class ReplicateResult:
    """
    success 为 False 时 failure = (n, 指数) 指出第一个不满足条件的位置；
    guaranteed_orders[a] 为 f^{(a)} 的截断位置（该指数以下的系数都可靠）。
    """
    replicates: Dict[int, PuiseuxSeries]
    guaranteed_orders: Dict[int, object]
    success: bool = True
    failure: Optional[Tuple[int, Fraction]] = None
    reason: str = ""


def extract_replicates(f: PuiseuxSeries, n_max: int) -> ReplicateResult:
    """
    依次求 f^{(n)}：R = Φ_n(f) − Σ_{ad=n, d>1} Σ_b f^{(a)}((aτ+b)/d) 必须是 q^n 的有理级数，
    f^{(n)} 即 R 的指数除以 n。

    Raises:
        PreconditionError: f 不是 q^{-1} + O(q) 形式。
        TruncationError: 截断不足以计算 Φ_{n_max}。
    """
    check_normalized(f)
    f = f.rationalize()
    fabers = faber_polynomials(f, n_max)
    result = ReplicateResult({1: f}, {1: f.trunc})
    for n in range(2, n_max + 1):
        parts = [fabers[n - 1].series]
        for a, b, d in hecke_triples(n):
            if d > 1:
                parts.append(-substitute(result.replicates[a], a, b, d))
        residual = sum_series(parts).rationalize()
        if residual.trunc <= 0:
            raise TruncationError(f"f^({n}) 的残差截断位置 {residual.trunc} 不足")
        bad = next((e for e, c in residual.items() if not c.is_rational() or (e / n).denominator != 1), None)
        if bad is not None:
            result.success = False
            result.failure = (n, bad)
            result.reason = f"Φ_{n}(f) 的残差在 q^{bad} 处不是 q^{n} 的幂级数"
            logger.warning(f"复制函数提取失败: n={n}, 指数 {bad}")
            return result
        replicate = PuiseuxSeries({e / n: c for e, c in residual.items()}, 1, residual.trunc / n)
        result.replicates[n] = replicate
        result.guaranteed_orders[n] = replicate.trunc
        logger.debug(f"f^({n}) 截断于 q^{replicate.trunc}")
    return result


@dataclass
class ReplicabilityEntry:
    degree: int
    lhs: Fraction
    rhs: PuiseuxSeries
    is_constant: bool
    matches: bool


@dataclass
class ReplicabilityReport:
    entries: List[ReplicabilityEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.matches for e in self.entries)

    def first_failure(self) -> Optional[ReplicabilityEntry]:
        return next((e for e in self.entries if not e.matches), None)


def _is_constant(s: PuiseuxSeries) -> bool:
    return all(e == 0 for e in s.terms)


def verify_replicability(f: PuiseuxSeries, order: int) -> ReplicabilityReport:
    """
    逐 t 次数比较 f(t) − f(q) = t^{-1}·Λ_{−t}(f(q)) 的两端。

    t^n（n >= 1）的系数：左端为常数 a_n，右端为 (−1)^{n+1}·λ_{n+1}(f)；
    t^{-1} 与 t^0 的系数给出 λ_0 = 1 与 λ_1 = f。
    """
    check_normalized(f)
    G = trivial_group()
    lam = total_lambda(constant_norton(G, f), order + 1)
    pc = pair_classes(G)[0]
    lambdas = lam.at(pc)
    report = ReplicabilityReport()
    report.entries.append(ReplicabilityEntry(-1, Fraction(1), lambdas[0], True, difference(lambdas[0], constant(1)).is_zero()))
    lambda_one = difference(lambdas[1], f)
    report.entries.append(ReplicabilityEntry(0, Fraction(0), lambdas[1], False, lambda_one.is_zero()))
    for n in range(1, order + 1):
        rhs = lambdas[n + 1].scale((-1) ** (n + 1))
        a_n = f.rational_coefficient(n)
        constant_term = rhs.rational_coefficient(0) if rhs.trunc > 0 else None
        is_const = _is_constant(rhs) and rhs.trunc > 0
        report.entries.append(ReplicabilityEntry(n, a_n, rhs, is_const, is_const and constant_term == a_n))
        if not is_const:
            logger.warning(f"λ_{n + 1} 不是常数级数")
    return report


@dataclass
class UntwistedEntry:
    h_label: str
    n: int
    agrees: bool
    trunc: object


def untwisted_replicability(f: NortonSeries, n_max: int) -> List[UntwistedEntry]:
    """
    对每个类 (1,h) 检验 Φ_n(f(1,h)) = Σ_{ad=n,0≤b<d} f(1,h^a)((aτ+b)/d)，即 n·T_n(f)(1,h) = Φ_n(f(1,h))。
    """
    G = f.group
    entries = []
    heckes = {n: hecke.hecke_geometric(f, n) for n in range(1, n_max + 1)}
    for pc in f.classes():
        if pc.g != G.identity:
            continue
        series = f.values[pc]
        fabers = faber_polynomials(series, n_max)
        for n in range(1, n_max + 1):
            delta = difference(fabers[n - 1].series, evaluate(heckes[n], G.identity, pc.h).scale(n))
            entries.append(UntwistedEntry(G.format_element(pc.h), n, delta.is_zero(), delta.trunc))
    return entries


# --- 一阶特征标层 ---
def _class_lookup(G: Group) -> Dict[object, object]:
    return {x: cls[0] for cls in conjugacy_classes(G) for x in cls}


def _partition_terms(n: int):
    """n 的所有分拆 {部分: 重数}，附带 1/z_λ 与符号 (−1)^{n − 部分数}。"""
    for p in partitions(n):
        p = dict(p)
        z = 1
        for k, m in p.items():
            z *= k ** m * factorial(m)
        sign = (-1) ** (n - sum(p.values()))
        yield p, Fraction(1, z), sign


def level1_ops(G: Group, chi: Dict[object, Fraction], op: str, n: int):
    """
    类函数 χ（键为共轭类代表元）上的一阶运算。

    Args:
        op (str): 'adams'、'sym'、'lambda' 返回类函数；'total_sym'、'total_lambda' 返回 t^0..t^n 的类函数列表。

    Raises:
        PreconditionError: χ 没有覆盖全部共轭类或 op 未知。
    """
    lookup = _class_lookup(G)
    reps = [cls[0] for cls in conjugacy_classes(G)]
    if set(chi) != set(reps):
        raise PreconditionError("χ 必须在每个共轭类代表元上取值")

    def at(x):
        return Fraction(chi[lookup[x]])

    if op == "adams":
        return {g: at(G.power(g, n)) for g in reps}
    if op in ("sym", "lambda"):
        signed = op == "lambda"
        result = {}
        for g in reps:
            total = Fraction(0)
            for parts, weight, sign in _partition_terms(n):
                term = weight * (sign if signed else 1)
                for k, m in parts.items():
                    term *= at(G.power(g, k)) ** m
                total += term
            result[g] = total
        return result
    if op == "total_sym":
        return [level1_ops(G, chi, "sym", k) if k else {g: Fraction(1) for g in reps} for k in range(n + 1)]
    if op == "total_lambda":
        return [level1_ops(G, chi, "lambda", k) if k else {g: Fraction(1) for g in reps} for k in range(n + 1)]
    raise PreconditionError(f"未知的一阶运算: {op}")


def level1_exp_sym(G: Group, chi: Dict[object, Fraction], var_order: int) -> List[Dict[object, Fraction]]:
    """S_t(χ) = exp(Σ ψ_k(χ)/k·t^k)，逐类按递推 m·S_m = Σ_k ψ_k·S_{m-k} 展开。"""
    reps = [cls[0] for cls in conjugacy_classes(G)]
    adams = [None] + [level1_ops(G, chi, "adams", k) for k in range(1, var_order + 1)]
    result = [{g: Fraction(1) for g in reps}]
    for m in range(1, var_order + 1):
        result.append({g: sum((adams[k][g] * result[m - k][g] for k in range(1, m + 1)), Fraction(0)) / m
                       for g in reps})
    return result


def level1_product_check(G: Group, chi: Dict[object, Fraction], var_order: int) -> bool:
    """Λ_{−t}(χ)·S_t(χ) = 1。"""
    sym = level1_ops(G, chi, "total_sym", var_order)
    lam = level1_ops(G, chi, "total_lambda", var_order)
    for g in sym[0]:
        for m in range(var_order + 1):
            value = sum((sym[i][g] * lam[m - i][g] * (-1) ** (m - i) for i in range(m + 1)), Fraction(0))
            if value != (1 if m == 0 else 0):
                return False
    return True
