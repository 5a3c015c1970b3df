"""
Hecke 算子的三种实现（几何、组合、经典）及其等价性验证，另含循环模点上的 Fricke 对合。

三种实现统一采用 1/n 归一化。
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Mapping, Optional

from sympy import divisors

import power_ops
from errors import PreconditionError, TruncationError
from finite_groups import PairClass, hecke_triples, pullback_pair, transitive_pair_classes
from norton import NortonSeries, evaluate
from qseries import EXACT, PuiseuxSeries, check_normalized, difference, substitute, sum_series

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)


def _finish(total: PuiseuxSeries, n: int) -> PuiseuxSeries:
    result = total.scale(Fraction(1, n)).rationalize()
    if result.trunc <= 0:
        raise TruncationError(f"T_{n} 的结果截断位置 {result.trunc} 不足，请提高输入精度")
    return result


def hecke_geometric(f: NortonSeries, n: int) -> NortonSeries:
    """
    T_n(f)(g,h;τ) = (1/n) Σ_{ad=n, 0≤b<d} f(g^d, g^{-b}h^a; (aτ+b)/d)。

    Raises:
        TruncationError: 输入截断不足以给出非负次系数。
    """
    G = f.group
    triples = hecke_triples(n)

    def value(pc: PairClass) -> PuiseuxSeries:
        parts = []
        for a, b, d in triples:
            source = evaluate(f, *pullback_pair(G, pc.representative, (a, b, d)))
            parts.append(substitute(source, a, b, d))
        return _finish(sum_series(parts), n)

    logger.debug(f"几何 Hecke 算子 T_{n}，{len(triples)} 个三元组")
    return NortonSeries.from_function(G, value)


def hecke_combinatorial(f: NortonSeries, n: int) -> NortonSeries:
    """
    T_n(f) = (1/n) Σ_{[σ,ρ] 传递} ψ_{σ,ρ}(f)，对 Σₙ 中传递交换对的共轭类求和。

    Raises:
        CapExceededError: n 超过枚举上限。
    """
    classes = transitive_pair_classes(n)
    psis = [power_ops.psi_pair(f, pc.g, pc.h) for pc, _ in classes]
    logger.debug(f"组合 Hecke 算子 T_{n}，{len(classes)} 个传递类")
    return NortonSeries.from_function(
        f.group, lambda pc: _finish(sum_series([psi.values[pc] for psi in psis]), n))


def hecke_classical(f: PuiseuxSeries, n: int, replicates: Mapping[int, PuiseuxSeries]) -> PuiseuxSeries:
    """
    (1/n)Φ_n(f) 的系数公式：Σ_m Σ_{a|(m,n)} (1/a)·c^{(a)}(nm/a²)·q^m，只用有理数运算。

    Args:
        replicates: a -> f^{(a)}，对每个 a | n 都必须给出。

    Raises:
        PreconditionError: f 不是规范形式或缺少复制函数。
    """
    check_normalized(f)
    missing = [a for a in divisors(n) if a not in replicates]
    if missing:
        raise PreconditionError(f"缺少复制函数 f^({missing[0]})")
    reps = {a: replicates[a].rationalize() for a in divisors(n)}
    reps[1] = f.rationalize()
    trunc = min(reps[a].trunc * Fraction(a * a, n) for a in divisors(n))
    if trunc == EXACT:
        # 精确输入：最高次项之后的系数全为零
        stop = max(max(r.terms, default=0) * Fraction(a * a, n) for a, r in reps.items()) + 1
    else:
        stop = trunc
    terms: Dict[int, Fraction] = {}
    m = -n
    while m < stop:
        coeff = Fraction(0)
        for a in divisors(gcd(m, n)):
            coeff += reps[a].rational_coefficient(Fraction(n * m, a * a)) / a
        if coeff:
            terms[m] = coeff
        m += 1
    return PuiseuxSeries(terms, 1, trunc)


@dataclass
class HeckeReport:
    """geometric 与 combinatorial 的逐类差；classical_delta 仅在平凡群且给出复制函数时存在。"""
    n: int
    deltas: Dict[PairClass, PuiseuxSeries] = field(default_factory=dict)
    classical_delta: Optional[PuiseuxSeries] = None

    @property
    def agrees(self) -> bool:
        if any(not d.is_zero() for d in self.deltas.values()):
            return False
        return self.classical_delta is None or self.classical_delta.is_zero()


def verify_equivalence(f: NortonSeries, n: int,
                       replicates: Optional[Mapping[int, PuiseuxSeries]] = None) -> HeckeReport:
    geometric = hecke_geometric(f, n)
    combinatorial = hecke_combinatorial(f, n)
    report = HeckeReport(n)
    for pc in f.classes():
        report.deltas[pc] = difference(geometric.values[pc], combinatorial.values[pc])
    if replicates is not None and f.group.order == 1:
        pc = f.classes()[0]
        classical = hecke_classical(f.values[pc], n, replicates)
        report.classical_delta = difference(geometric.values[pc], classical)
    if not report.agrees:
        logger.warning(f"T_{n} 的实现之间存在差异")
    return report


def check_multiplicativity(f: NortonSeries, m: int, n: int) -> Dict[PairClass, PuiseuxSeries]:
    """
    T_m T_n 与 T_{mn} 的逐类差（gcd(m,n) = 1）。

    Raises:
        PreconditionError: m 与 n 不互素。
    """
    if gcd(m, n) != 1:
        raise PreconditionError(f"T_m T_n = T_mn 只对互素的 m={m}, n={n} 检验")
    composed = hecke_geometric(hecke_geometric(f, n), m)
    direct = hecke_geometric(f, m * n)
    return {pc: difference(composed.values[pc], direct.values[pc]) for pc in f.classes()}


# --- Fricke 对合 ---
@dataclass(frozen=True)
class ModuliPoint:
    """循环模点 (1, g; Mτ)：g 为 Z/n 的生成元，M 为作用在 τ 上的整数矩阵（射影意义下）。"""
    n: int
    g: int
    matrix: tuple = ((1, 0), (0, 1))

    def apply(self, tau: complex) -> complex:
        (a, b), (c, d) = self.matrix
        return (a * tau + b) / (c * tau + d)

    def describe(self) -> str:
        (a, b), (c, d) = self.matrix
        return f"(1, {self.g}; ({a}τ{b:+d})/({c}τ{d:+d}))"

    def same_point(self, other: "ModuliPoint") -> bool:
        """矩阵相差非零标量倍时视为同一点。"""
        if (self.n, self.g % self.n) != (other.n, other.g % other.n):
            return False
        (a, b), (c, d) = self.matrix
        (p, q), (r, s) = other.matrix
        return a * q == b * p and a * r == c * p and a * s == d * p and b * r == c * q \
            and b * s == d * q and c * s == d * r


def fricke(n: int, point) -> ModuliPoint:
    """
    W_n(1, g; τ) = (1, g; −1/(nτ))，以矩阵 [[0,−1],[n,0]] 左乘 τ 的矩阵。

    Args:
        point: ModuliPoint，或 Z/n 的生成元 g（τ 为形式变量）。

    Raises:
        PreconditionError: g 不生成 Z/n。
    """
    if n < 1:
        raise PreconditionError(f"n 必须为正整数，收到 {n}")
    if not isinstance(point, ModuliPoint):
        point = ModuliPoint(n, int(point))
    if point.n != n:
        raise PreconditionError(f"模点的阶 {point.n} 与 n={n} 不一致")
    if gcd(point.g, n) != 1:
        raise PreconditionError(f"{point.g} 不是 Z/{n} 的生成元")
    (a, b), (c, d) = point.matrix
    matrix = ((-c, -d), (n * a, n * b))
    return ModuliPoint(n, point.g, matrix)
