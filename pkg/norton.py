"""
Norton 级数：给每个交换对共轭类指定一个 q-级数。

包含 T 等变性（符号）与一般 SL₂(Z) 等变性（数值）的检验、
沿群同态的限制与诱导、内积以及扭曲扇区的指数支撑检验。
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import PreconditionError
from exact_arith import CycloElem, inverse, root_of_unity_exponent
from finite_groups import (Group, PairClass, class_of, direct_product, pair_classes, sl2_act,
                           trivial_group)
from cocycles import TwistData, twist_data
from qseries import EXACT, PuiseuxSeries, align, aligned_product, constant, sum_series, zero

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)

T_MATRIX = ((1, 1), (0, 1))
S_MATRIX = ((0, 1), (-1, 0))


@dataclass
class NortonSeries:
    """
    群 G 上的 Norton 级数。

    Attributes:
        group: 有限群。
        values: 每个 PairClass 对应的级数，必须覆盖全部交换对共轭类。
        twist: 可选的扭曲数据，键为元素 g，值为 TwistData。
    """
    group: Group
    values: Dict[PairClass, PuiseuxSeries]
    twist: Optional[Dict[object, TwistData]] = None

    def __post_init__(self):
        classes = pair_classes(self.group)
        missing = [pc for pc in classes if pc not in self.values]
        if missing:
            raise PreconditionError(f"{self.group.label} 上缺少 {len(missing)} 个共轭类的取值，例如 {missing[0]}")
        extra = set(self.values) - set(classes)
        if extra:
            raise PreconditionError(f"取值中含有非 {self.group.label} 的共轭类: {next(iter(extra))}")

    @classmethod
    def from_function(cls, group: Group, fn: Callable[[PairClass], PuiseuxSeries], twist=None) -> "NortonSeries":
        return cls(group, {pc: fn(pc) for pc in pair_classes(group)}, twist)

    def classes(self) -> List[PairClass]:
        return pair_classes(self.group)

    def twist_for(self, g) -> TwistData:
        """g 所在扇区的扭曲数据；未给出时视为 s = 0。"""
        G = self.group
        for x, td in (self.twist or {}).items():
            if x == g or any(G.conjugate(x, s) == g for s in G.elements):
                return td
        return twist_data(G.element_order(g), 0)

    def min_trunc(self):
        return min((s.trunc for s in self.values.values()), default=EXACT)


def evaluate(f: NortonSeries, g, h) -> PuiseuxSeries:
    """
    f 在 (g,h) 所在共轭类上的取值。

    Raises:
        PreconditionError: g 与 h 不交换。
    """
    return f.values[class_of(f.group, g, h)]


def constant_norton(G: Group, value) -> NortonSeries:
    series = value if isinstance(value, PuiseuxSeries) else constant(value)
    return NortonSeries.from_function(G, lambda pc: series)


def pullback_from_trivial(series: PuiseuxSeries, G: Group) -> NortonSeries:
    """沿 G -> 1 拉回：每个共轭类取同一个级数。"""
    return constant_norton(G, series)


# --- T 等变性 ---
@dataclass
class TEntry:
    pair_class: PairClass
    agrees: bool
    scalar: Optional[CycloElem]
    scalar_exponent: Optional[Fraction]
    trunc: object
    reason: str = ""


@dataclass
class TReport:
    group_label: str
    entries: List[TEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.agrees for e in self.entries)


def _solve_scalar(lhs: PuiseuxSeries, rhs: PuiseuxSeries) -> Tuple[Optional[CycloElem], str]:
    """求 λ 使 lhs = λ·rhs（在公共截断以下），不存在时返回 (None, 原因)。"""
    lhs, rhs = align(lhs, rhs)
    common = min(lhs.trunc, rhs.trunc)
    lhs, rhs = lhs.truncate(common), rhs.truncate(common)
    if rhs.is_zero():
        if lhs.is_zero():
            return CycloElem.rational(1), ""
        return None, "右端为零而左端非零"
    exp = rhs.valuation
    if lhs.is_zero() or lhs.valuation != exp:
        return None, f"首项指数不一致: {lhs.valuation} 与 {exp}"
    scalar = lhs.coefficient(exp) * inverse(rhs.coefficient(exp))
    if not lhs.agrees_with(rhs.scale(scalar)):
        return None, "不存在统一的标量"
    return scalar, ""


def check_T_equivariance(f: NortonSeries) -> TReport:
    """
    对每个共轭类比较 f(g, gh) 与 f(g, h)(τ+1)，判断两者是否只差一个单位根标量。
    """
    G = f.group
    report = TReport(G.label)
    for pc in f.classes():
        g, h = pc.representative
        lhs = evaluate(f, *sl2_act(G, (g, h), T_MATRIX))
        rhs = f.values[pc].shift_tau(1)
        scalar, reason = _solve_scalar(lhs, rhs)
        exponent = root_of_unity_exponent(scalar) if scalar is not None else None
        if scalar is not None and exponent is None:
            reason = f"标量 {scalar} 不是单位根"
        agrees = scalar is not None and exponent is not None
        report.entries.append(TEntry(pc, agrees, scalar, exponent, min(lhs.trunc, rhs.trunc), reason))
        if not agrees:
            logger.warning(f"T 等变性在 {pc.representative} 处失败: {reason}")
    return report


# --- 数值检验 ---
def series_to_complex(f: PuiseuxSeries, tau: complex) -> Tuple[complex, float]:
    """
    在 τ 处数值求和 Σ c·e^{2πirτ}（ζ_L -> e^{2πi/L}）。

    Returns:
        (值, 尾项估计)：尾项估计为最后一个存储项的模，精确级数为 0。
    """
    if not f._terms:
        return 0j, 0.0
    exps = np.array([float(e) for e in f._terms], dtype=float)
    roots = np.exp(2j * np.pi * np.arange(len(next(iter(f._terms.values())).coords)) / f.order)
    coeffs = np.array([np.dot(np.array([float(x) for x in c.coords]), roots) for c in f._terms.values()])
    terms = coeffs * np.exp(2j * np.pi * exps * tau)
    tail = 0.0 if f.is_exact() else float(abs(terms[-1]))
    return complex(terms.sum()), tail


def mobius(gamma, tau: complex) -> complex:
    (a, b), (c, d) = gamma
    return (a * tau + b) / (c * tau + d)


@dataclass
class NumericEntry:
    pair_class: PairClass
    max_deviation: float
    scalar: complex
    truncation_ok: bool


@dataclass
class NumericReport:
    gamma: tuple
    tolerance: float
    entries: List[NumericEntry] = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max((e.max_deviation for e in self.entries), default=0.0)

    @property
    def ok(self) -> bool:
        return all(e.truncation_ok for e in self.entries) and self.max_deviation <= self.tolerance


def numeric_check(f: NortonSeries, gamma, tau_samples: Sequence[complex], tol: float) -> NumericReport:
    """
    数值检验 f(g^a h^c, g^b h^d; τ) = λ·f(g, h; γτ)，每个共轭类优化一个模为 1 的标量 λ。

    截断尾项超过 tol 时该类标记 truncation_ok = False，不会静默通过。

    Raises:
        PreconditionError: 采样点不在上半平面或 det γ ≠ 1。
    """
    samples = [complex(t) for t in tau_samples]
    if not samples:
        raise PreconditionError("至少需要一个采样点")
    if any(t.imag <= 0 for t in samples):
        raise PreconditionError("采样点必须位于上半平面")
    G = f.group
    report = NumericReport(tuple(map(tuple, gamma)), tol)
    for pc in f.classes():
        lhs_series = evaluate(f, *sl2_act(G, pc.representative, gamma))
        rhs_series = f.values[pc]
        lhs_vals, rhs_vals, tails = [], [], []
        for tau in samples:
            value, tail = series_to_complex(lhs_series, tau)
            lhs_vals.append(value)
            tails.append(tail)
            value, tail = series_to_complex(rhs_series, mobius(gamma, tau))
            rhs_vals.append(value)
            tails.append(tail)
        lhs_arr, rhs_arr = np.array(lhs_vals), np.array(rhs_vals)
        overlap = np.sum(lhs_arr * np.conj(rhs_arr))
        scalar = overlap / abs(overlap) if abs(overlap) > 0 else 1.0 + 0j
        deviation = float(np.max(np.abs(lhs_arr - scalar * rhs_arr)))
        truncation_ok = max(tails) <= tol
        if not truncation_ok:
            logger.warning(f"{pc.representative} 的截断尾项 {max(tails):.3e} 超过容差 {tol}")
        report.entries.append(NumericEntry(pc, deviation, complex(scalar), truncation_ok))
    return report


# --- 限制与诱导 ---
def _as_map(hom) -> Callable:
    return hom if callable(hom) else hom.__getitem__


def check_homomorphism(H: Group, G: Group, hom) -> None:
    """
    Raises:
        PreconditionError: hom 不是群同态。
    """
    phi = _as_map(hom)
    for x in H.elements:
        for y in H.elements:
            if phi(H.mul(x, y)) != G.mul(phi(x), phi(y)):
                raise PreconditionError(
                    f"映射不是同态: {H.format_element(x)}, {H.format_element(y)}")


def restrict(f: NortonSeries, H: Group, hom) -> NortonSeries:
    """res(f)([h₁,h₂]_H) = f([a(h₁),a(h₂)]_G)。扭曲数据不保留。"""
    check_homomorphism(H, f.group, hom)
    phi = _as_map(hom)
    return NortonSeries.from_function(H, lambda pc: evaluate(f, phi(pc.g), phi(pc.h)))


def induce(f: NortonSeries, G: Group, hom) -> NortonSeries:
    """
    ind(f)([g₁,g₂]_G) = |C_G(g₁,g₂)| · Σ_{a(h₁,h₂) ~ (g₁,g₂)} (1/|H|)·f([h₁,h₂]_H)。

    对 H 的交换对求和按 H-共轭类分组，权重为 class_size_H/|H|。
    """
    H = f.group
    check_homomorphism(H, G, hom)
    phi = _as_map(hom)
    buckets: Dict[PairClass, List[PuiseuxSeries]] = {}
    for pc in f.classes():
        target = class_of(G, phi(pc.g), phi(pc.h))
        buckets.setdefault(target, []).append(f.values[pc].scale(Fraction(pc.class_size, H.order)))

    def value(pc: PairClass) -> PuiseuxSeries:
        if pc not in buckets:
            return zero()
        return sum_series(buckets[pc]).scale(pc.centralizer_order)

    return NortonSeries.from_function(G, value)


# --- 乘积与内积 ---
def internal_product(f1: NortonSeries, f2: NortonSeries) -> NortonSeries:
    _check_same_group(f1, f2)
    return NortonSeries.from_function(f1.group, lambda pc: aligned_product(f1.values[pc], f2.values[pc]))


def external_product(f_left: NortonSeries, f_right: NortonSeries) -> NortonSeries:
    """(f⊠f')((g₁,h₁),(g₂,h₂)) = f(g₁,g₂)·f'(h₁,h₂)，定义在 G×H 上。"""
    GH = direct_product(f_left.group, f_right.group)

    def value(pc: PairClass) -> PuiseuxSeries:
        (g1, h1), (g2, h2) = pc.representative
        return aligned_product(evaluate(f_left, g1, g2), evaluate(f_right, h1, h2))

    return NortonSeries.from_function(GH, value)


def inner_product(f1: NortonSeries, f2: NortonSeries) -> PuiseuxSeries:
    """⟨f₁,f₂⟩ = (1/|G|) Σ_{gh=hg} f₁(g,h)·f₂(g,h)，按共轭类求和，权重 1/|C(g,h)|。"""
    _check_same_group(f1, f2)
    return sum_series([aligned_product(f1.values[pc], f2.values[pc]).scale(Fraction(1, pc.centralizer_order))
                       for pc in f1.classes()])


def inner_product_by_induction(f1: NortonSeries, f2: NortonSeries) -> PuiseuxSeries:
    """内积的另一种算法：沿 G -> 1 诱导逐类乘积，取 (1,1) 处的值。"""
    point = trivial_group()
    induced = induce(internal_product(f1, f2), point, lambda _: point.identity)
    return evaluate(induced, point.identity, point.identity)


def _check_same_group(f1: NortonSeries, f2: NortonSeries) -> None:
    if f1.group != f2.group:
        raise PreconditionError(f"群不一致: {f1.group.label} 与 {f2.group.label}")


# --- 扭曲支撑 ---
@dataclass
class SupportEntry:
    pair_class: PairClass
    twist: TwistData
    ok: bool
    bad_exponent: Optional[Fraction] = None


@dataclass
class SupportReport:
    entries: List[SupportEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def validate_twisted_support(f: NortonSeries) -> SupportReport:
    """
    检查每个类的级数指数都落在 (1/n)Z + s/N 中。

    Raises:
        PreconditionError: f 没有扭曲数据。
    """
    if f.twist is None:
        raise PreconditionError("validate_twisted_support 需要扭曲数据")
    report = SupportReport()
    for pc in f.classes():
        td = f.twist_for(pc.g)
        bad = next((e for e, _ in f.values[pc].items() if not td.admits_exponent(e)), None)
        report.entries.append(SupportEntry(pc, td, bad is None, bad))
        if bad is not None:
            logger.warning(f"{pc.representative} 的指数 {bad} 不在 (1/{td.n})Z + {td.offset} 中")
    return report
