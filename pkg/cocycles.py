"""
循环群 Z/n 上的规范化 3-上闭链及扭曲扇区的单位根数据。

类 s 的代表上闭链取为 α_s(i,j,k) = (s/n)·i·⌊(j+k)/n⌋ mod 1，取值用 [0,1) 中的 Fraction 表示。
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

import settings
from errors import CapExceededError, PreconditionError

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CyclicCocycle:
    """Z/n 上上同调类为 s 的规范化 3-上闭链。"""
    n: int
    s: int

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"循环群的阶必须为正整数，收到 {self.n}")
        object.__setattr__(self, "s", self.s % self.n)

    def __call__(self, i: int, j: int, k: int) -> Fraction:
        return cocycle_eval(self, i, j, k)


@dataclass(frozen=True)
class TwistData:
    """扭曲数据：n 为 g 的阶，h = n/gcd(n,s) 为限制类的阶，N = n·h。"""
    n: int
    s: int
    h: int
    N: int

    @property
    def offset(self) -> Fraction:
        """指数格 (1/n)Z + s/N 的平移量。"""
        return Fraction(self.s, self.N)

    def admits_exponent(self, r) -> bool:
        return ((Fraction(r) - self.offset) * self.n).denominator == 1


def cocycle_eval(alpha: CyclicCocycle, i: int, j: int, k: int) -> Fraction:
    n = alpha.n
    i, j, k = i % n, j % n, k % n
    return Fraction(alpha.s * i * ((j + k) // n), n) % 1


def coboundary_check(alpha: CyclicCocycle, evaluate: Optional[Callable[[int, int, int], Fraction]] = None) -> bool:
    """
    穷举检验 δα(a,b,c,d) ≡ 0 mod 1。

    Args:
        alpha: 上闭链，决定群 Z/n。
        evaluate: 可选的取值函数（例如被篡改的取值表），默认为 alpha 本身。

    Raises:
        CapExceededError: n 超过 settings.COCYCLE_EXHAUSTIVE_CAP。
    """
    n = alpha.n
    if n > settings.COCYCLE_EXHAUSTIVE_CAP:
        raise CapExceededError(f"n={n} 超出穷举上限 {settings.COCYCLE_EXHAUSTIVE_CAP}")
    f = evaluate or alpha
    for a, b, c, d in itertools.product(range(n), repeat=4):
        delta = f(b, c, d) - f((a + b) % n, c, d) + f(a, (b + c) % n, d) - f(a, b, (c + d) % n) + f(a, b, c)
        if delta % 1:
            logger.warning(f"Z/{n} 上闭链条件在 ({a},{b},{c},{d}) 处失败，δα = {delta % 1}")
            return False
    return True


def is_normalized(alpha: CyclicCocycle) -> bool:
    n = alpha.n
    for x, y in itertools.product(range(n), repeat=2):
        if alpha(0, x, y) or alpha(x, 0, y) or alpha(x, y, 0):
            return False
    return True


def tn_action(alpha: CyclicCocycle) -> Fraction:
    """T^n 在 g-扭曲扇区上的作用 e^{2πi·x}，返回 x = Σ_{k=0}^{n-1} α(1,k,1) mod 1。"""
    return sum((alpha(1, k, 1) for k in range(alpha.n)), Fraction(0)) % 1


def action_order(alpha: CyclicCocycle) -> int:
    """tn_action 在 R/Z 中的阶。"""
    return tn_action(alpha).denominator


def restrict_to_power(alpha: CyclicCocycle, m: int) -> CyclicCocycle:
    """
    α 限制到 ⟨g^m⟩ ≅ Z/(n/m) 上的类：在子群的生成循环上求值后读出 s'。

    Raises:
        PreconditionError: m 不整除 n。
    """
    if m < 1 or alpha.n % m:
        raise PreconditionError(f"m={m} 不整除 n={alpha.n}")
    sub_order = alpha.n // m
    value = sum((alpha(m, m * k, m) for k in range(sub_order)), Fraction(0)) % 1
    s_restricted = value * sub_order
    if s_restricted.denominator != 1:
        raise PreconditionError(f"限制后的取值 {value} 不在 (1/{sub_order})Z 中")
    return CyclicCocycle(sub_order, int(s_restricted))


def twist_data(n: int, s: int) -> TwistData:
    if n < 1:
        raise PreconditionError(f"g 的阶必须为正整数，收到 {n}")
    s = s % n
    h = n // gcd(n, s)
    return TwistData(n, s, h, n * h)


# --- 周期分解与规范化 bar 分解之间的链映射 ---
# 群环 Z[Z/n] 的元素为 {指数: 系数}；bar 分解 B_k 的元素为 {(g0, (g1,...,gk)): 系数}，
# 其中任何 gi = 0（单位元）的符号为零。

BarElem = Dict[Tuple[int, Tuple[int, ...]], int]


def _bar_add(acc: BarElem, key, coeff: int) -> None:
    if any(x == 0 for x in key[1]):
        return
    acc[key] = acc.get(key, 0) + coeff
    if acc[key] == 0:
        del acc[key]


def _bar_differential(elem: BarElem, n: int) -> BarElem:
    result: BarElem = {}
    for (g0, symbol), coeff in elem.items():
        k = len(symbol)
        _bar_add(result, ((g0 + symbol[0]) % n, symbol[1:]), coeff)
        for i in range(k - 1):
            merged = symbol[:i] + ((symbol[i] + symbol[i + 1]) % n,) + symbol[i + 2:]
            _bar_add(result, (g0, merged), (-1) ** (i + 1) * coeff)
        _bar_add(result, (g0, symbol[:-1]), (-1) ** k * coeff)
    return result


def _ring_act(ring: Dict[int, int], elem: BarElem, n: int) -> BarElem:
    result: BarElem = {}
    for t, c in ring.items():
        for (g0, symbol), coeff in elem.items():
            _bar_add(result, ((g0 + t) % n, symbol), c * coeff)
    return result


def _chain_map_images(n: int) -> List[BarElem]:
    """f_0..f_3 在 1 处的像。"""
    f0 = {(0, ()): 1}
    f1: BarElem = {}
    _bar_add(f1, (0, (1 % n,)), 1)
    f2: BarElem = {}
    f3: BarElem = {}
    for k in range(n):
        _bar_add(f2, (0, (k, 1 % n)), 1)
        _bar_add(f3, (0, (1 % n, k, 1 % n)), 1)
    return [f0, f1, f2, f3]


def _periodic_differentials(n: int) -> List[Dict[int, int]]:
    """d_1 = t - 1，d_2 = N = Σ t^i，d_3 = t - 1。"""
    t_minus_one = {1 % n: 1}
    t_minus_one[0] = t_minus_one.get(0, 0) - 1
    norm: Dict[int, int] = {}
    for i in range(n):
        norm[i] = norm.get(i, 0) + 1
    return [t_minus_one, norm, t_minus_one]


@dataclass
class ChainMapReport:
    n: int
    commutes: List[bool] = field(default_factory=list)
    coinvariant_differentials: List[int] = field(default_factory=list)
    pairings: List[Fraction] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        injective = len(set(self.pairings)) == self.n
        return all(self.commutes) and self.coinvariant_differentials == [0, self.n, 0] and injective


def chain_map_check(n: int) -> ChainMapReport:
    """
    检验周期分解到规范化 bar 分解的链映射 f_0..f_3 与微分交换，
    余不变量上的微分为 0, n, 0，且类 s 的上闭链与生成循环 f_3(1) 的配对为 s/n（关于 s 单射）。
    """
    if n < 1:
        raise PreconditionError(f"循环群的阶必须为正整数，收到 {n}")
    images = _chain_map_images(n)
    differentials = _periodic_differentials(n)
    report = ChainMapReport(n)
    for k in range(1, 4):
        lhs = _bar_differential(images[k], n)
        rhs = _ring_act(differentials[k - 1], images[k - 1], n)
        report.commutes.append(lhs == rhs)
        report.coinvariant_differentials.append(sum(differentials[k - 1].values()))
    for s in range(n):
        alpha = CyclicCocycle(n, s)
        pairing = sum((coeff * alpha(*symbol) for (_, symbol), coeff in images[3].items()), Fraction(0)) % 1
        report.pairings.append(pairing)
    logger.debug(f"Z/{n} 链映射检验: {report}")
    return report
