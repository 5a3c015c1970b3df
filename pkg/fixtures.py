"""
生成演示与测试用的 Norton 级数：带种子的随机有理 Norton 级数、Z/2 上的扭曲样例，
以及 McKay–Thompson 级数 T_2B。
"""
import logging
import random
from fractions import Fraction
from pathlib import Path
from typing import Optional

import settings
from cocycles import twist_data
from finite_groups import Group, PairClass, cyclic_group, pair_classes
from norton import NortonSeries
from qseries import PuiseuxSeries, constant, invert_unit, j_expansion, monomial, substitute
from series_io import write_norton

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)


def _random_coefficient(rng: random.Random) -> Fraction:
    numerator = 0
    while numerator == 0:
        numerator = rng.randint(-settings.RANDOM_NUMERATOR_BOX, settings.RANDOM_NUMERATOR_BOX)
    return Fraction(numerator, rng.randint(1, settings.RANDOM_DENOMINATOR_BOX))


def random_series(rng: random.Random, denom: int, trunc: int) -> PuiseuxSeries:
    """指数取 k/denom（从 −1 开始，到 trunc 之前），每个位置以 RANDOM_DENSITY 的概率出现。"""
    terms = {}
    for k in range(-denom, trunc * denom):
        if rng.random() < settings.RANDOM_DENSITY:
            terms[Fraction(k, denom)] = _random_coefficient(rng)
    return PuiseuxSeries(terms, denom, trunc)


def random_norton(G: Group, seed: Optional[int] = None, trunc: int = settings.DEFAULT_FIXTURE_TRUNC) -> NortonSeries:
    """
    随机有理 Norton 级数：类 [g,h] 处的级数使用 (1/|g|)Z 中的指数。

    Args:
        G (Group): 有限群。
        seed (int): 随机种子，相同种子给出相同结果。
        trunc (int): 截断位置。
    """
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = random.Random(seed)
    values = {}
    for pc in pair_classes(G):
        values[pc] = random_series(rng, G.element_order(pc.g), trunc)
    logger.debug(f"随机 Norton 级数: 群 {G.label}，种子 {seed}，截断 {trunc}")
    return NortonSeries(G, values)


# --- Z/2 上的扭曲样例 ---
def _twisted_leading() -> PuiseuxSeries:
    return PuiseuxSeries({Fraction(1, 4): 1, Fraction(3, 4): 2}, 4)


def _untwisted_value() -> PuiseuxSeries:
    return PuiseuxSeries({-1: 1, 1: 3})


def twisted_z2_fixture() -> NortonSeries:
    """
    Z/2，s = 1（N = 4）：f(1,0) = q^{1/4} + 2q^{3/4}，f(1,1) = f(1,0)(τ+1)，g = 0 的类取整数指数级数。

    T 等变性的标量在 (1,0) 处为 1，在 (1,1) 处为 −1。
    """
    G = cyclic_group(2)
    leading = _twisted_leading()

    def value(pc: PairClass) -> PuiseuxSeries:
        if pc.g == G.identity:
            return _untwisted_value()
        return leading if pc.h == G.identity else leading.shift_tau(1)

    return NortonSeries.from_function(G, value, {(1,): twist_data(2, 1)})


def broken_twisted_fixture() -> NortonSeries:
    """与 twisted_z2_fixture 相同，但 f(1,1) 没有做 τ -> τ+1 平移，T 等变性不成立。"""
    G = cyclic_group(2)
    leading = _twisted_leading()
    return NortonSeries.from_function(
        G, lambda pc: _untwisted_value() if pc.g == G.identity else leading, {(1,): twist_data(2, 1)})


# --- McKay–Thompson 级数 ---
def _euler_product(prec: int) -> PuiseuxSeries:
    """∏_{n≥1}(1 − q^n)，截断到 q^prec。"""
    product = constant(1, trunc=prec)
    for n in range(1, prec):
        product = product * PuiseuxSeries({0: 1, n: -1})
    return product


def mckay_thompson_2b(order: int) -> PuiseuxSeries:
    """
    T_2B = q^{-1}·∏(1−q^n)^{24}/∏(1−q^{2n})^{24} + 24，展开到 q^order（含）。

    Returns:
        PuiseuxSeries: trunc = order + 1。
    """
    prec = order + 2
    p1 = _euler_product(prec)
    p2 = substitute(p1, 2, 0, 1)
    ratio = p1 * invert_unit(p2)
    return monomial(-1) * ratio ** 24 + 24


def monster_z2_norton(order: int) -> NortonSeries:
    """
    Z/2 ⊂ M（由 2B 类生成）上的 Norton 级数：f(1,1) = j − 744，f(1,h) = T_2B；
    扭曲扇区填入 j − 744，只用于无扭曲扇区的可复制性检验。
    """
    G = cyclic_group(2)
    j = j_expansion(order)
    t2b = mckay_thompson_2b(order)
    return NortonSeries.from_function(
        G, lambda pc: t2b if pc.g == G.identity and pc.h != G.identity else j)


def save_random_fixture(G: Group, seed: int, trunc: int, out_path) -> Path:
    """生成随机 Norton 级数并保存为 JSON。"""
    out_path = Path(out_path)
    f = random_norton(G, seed, trunc)
    write_norton(out_path, f)
    logger.info(f"随机 Norton 级数已保存到: {out_path}（{len(f.values)} 个类）")
    return out_path
