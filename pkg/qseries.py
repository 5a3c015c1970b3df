"""
截断的 Puiseux / Laurent 级数，系数在分圆域中。

级数记录公共分母 N（所有指数属于 (1/N)Z）、截断位置 trunc（指数 >= trunc 的项未知）
以及统一的分圆阶 order。trunc 为 EXACT（正无穷）表示级数是精确的有限和。
所有运算都悲观地传播截断位置，从不读取 trunc 之外的系数。
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, List, Optional, Union

import sympy

import settings
from errors import PreconditionError, TruncationError
from exact_arith import (CycloElem, as_cyclo, embed, inverse, lcm, root_of_unity,
                         try_rational)

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)

EXACT = math.inf

Exponent = Union[int, Fraction]


class PuiseuxSeries:
    """q^{1/N} 的截断级数，系数为 CycloElem，所有系数共用同一分圆阶。"""

    __slots__ = ("denom", "trunc", "order", "_terms")

    def __init__(self, terms=None, denom: int = 1, trunc=EXACT, order: Optional[int] = None):
        if denom < 1:
            raise PreconditionError(f"级数分母必须为正整数，收到 {denom}")
        trunc = trunc if trunc == EXACT else Fraction(trunc)
        raw = dict(terms or {})
        if order is None:
            orders = {c.order for c in raw.values() if isinstance(c, CycloElem) and not c.is_rational()}
            if len(orders) > 1:
                raise PreconditionError(f"系数的分圆阶不一致: {sorted(orders)}，请先 embed")
            order = orders.pop() if orders else 1
        cleaned = {}
        for exp in sorted(Fraction(e) for e in raw):
            if exp >= trunc:
                continue
            if (exp * denom).denominator != 1:
                raise PreconditionError(f"指数 {exp} 不在 (1/{denom})Z 中")
            coeff = _to_order(as_cyclo(raw[exp]), order)
            if not coeff.is_zero():
                cleaned[exp] = coeff
        self.denom = denom
        self.trunc = trunc
        self.order = order
        self._terms = cleaned

    # --- 查询 ---
    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def valuation(self):
        """最低次非零项的指数；零级数返回 trunc。"""
        for exp in self._terms:
            return exp
        return self.trunc

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return self.trunc == EXACT

    def is_rational_valued(self) -> bool:
        return all(c.is_rational() for c in self._terms.values())

    def has_integral_exponents(self) -> bool:
        return all(e.denominator == 1 for e in self._terms)

    def coefficient(self, exp: Exponent) -> CycloElem:
        exp = Fraction(exp)
        if exp >= self.trunc:
            raise TruncationError(f"指数 {exp} 超出截断位置 {self.trunc}")
        return self._terms.get(exp, CycloElem.rational(0, self.order))

    def rational_coefficient(self, exp: Exponent) -> Fraction:
        value = try_rational(self.coefficient(exp))
        if value is None:
            raise PreconditionError(f"q^{exp} 的系数不是有理数")
        return value

    # --- 变换 ---
    def truncate(self, trunc) -> "PuiseuxSeries":
        trunc = min(self.trunc, trunc if trunc == EXACT else Fraction(trunc))
        return PuiseuxSeries(self._terms, self.denom, trunc, self.order)

    def embed(self, order: int) -> "PuiseuxSeries":
        if order == self.order:
            return self
        return PuiseuxSeries({e: _to_order(c, order) for e, c in self._terms.items()},
                             self.denom, self.trunc, order)

    def rationalize(self) -> "PuiseuxSeries":
        """系数全为有理数时返回 order=1 的同值级数，否则原样返回。"""
        if self.order == 1 or not self.is_rational_valued():
            return self
        return PuiseuxSeries({e: c.coords[0] for e, c in self._terms.items()}, self.denom, self.trunc, 1)

    def shift_tau(self, k: int = 1) -> "PuiseuxSeries":
        """τ -> τ + k：c·q^r -> c·e^{2πi r k}·q^r。"""
        order = lcm(self.order, self.denom)
        terms = {}
        for exp, c in self._terms.items():
            phase = int(exp * self.denom) * k
            terms[exp] = embed(c, order) * root_of_unity(order, phase * (order // self.denom))
        result = PuiseuxSeries(terms, self.denom, self.trunc, order)
        return result.rationalize() if self.order == 1 else result

    def agrees_with(self, other: "PuiseuxSeries") -> bool:
        """在公共截断位置以下逐项相等。"""
        common = min(self.trunc, other.trunc)
        left, right = self.truncate(common), other.truncate(common)
        if left._terms.keys() != right._terms.keys():
            return False
        return all(left._terms[e] == right._terms[e] for e in left._terms)

    # --- 算术 ---
    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = constant(other, self.order)
        a, b = _compatible(self, other)
        terms = dict(a._terms)
        for exp, c in b._terms.items():
            terms[exp] = terms[exp] + c if exp in terms else c
        return PuiseuxSeries(terms, lcm(a.denom, b.denom), min(a.trunc, b.trunc), a.order)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({e: -c for e, c in self._terms.items()}, self.denom, self.trunc, self.order)

    def __sub__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "PuiseuxSeries":
        factor = as_cyclo(factor)
        series = self
        if not factor.is_rational() and factor.order != self.order:
            if not self.is_rational_valued():
                raise PreconditionError(f"阶不兼容: 级数阶 {self.order}，标量阶 {factor.order}")
            series = self._with_order(factor.order)
        return PuiseuxSeries({e: c * factor for e, c in series._terms.items()},
                             series.denom, series.trunc, series.order)

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self.scale(other)
        a, b = _compatible(self, other)
        trunc = min(a.trunc + b.valuation, b.trunc + a.valuation)
        acc: Dict[Fraction, CycloElem] = {}
        b_items = list(b._terms.items())
        for ea, ca in a._terms.items():
            for eb, cb in b_items:
                exp = ea + eb
                if exp >= trunc:
                    break
                acc[exp] = acc[exp] + ca * cb if exp in acc else ca * cb
        return PuiseuxSeries(acc, lcm(a.denom, b.denom), trunc, a.order)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PuiseuxSeries":
        if k < 0:
            return invert_unit(self) ** (-k)
        result = constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if self.trunc != other.trunc or self._terms.keys() != other._terms.keys():
            return False
        return all(self._terms[e] == other._terms[e] for e in self._terms)

    __hash__ = None

    def _with_order(self, order: int) -> "PuiseuxSeries":
        return PuiseuxSeries({e: CycloElem.rational(c.coords[0], order) for e, c in self._terms.items()},
                             self.denom, self.trunc, order)

    def __repr__(self):
        body = " + ".join(f"({c})q^{e}" for e, c in self._terms.items()) or "0"
        tail = "" if self.is_exact() else f" + O(q^{self.trunc})"
        return f"{body}{tail}"


def _to_order(c: CycloElem, order: int) -> CycloElem:
    if c.order == order:
        return c
    if c.is_rational():
        return CycloElem.rational(c.coords[0], order)
    return embed(c, order)


def _compatible(a: PuiseuxSeries, b: PuiseuxSeries):
    if a.order == b.order:
        return a, b
    if a.is_rational_valued():
        return a._with_order(b.order), b
    if b.is_rational_valued():
        return a, b._with_order(a.order)
    raise PreconditionError(f"级数分圆阶不兼容: {a.order} 与 {b.order}，请先 align")


# --- 构造 ---
def constant(value, order: int = 1, trunc=EXACT) -> PuiseuxSeries:
    return PuiseuxSeries({0: as_cyclo(value, order)}, 1, trunc, order)


def monomial(exp: Exponent, coeff=1, trunc=EXACT) -> PuiseuxSeries:
    exp = Fraction(exp)
    coeff = as_cyclo(coeff)
    return PuiseuxSeries({exp: coeff}, exp.denominator, trunc, coeff.order)


def zero(trunc=EXACT, order: int = 1) -> PuiseuxSeries:
    return PuiseuxSeries({}, 1, trunc, order)


def align(*series: PuiseuxSeries) -> List[PuiseuxSeries]:
    """把所有级数显式嵌入到公共阶（各阶的最小公倍数）。"""
    order = 1
    for s in series:
        order = lcm(order, s.order)
    return [s.embed(order) for s in series]


def sum_series(series: List[PuiseuxSeries]) -> PuiseuxSeries:
    """对齐后求和；空列表返回精确的零。"""
    if not series:
        return zero()
    aligned = align(*series)
    total = aligned[0]
    for s in aligned[1:]:
        total = total + s
    return total


def aligned_product(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    a, b = align(a, b)
    return a * b


def difference(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    """对齐后的差，截断到公共位置。"""
    a, b = align(a, b)
    return (a - b).truncate(min(a.trunc, b.trunc))


def series_arith(a: PuiseuxSeries, b, op: str) -> PuiseuxSeries:
    """
    级数的加、减、乘与标量乘。

    Args:
        op (str): 'add' / 'sub' / 'mul' / 'scale'（b 为 CycloElem 或有理数）。
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise PreconditionError(f"未知的级数运算: {op}")


def invert_unit(a: PuiseuxSeries) -> PuiseuxSeries:
    """
    计算 a 的乘法逆：a = c·q^v·(1 + u)，逆为 c^{-1}·q^{-v}·Σ(-u)^k。

    精确输入（有限和）按 settings.DEFAULT_EXACT_INVERSE_STEPS 步截断。

    Raises:
        PreconditionError: a 为零级数。
    """
    if a.is_zero():
        raise PreconditionError("零级数不可逆")
    v, lead = next(iter(a.items()))
    lead_inv = inverse(lead)
    N = a.denom
    if a.is_exact():
        steps = settings.DEFAULT_EXACT_INVERSE_STEPS
        logger.debug(f"精确级数求逆，截取 {steps} 步")
    else:
        steps = math.ceil((a.trunc - v) * N)
    unit = {int((e - v) * N): c * lead_inv for e, c in a.items()}
    nonzero = [(j, c) for j, c in unit.items() if j > 0]
    coeffs = [CycloElem.rational(1, a.order)]
    for k in range(1, steps):
        acc = CycloElem.rational(0, a.order)
        for j, c in nonzero:
            if j > k:
                break
            acc = acc + c * coeffs[k - j]
        coeffs.append(-acc)
    terms = {-v + Fraction(k, N): c * lead_inv for k, c in enumerate(coeffs)}
    return PuiseuxSeries(terms, N, -v + Fraction(steps, N), a.order)


def exp_series(a: PuiseuxSeries, trunc=None) -> PuiseuxSeries:
    """
    exp(a) = Σ a^k/k!，要求 a 的赋值严格为正。

    Raises:
        PreconditionError: 赋值非正，或 a 为非零的精确级数且未给出 trunc。
    """
    if trunc is not None:
        a = a.truncate(trunc)
    if a.valuation <= 0:
        raise PreconditionError(f"exp 要求赋值为正，当前赋值 {a.valuation}")
    if a.is_exact() and not a.is_zero():
        raise PreconditionError("精确级数的 exp 是无穷级数，请指定 trunc")
    result = constant(1, a.order, a.trunc)
    term = constant(1, a.order)
    k = 0
    while True:
        k += 1
        term = (term * a).truncate(a.trunc).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def log_series(a: PuiseuxSeries, trunc=None) -> PuiseuxSeries:
    """
    log(a) = Σ (-1)^{k+1}(a-1)^k/k，要求 a 的常数项为 1 且无负指数项。
    """
    if trunc is not None:
        a = a.truncate(trunc)
    if a.is_zero() or a.valuation != 0 or a.coefficient(0) != 1:
        raise PreconditionError("log 要求级数形如 1 + O(q^{>0})")
    u = a - 1
    if a.is_exact() and not u.is_zero():
        raise PreconditionError("精确级数的 log 是无穷级数，请指定 trunc")
    result = zero(a.trunc, a.order)
    power = constant(1, a.order)
    k = 0
    while True:
        k += 1
        power = (power * u).truncate(a.trunc)
        if power.is_zero():
            break
        sign = 1 if k % 2 else -1
        result = result + power.scale(Fraction(sign, k))
    return result


def substitute(f: PuiseuxSeries, a: int, b: int, d: int) -> PuiseuxSeries:
    """
    实现 f(τ) -> f((aτ+b)/d)。

    每一项 c·q^r 变为 c·ζ_{dN}^{b·rN}·q^{ra/d}，其中 N = f.denom。
    结果的分圆阶为 lcm(f.order, dN)，截断位置为 f.trunc·a/d。

    Raises:
        PreconditionError: b >= d 或参数非正。
    """
    if a < 1 or d < 1 or b < 0:
        raise PreconditionError(f"非法的三元组 ({a},{b},{d})")
    if b >= d:
        raise PreconditionError(f"要求 0 <= b < d，收到 b={b}, d={d}")
    N = f.denom
    modulus = d * N
    order = lcm(f.order, modulus)
    scale = order // modulus
    terms = {}
    for exp, c in f.items():
        m = int(exp * N)
        coeff = embed(c, order)
        if b:
            coeff = coeff * root_of_unity(order, (b * m % modulus) * scale)
        terms[exp * Fraction(a, d)] = coeff
    new_denom = modulus // math.gcd(a, modulus)
    trunc = f.trunc if f.is_exact() else f.trunc * Fraction(a, d)
    return PuiseuxSeries(terms, new_denom, trunc, order)


# --- Faber 多项式 ---
@dataclass(frozen=True)
class FaberResult:
    """Φ_n 作为 f 的多项式的系数（coefficients[k] 为 f^k 的系数）以及 Φ_n(f) 的展开。"""
    n: int
    coefficients: tuple
    series: PuiseuxSeries


def check_normalized(f: PuiseuxSeries) -> None:
    """
    检查 f 形如 q^{-1} + O(q)：有理系数、整数指数、无常数项。

    Raises:
        PreconditionError: 不满足规范形式。
    """
    if not f.is_rational_valued():
        raise PreconditionError("要求有理系数")
    if not f.has_integral_exponents():
        raise PreconditionError("要求整数指数的 Laurent 级数")
    if f.valuation != -1 or f.coefficient(-1) != 1:
        raise PreconditionError("要求首项为 q^{-1}")
    if f.trunc > 0 and f.coefficient(0) != 0:
        raise PreconditionError("要求常数项为 0")


def faber_polynomials(f: PuiseuxSeries, n: int) -> List[FaberResult]:
    """
    依次计算 Φ_1, ..., Φ_n（首项消去法）。

    p := f^m；对 k = m-1, ..., 1 减去 (p 中 q^{-k} 的系数)·Φ_k(f)，最后减去常数项。

    Raises:
        PreconditionError: f 不是规范形式。
        TruncationError: trunc(f) < n + 1。
    """
    check_normalized(f)
    if f.trunc < n + 1:
        raise TruncationError(f"计算 Φ_{n} 需要 trunc >= {n + 1}，当前 {f.trunc}")
    f = f.rationalize()
    results: List[FaberResult] = []
    power = constant(1)
    for m in range(1, n + 1):
        power = power * f
        p = power
        poly = [Fraction(0)] * m + [Fraction(1)]
        for k in range(m - 1, 0, -1):
            c = p.rational_coefficient(-k)
            if c:
                p = p - results[k - 1].series.scale(c)
                for i, pc in enumerate(results[k - 1].coefficients):
                    poly[i] -= c * pc
        c0 = p.rational_coefficient(0)
        if c0:
            p = p - c0
            poly[0] -= c0
        results.append(FaberResult(m, tuple(poly), p))
    return results


def faber(f: PuiseuxSeries, n: int) -> FaberResult:
    """第 n 个 Faber 多项式及 Φ_n(f) = q^{-n} + O(q)。"""
    return faber_polynomials(f, n)[-1]


# --- j 函数 ---
def eisenstein_e4(prec: int) -> PuiseuxSeries:
    """E_4 = 1 + 240 Σ σ_3(n) q^n，截断到 q^prec。"""
    terms = {0: 1}
    for n in range(1, prec):
        terms[n] = 240 * int(sympy.divisor_sigma(n, 3))
    return PuiseuxSeries(terms, 1, prec)


def delta_series(prec: int) -> PuiseuxSeries:
    """Δ = q·∏(1-q^n)^24，截断到 q^{prec+1}。"""
    product = constant(1, trunc=prec)
    for n in range(1, prec):
        product = product * PuiseuxSeries({0: 1, n: -1})
    return monomial(1) * product ** 24


def j_expansion(order: int) -> PuiseuxSeries:
    """
    j - 744 展开到 q^order（含），由 E_4^3/Δ - 744 计算。

    Returns:
        PuiseuxSeries: trunc = order + 1，系数均为整数。
    """
    if order < 1:
        raise PreconditionError(f"j 展开阶数必须为正，收到 {order}")
    prec = order + 2
    e4 = eisenstein_e4(prec)
    j = e4 ** 3 * invert_unit(delta_series(prec))
    logger.debug(f"j 展开完成，常数项 {j.coefficient(0)}")
    return j - 744
