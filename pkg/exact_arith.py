"""
精确有理数与分圆域运算。

有理数直接使用 fractions.Fraction（任意精度整数，约分后分母为正）。
分圆域 Q(ζ_L) 的元素在幂基 1, ζ, ..., ζ^{φ(L)-1} 下存储，
每次运算后按第 L 个分圆多项式 Φ_L 约化，因此相等性就是坐标逐一相等。
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Union

import sympy
from sympy import Poly, QQ, Symbol, divisors

from errors import PreconditionError

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)

Rational = Fraction

_X = Symbol("x")

Scalar = Union[int, Fraction, "CycloElem"]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple:
    """
    返回第 L 个分圆多项式 Φ_L 的整数系数。

    Args:
        L (int): 正整数阶。

    Returns:
        tuple: 系数元组，常数项在前，长度为 φ(L)+1。

    Raises:
        PreconditionError: L < 1。
    """
    if L < 1:
        raise PreconditionError(f"分圆多项式的阶必须为正整数，收到 {L}")
    poly = Poly(sympy.cyclotomic_poly(L, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def totient(L: int) -> int:
    return int(sympy.totient(L))


@lru_cache(maxsize=None)
def _power_table(L: int) -> tuple:
    """x^k mod Φ_L（k = 0..L-1）的整数坐标表。由于 x^L ≡ 1，指数先模 L。"""
    phi_poly = cyclotomic_polynomial(L)
    degree = len(phi_poly) - 1
    rows = []
    current = [0] * degree
    current[0] = 1
    for _ in range(L):
        rows.append(tuple(current))
        # 乘以 x，再用首一的 Φ_L 消去 x^degree
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            for i in range(degree):
                current[i] -= top * phi_poly[i]
    return tuple(rows)


@dataclass(frozen=True)
class CycloElem:
    """分圆域 Q(ζ_L) 中的元素，coords 为约化后的幂基坐标。"""
    order: int
    coords: tuple

    def __post_init__(self):
        if self.order < 1:
            raise PreconditionError(f"分圆域阶必须为正整数，收到 {self.order}")
        if len(self.coords) != totient(self.order):
            raise PreconditionError(
                f"Q(ζ_{self.order}) 的坐标长度应为 {totient(self.order)}，收到 {len(self.coords)}")

    # --- 构造 ---
    @classmethod
    def rational(cls, value, order: int = 1) -> "CycloElem":
        coords = [Fraction(0)] * totient(order)
        coords[0] = Fraction(value)
        return cls(order, tuple(coords))

    @classmethod
    def from_poly(cls, order: int, poly_coeffs) -> "CycloElem":
        """把任意长度的多项式系数（常数项在前，ζ_L 的幂）约化到规范基。"""
        table = _power_table(order)
        acc = [Fraction(0)] * totient(order)
        for k, c in enumerate(poly_coeffs):
            if not c:
                continue
            for i, r in enumerate(table[k % order]):
                if r:
                    acc[i] += c * r
        return cls(order, tuple(acc))

    # --- 查询 ---
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __bool__(self):
        return not self.is_zero()

    # --- 运算 ---
    def _coerce(self, other) -> tuple:
        if isinstance(other, (int, Fraction)):
            return self, CycloElem.rational(other, self.order)
        if not isinstance(other, CycloElem):
            return NotImplemented, NotImplemented
        if other.order == self.order:
            return self, other
        if other.is_rational():
            return self, CycloElem.rational(other.coords[0], self.order)
        if self.is_rational():
            return CycloElem.rational(self.coords[0], other.order), other
        raise PreconditionError(
            f"阶不兼容: Q(ζ_{self.order}) 与 Q(ζ_{other.order})，请先 embed 到公共阶 {lcm(self.order, other.order)}")

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloElem(a.order, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.order, tuple(-x for x in self.coords))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloElem(a.order, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.order, tuple(x * other for x in self.coords))
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if a.is_rational():
            return CycloElem(b.order, tuple(a.coords[0] * y for y in b.coords))
        if b.is_rational():
            return CycloElem(a.order, tuple(x * b.coords[0] for x in a.coords))
        return CycloElem(a.order, _mul_coords(a.order, a.coords, b.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("分圆元素除以零")
            return CycloElem(self.order, tuple(x / other for x in self.coords))
        return self * inverse(other)

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        result = CycloElem.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, CycloElem):
            return NotImplemented
        if self.order == other.order:
            return self.coords == other.coords
        if self.is_rational() and other.is_rational():
            return self.coords[0] == other.coords[0]
        common = lcm(self.order, other.order)
        return embed(self, common).coords == embed(other, common).coords

    def __hash__(self):
        # 不同阶的相等元素必须同哈希
        if self.is_rational():
            return hash(self.coords[0])
        return hash(_canonical_key(self.order, self.coords))

    def __str__(self):
        if self.is_rational():
            return str(self.coords[0])
        return "[" + ",".join(str(c) for c in self.coords) + f";order={self.order}]"

    __repr__ = __str__


def _mul_coords(L: int, x: tuple, y: tuple) -> tuple:
    table = _power_table(L)
    acc = [Fraction(0)] * len(x)
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, r in enumerate(table[(i + j) % L]):
                if r:
                    acc[k] += c * r
    return tuple(acc)


def _mobius(n: int) -> int:
    exponents = sympy.factorint(n).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


@lru_cache(maxsize=None)
def _trace_weight(L: int, k: int) -> Fraction:
    """Tr(ζ_L^k)/φ(L) = μ(m)/φ(m)，m = L/gcd(k,L)。与 L 的选取无关。"""
    m = L // gcd(k, L)
    return Fraction(_mobius(m), totient(m))


def _galois_image(a: CycloElem, unit: int) -> CycloElem:
    """ζ_L -> ζ_L^unit 下的像。"""
    poly = [Fraction(0)] * a.order
    for k, c in enumerate(a.coords):
        poly[(unit * k) % a.order] += c
    return CycloElem.from_poly(a.order, poly)


def conductor(a: CycloElem) -> int:
    """
    包含 a 的最小分圆域 Q(ζ_M)（M | L）的 M：a 在全部 ζ_L -> ζ_L^u（u ≡ 1 mod M）下不动。
    """
    L = a.order
    for M in divisors(L):
        units = (u for u in range(1, L) if gcd(u, L) == 1 and u % M == 1 % M)
        if all(_galois_image(a, u) == a for u in units):
            return M
    return L


@lru_cache(maxsize=4096)
def _canonical_key(order: int, coords: tuple) -> tuple:
    """
    (M, 规范化迹 Tr(a·ζ_M^{-k})/φ(L)，k < φ(M))。

    规范化迹在嵌入下不变，迹形式非退化，因此该键只依赖于 a 的值。
    """
    a = CycloElem(order, coords)
    M = conductor(a)
    step = order // M
    traces = []
    for k in range(totient(M)):
        traces.append(sum(c * _trace_weight(order, i - step * k) for i, c in enumerate(coords) if c))
    return M, tuple(traces)


def as_cyclo(value: Scalar, order: int = 1) -> CycloElem:
    """把 int / Fraction / CycloElem 统一成 CycloElem。"""
    if isinstance(value, CycloElem):
        return value
    return CycloElem.rational(value, order)


def cyclo_arith(a: CycloElem, b: CycloElem, op: str) -> CycloElem:
    """
    分圆域上的加、减、乘。

    Args:
        a, b: 阶相同，或其中之一为有理数。
        op (str): 'add' / 'sub' / 'mul'。

    Raises:
        PreconditionError: 两个非有理元素的阶不同。
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise PreconditionError(f"未知的分圆运算: {op}")


def embed(a: CycloElem, target_order: int) -> CycloElem:
    """
    把 Q(ζ_L) 中的元素嵌入 Q(ζ_{L'})，L | L'，复数值不变（ζ_L = ζ_{L'}^{L'/L}）。
    """
    if target_order % a.order:
        raise PreconditionError(f"不能把 Q(ζ_{a.order}) 嵌入 Q(ζ_{target_order})：阶不整除")
    if target_order == a.order:
        return a
    step = target_order // a.order
    poly = [Fraction(0)] * (step * (len(a.coords) - 1) + 1)
    for k, c in enumerate(a.coords):
        poly[step * k] = c
    return CycloElem.from_poly(target_order, poly)


def try_rational(a: CycloElem) -> Optional[Fraction]:
    """a 属于有理子域时返回其值，否则返回 None。"""
    if a.is_rational():
        return a.coords[0]
    return None


def root_of_unity(order: int, k: int) -> CycloElem:
    """ζ_order^k。"""
    row = _power_table(order)[k % order]
    return CycloElem(order, tuple(Fraction(r) for r in row))


def inverse(a: CycloElem) -> CycloElem:
    """
    域中的逆元：在 Q[x] 中求 a(x) 模 Φ_L 的逆。

    Raises:
        ZeroDivisionError: a 为零。
    """
    if a.is_zero():
        raise ZeroDivisionError("分圆域中零元素不可逆")
    if a.is_rational():
        return CycloElem.rational(1 / a.coords[0], a.order)
    modulus = Poly(list(reversed(cyclotomic_polynomial(a.order))), _X, domain=QQ)
    poly = Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(a.coords)], _X, domain=QQ)
    inv = poly.invert(modulus)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
    return CycloElem.from_poly(a.order, coeffs)


def root_of_unity_exponent(a: CycloElem) -> Optional[Fraction]:
    """a = e^{2πi k/M} 时返回 k/M ∈ [0,1)，否则返回 None。M = lcm(2, L)。"""
    modulus = lcm(2, a.order)
    target = embed(a, modulus)
    for k in range(modulus):
        if root_of_unity(modulus, k) == target:
            return Fraction(k, modulus)
    return None
