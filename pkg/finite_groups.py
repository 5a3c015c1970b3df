"""
有限群、交换元素对及其同时共轭类，SL₂(Z) 在元素对上的作用，
以及把 Σₙ 中的交换置换对转换为 Hecke 三元组 (a,b,d) 的格分类。

Σₙ 的元素用 0 起始的置换元组表示：p[i] 为 i 的像，乘法 (p*q)[i] = p[q[i]]（先作用 q）。
"""
import itertools
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from sympy import Matrix, ZZ, divisors
try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex
from sympy.combinatorics import Permutation
from sympy.matrices.normalforms import smith_normal_form

import settings
from errors import CapExceededError, InputError, PreconditionError

# 只获取logger实例，不进行配置
logger = logging.getLogger(__name__)

Element = object
Pair = Tuple[Element, Element]


class Group:
    """
    有限群的基类：元素按固定顺序枚举，乘法、求逆、单位元由子类实现。

    枚举顺序决定了共轭类代表元的选取（取枚举顺序下最小的成员）。
    """

    def __init__(self, label: str, elements: Iterable):
        self.label = label
        self.elements = tuple(elements)
        self._position = {e: i for i, e in enumerate(self.elements)}
        self._cache: Dict[str, object] = {}

    # --- 子类实现 ---
    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def format_element(self, x) -> str:
        return str(x)

    # --- 通用运算 ---
    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, x) -> int:
        try:
            return self._position[x]
        except KeyError:
            raise PreconditionError(f"{x!r} 不是群 {self.label} 的元素")

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            k >>= 1
        return result

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def conjugate(self, x, s):
        """s⁻¹ x s。"""
        return self.mul(self.mul(self.inv(s), x), s)

    def commutes(self, x, y) -> bool:
        return self.mul(x, y) == self.mul(y, x)

    def parse_element(self, text: str):
        labels = self._cache.get("labels")
        if labels is None:
            labels = {self.format_element(e): e for e in self.elements}
            self._cache["labels"] = labels
        key = text.strip()
        if key not in labels:
            raise InputError(f"群 {self.label} 中没有元素 {text!r}")
        return labels[key]

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return type(self) is type(other) and self.label == other.label and self.elements == other.elements

    def __hash__(self):
        return hash((type(self).__name__, self.label))

    def __repr__(self):
        return f"{type(self).__name__}({self.label})"


class CyclicProductGroup(Group):
    """Z/n₁ × … × Z/n_k，元素为余数元组；moduli 为空时是平凡群。"""

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 1 for m in moduli):
            raise PreconditionError(f"循环群的阶必须为正整数: {moduli}")
        self.moduli = moduli
        label = "x".join(f"Z/{m}" for m in moduli) if moduli else "1"
        super().__init__(label, itertools.product(*(range(m) for m in moduli)))

    @property
    def identity(self):
        return tuple(0 for _ in self.moduli)

    def mul(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def inv(self, x):
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def format_element(self, x) -> str:
        if not self.moduli:
            return "e"
        return ",".join(str(a) for a in x)


class SymmetricGroup(Group):
    """Σₙ，元素按字典序枚举。"""

    def __init__(self, n: int):
        self.degree = n
        super().__init__(f"S{n}", itertools.permutations(range(n)))

    @property
    def identity(self):
        return tuple(range(self.degree))

    def mul(self, x, y):
        return perm_mul(x, y)

    def inv(self, x):
        return perm_inv(x)

    def format_element(self, x) -> str:
        cycles = Permutation(list(x)).cyclic_form
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)

    def parse_element(self, text: str):
        cycles = [[int(t) - 1 for t in body.split()] for body in re.findall(r"\(([^)]*)\)", text)]
        cycles = [c for c in cycles if c]
        if not cycles:
            return self.identity
        try:
            return tuple(Permutation(cycles, size=self.degree).array_form)
        except ValueError as e:
            raise InputError(f"无法解析 Σ{self.degree} 的元素 {text!r}: {e}")


class CayleyGroup(Group):
    """由元素标签与乘法表给出的群，构造时检查群公理。"""

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence], label: str = "cayley"):
        labels = [str(x) for x in labels]
        if len(set(labels)) != len(labels):
            raise InputError("乘法表的元素标签有重复")
        position = {x: i for i, x in enumerate(labels)}
        if len(table) != len(labels) or any(len(row) != len(labels) for row in table):
            raise InputError(f"乘法表必须是 {len(labels)}×{len(labels)} 的方阵")
        try:
            self._table = [[entry if isinstance(entry, int) else position[str(entry)] for entry in row]
                           for row in table]
        except KeyError as e:
            raise InputError(f"乘法表中出现未知元素 {e}")
        super().__init__(label, labels)
        self._check_axioms()

    def _check_axioms(self):
        n = len(self.elements)
        t = self._table
        if any(not 0 <= v < n for row in t for v in row):
            raise InputError("乘法表条目越界")
        units = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if not units:
            raise InputError("乘法表没有单位元")
        self._identity = units[0]
        self._inverse = {}
        for x in range(n):
            inverses = [y for y in range(n) if t[x][y] == self._identity]
            if not inverses or t[inverses[0]][x] != self._identity:
                raise InputError(f"元素 {self.elements[x]} 没有逆元")
            self._inverse[x] = inverses[0]
        for x, y, z in itertools.product(range(n), repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise InputError(
                    f"乘法不满足结合律: ({self.elements[x]},{self.elements[y]},{self.elements[z]})")

    @property
    def identity(self):
        return self.elements[self._identity]

    def mul(self, x, y):
        return self.elements[self._table[self._position[x]][self._position[y]]]

    def inv(self, x):
        return self.elements[self._inverse[self._position[x]]]


class DirectProductGroup(Group):
    """G × H，元素为 (g, h)，按 G 的顺序优先枚举。"""

    def __init__(self, left: Group, right: Group):
        self.left = left
        self.right = right
        super().__init__(f"{left.label}x{right.label}", itertools.product(left.elements, right.elements))

    @property
    def identity(self):
        return (self.left.identity, self.right.identity)

    def mul(self, x, y):
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def inv(self, x):
        return (self.left.inv(x[0]), self.right.inv(x[1]))

    def format_element(self, x) -> str:
        return f"{self.left.format_element(x[0])}|{self.right.format_element(x[1])}"


def trivial_group() -> CyclicProductGroup:
    return CyclicProductGroup(())


def cyclic_group(n: int) -> CyclicProductGroup:
    return CyclicProductGroup((n,))


def direct_product(left: Group, right: Group) -> DirectProductGroup:
    return DirectProductGroup(left, right)


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> SymmetricGroup:
    """
    Σₙ 的缓存实例。

    Raises:
        CapExceededError: n 超过 settings.SYMMETRIC_ENUMERATION_CAP。
    """
    if n < 0:
        raise PreconditionError(f"对称群次数不能为负: {n}")
    if n > settings.SYMMETRIC_ENUMERATION_CAP:
        raise CapExceededError(f"Σ{n} 超出枚举上限 {settings.SYMMETRIC_ENUMERATION_CAP}")
    return SymmetricGroup(n)


def parse_group_spec(spec) -> Group:
    """
    解析群描述：'1'、'S<n>'、'Z/<a>xZ/<b>…'、{"labels": [...], "table": [[...]]}，
    或直积 {"direct_product": [左因子描述, 右因子描述]}。

    Raises:
        InputError: 无法识别的描述。
    """
    if isinstance(spec, dict):
        if "direct_product" in spec:
            factors = spec["direct_product"]
            if not isinstance(factors, (list, tuple)) or len(factors) != 2:
                raise InputError("direct_product 必须恰好给出两个因子")
            return direct_product(parse_group_spec(factors[0]), parse_group_spec(factors[1]))
        if "labels" not in spec or "table" not in spec:
            raise InputError("乘法表描述必须包含 labels 与 table")
        return CayleyGroup(spec["labels"], spec["table"], spec.get("label", "cayley"))
    if not isinstance(spec, str):
        raise InputError(f"无法识别的群描述: {spec!r}")
    text = spec.strip().replace(" ", "")
    if text in ("1", "trivial"):
        return trivial_group()
    match = re.fullmatch(r"[SΣ](\d+)", text)
    if match:
        return symmetric_group(int(match.group(1)))
    parts = text.split("x")
    moduli = []
    for part in parts:
        match = re.fullmatch(r"Z/(\d+)", part)
        if not match:
            raise InputError(f"无法识别的群描述: {spec!r}")
        moduli.append(int(match.group(1)))
    return CyclicProductGroup(moduli)


# --- 共轭类与交换对 ---
@dataclass(frozen=True)
class PairClass:
    """交换对的同时共轭类：代表元取 G² 枚举顺序下的最小成员。"""
    representative: Pair
    class_size: int
    centralizer_order: int

    @property
    def g(self):
        return self.representative[0]

    @property
    def h(self):
        return self.representative[1]


def conjugacy_classes(G: Group) -> List[Tuple]:
    """共轭类列表，每个类按枚举顺序排序，类之间按代表元排序。"""
    cached = G._cache.get("conjugacy_classes")
    if cached is not None:
        return cached
    if isinstance(G, SymmetricGroup):
        # Σₙ 的共轭类即轮换型
        by_type: Dict[tuple, list] = {}
        for p in G.elements:
            key = tuple(sorted(Permutation(list(p)).cycle_structure.items()))
            by_type.setdefault(key, []).append(p)
        classes = sorted((tuple(members) for members in by_type.values()), key=lambda c: G.index(c[0]))
    else:
        seen = set()
        classes = []
        for x in G.elements:
            if x in seen:
                continue
            orbit = {G.conjugate(x, s) for s in G.elements}
            seen |= orbit
            classes.append(tuple(sorted(orbit, key=G.index)))
    G._cache["conjugacy_classes"] = classes
    return classes


def centralizer(G: Group, elements: Sequence) -> List:
    """与给定元素全部交换的元素，按枚举顺序。"""
    return [s for s in G.elements if all(G.commutes(s, x) for x in elements)]


def pair_classes(G: Group) -> List[PairClass]:
    """
    G 中交换对的全部同时共轭类。

    对每个共轭类代表 g，交换对 (g, h) 的类对应于 C(g) 在 C(g) 上的共轭轨道，
    类的大小为 |g 的共轭类|·|轨道|。

    Returns:
        List[PairClass]: 按代表元的枚举顺序排列，类大小之和等于交换对总数。
    """
    cached = G._cache.get("pair_classes")
    if cached is not None:
        return cached
    logger.debug(f"开始枚举 {G.label} 的交换对共轭类")
    result = []
    for cls in conjugacy_classes(G):
        g = cls[0]
        cent = centralizer(G, [g])
        if len(cent) == G.order:
            orbits = conjugacy_classes(G)
        else:
            orbits = []
            seen = set()
            for h in cent:
                if h in seen:
                    continue
                orbit = {G.conjugate(h, s) for s in cent}
                seen |= orbit
                orbits.append(orbit)
        for orbit in orbits:
            h = min(orbit, key=G.index)
            size = len(cls) * len(orbit)
            result.append(PairClass((g, h), size, G.order // size))
    G._cache["pair_classes"] = result
    logger.debug(f"{G.label} 共有 {len(result)} 个交换对共轭类")
    return result


def class_of(G: Group, g, h) -> PairClass:
    """
    (g, h) 所在的同时共轭类。

    Raises:
        PreconditionError: g 与 h 不交换。
    """
    if not G.commutes(g, h):
        raise PreconditionError(f"({G.format_element(g)}, {G.format_element(h)}) 不是交换对")
    lookup = G._cache.get("class_lookup")
    if lookup is None:
        lookup = {pc.representative: pc for pc in pair_classes(G)}
        G._cache["class_lookup"] = lookup
    memo = G._cache.setdefault("class_memo", {})
    if (g, h) in memo:
        return memo[(g, h)]
    rep = min(((G.conjugate(g, s), G.conjugate(h, s)) for s in G.elements),
              key=lambda p: (G.index(p[0]), G.index(p[1])))
    memo[(g, h)] = lookup[rep]
    return memo[(g, h)]


def commuting_pair_count(G: Group) -> int:
    return sum(pc.class_size for pc in pair_classes(G))


def generated_subgroup(G: Group, elements: Sequence) -> FrozenSet:
    """由给定元素生成的子群。"""
    subgroup = {G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for s in elements:
            y = G.mul(x, s)
            if y not in subgroup:
                subgroup.add(y)
                frontier.append(y)
    return frozenset(subgroup)


# --- SL₂(Z) 作用 ---
def _check_unimodular(gamma) -> Tuple[int, int, int, int]:
    (a, b), (c, d) = gamma
    if a * d - b * c != 1:
        raise PreconditionError(f"矩阵 {gamma} 的行列式不为 1")
    return a, b, c, d


def sl2_act(G: Group, pair: Pair, gamma) -> Pair:
    """
    γ = [[a,b],[c,d]] 作用于交换对：(g,h) -> (g^a h^c, g^b h^d)。这是右作用。

    Raises:
        PreconditionError: det γ ≠ 1 或 (g,h) 不交换。
    """
    a, b, c, d = _check_unimodular(gamma)
    g, h = pair
    if not G.commutes(g, h):
        raise PreconditionError("sl2_act 要求交换对")
    return (G.mul(G.power(g, a), G.power(h, c)), G.mul(G.power(g, b), G.power(h, d)))


def pullback_pair(G: Group, pair: Pair, triple: Tuple[int, int, int]) -> Pair:
    """沿三元组 (a,b,d) 的同源拉回：(g,h) -> (g^d, g^{-b} h^a)。"""
    a, b, d = triple
    g, h = pair
    return (G.power(g, d), G.mul(G.power(g, -b), G.power(h, a)))


def hecke_triples(n: int) -> List[Tuple[int, int, int]]:
    """全部 (a,b,d)：ad = n，0 <= b < d。"""
    if n < 1:
        raise PreconditionError(f"Hecke 指标必须为正整数，收到 {n}")
    return [(a, b, n // a) for a in divisors(n) for b in range(n // a)]


# --- 置换与格 ---
@dataclass(frozen=True)
class Sublattice:
    """Z² 中指数为 a·d 的子格，生成元 (d,0) 与 (-b,a)。"""
    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.a < 1 or self.d < 1 or not 0 <= self.b < self.d:
            raise PreconditionError(f"非法的子格参数 (a,b,d)=({self.a},{self.b},{self.d})")

    @property
    def index(self) -> int:
        return self.a * self.d

    @property
    def triple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.d)

    def generators(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return ((self.d, 0), (-self.b, self.a))


def perm_mul(p: tuple, q: tuple) -> tuple:
    return tuple(p[i] for i in q)


def perm_inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _check_commuting_perms(sigma: tuple, rho: tuple) -> None:
    if len(sigma) != len(rho):
        raise PreconditionError("置换次数不一致")
    if perm_mul(sigma, rho) != perm_mul(rho, sigma):
        raise PreconditionError(f"置换 {sigma} 与 {rho} 不交换")


def perm_orbits(sigma: tuple, rho: tuple) -> List[FrozenSet[int]]:
    """⟨σ,ρ⟩ 在 {0..n-1} 上的轨道，按最小元素排序。"""
    seen = set()
    orbits = []
    for start in range(len(sigma)):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in (sigma[x], rho[x]):
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        orbits.append(frozenset(orbit))
    return orbits


def _orbit_lattice(sigma: tuple, rho: tuple, x: int) -> Sublattice:
    cycle = [x]
    y = sigma[x]
    while y != x:
        cycle.append(y)
        y = sigma[y]
    d = len(cycle)
    position = {p: i for i, p in enumerate(cycle)}
    a, y = 1, rho[x]
    while y not in position:
        y = rho[y]
        a += 1
    # ρ^a x = σ^e x，故 σ^{-e} ρ^a x = x，(−e, a) ∈ Λ
    return Sublattice(a, position[y] % d, d)


def orbit_decomposition(sigma: tuple, rho: tuple, n: int = None) -> List[Tuple[FrozenSet[int], Sublattice]]:
    """
    ⟨σ,ρ⟩ 的轨道分解，以及每个轨道上点稳定子格 {(i,j): σ^i ρ^j x = x} 的规范形式。

    Raises:
        PreconditionError: σ 与 ρ 不交换。
    """
    if n is not None and len(sigma) != n:
        raise PreconditionError(f"置换长度 {len(sigma)} 与 n={n} 不一致")
    _check_commuting_perms(sigma, rho)
    return [(orbit, _orbit_lattice(sigma, rho, min(orbit))) for orbit in perm_orbits(sigma, rho)]


def canonical_triple(generators: Sequence[Tuple[int, int]]) -> Sublattice:
    """
    由生成元求子格的规范三元组 (a,b,d)。

    a 为第二坐标的最大公因数，d 为与 Z×{0} 之交的生成元，b = (−x) mod d，其中 (x,a) ∈ Λ。

    Raises:
        PreconditionError: 生成元不张成有限指数子格。
    """
    gens = [(int(x), int(y)) for x, y in generators]
    pivot = (0, 0)
    for x, y in gens:
        if y == 0:
            continue
        if pivot[1] == 0:
            pivot = (x, y)
            continue
        s, t, g = igcdex(pivot[1], y)
        pivot = (s * pivot[0] + t * x, g)
    if pivot[1] < 0:
        pivot = (-pivot[0], -pivot[1])
    a = pivot[1]
    if a == 0:
        raise PreconditionError(f"生成元 {gens} 秩不足")
    d = 0
    for x, y in gens:
        d = gcd(d, x - (y // a) * pivot[0])
    if d == 0:
        raise PreconditionError(f"生成元 {gens} 秩不足")
    return Sublattice(a, (-pivot[0]) % d, d)


def abelian_invariants(lattice: Sublattice) -> List[int]:
    """Z²/Λ 的不变因子 (d₁ | d₂)，去掉 1。"""
    snf = smith_normal_form(Matrix([list(v) for v in lattice.generators()]), domain=ZZ)
    factors = sorted(abs(int(snf[i, i])) for i in range(2))
    return [f for f in factors if f != 1]


def subgroup_abelian_invariants(G: Group, elements: Sequence) -> List[int]:
    """
    两个元素生成的交换子群的不变因子：秩至多为 2，故 d₂ 为指数（元素阶的最小公倍数），d₁ = |A|/d₂。
    """
    subgroup = generated_subgroup(G, elements)
    for x in elements:
        for y in elements:
            if not G.commutes(x, y):
                raise PreconditionError("生成元不交换")
    exponent = 1
    for x in subgroup:
        k = G.element_order(x)
        exponent = exponent * k // gcd(exponent, k)
    factors = sorted([len(subgroup) // exponent, exponent])
    return [f for f in factors if f != 1]


def is_transitive(sigma: tuple, rho: tuple) -> bool:
    return len(perm_orbits(sigma, rho)) == 1


def transitive_pair_classes(n: int) -> List[Tuple[PairClass, Sublattice]]:
    """
    Σₙ 中传递交换对的共轭类及其规范三元组。

    Raises:
        CapExceededError: n 超过枚举上限。
    """
    G = symmetric_group(n)
    result = []
    for pc in pair_classes(G):
        if is_transitive(pc.g, pc.h):
            (_, lattice), = orbit_decomposition(pc.g, pc.h, n)
            result.append((pc, lattice))
    logger.debug(f"Σ{n} 的传递交换对共轭类共 {len(result)} 个")
    return result


def pair_sgn(sigma: tuple, rho: tuple) -> int:
    """(−1)^{偶数大小轨道的个数}。"""
    _check_commuting_perms(sigma, rho)
    even = sum(1 for orbit in perm_orbits(sigma, rho) if len(orbit) % 2 == 0)
    return -1 if even % 2 else 1
