import random
from fractions import Fraction

import pytest

from errors import PreconditionError
from exact_arith import (CycloElem, cyclo_arith, cyclotomic_polynomial, embed, inverse, root_of_unity,
                         root_of_unity_exponent, totient, try_rational)


@pytest.mark.parametrize("L, coeffs", [
    (1, (-1, 1)),
    (2, (1, 1)),
    (3, (1, 1, 1)),
    (4, (1, 0, 1)),
    (6, (1, -1, 1)),
])
def test_cyclotomic_polynomial(L, coeffs):
    assert cyclotomic_polynomial(L) == coeffs
    assert len(coeffs) == totient(L) + 1


def test_cyclotomic_polynomial_rejects_nonpositive():
    with pytest.raises(PreconditionError):
        cyclotomic_polynomial(0)


def test_roots_of_unity_reduce_canonically():
    i = root_of_unity(4, 1)
    assert i * i == -1
    assert i * root_of_unity(4, 3) == 1
    zeta3 = root_of_unity(3, 1)
    assert zeta3 + root_of_unity(3, 2) + 1 == 0
    assert CycloElem.from_poly(4, [0, 0, 1]) == -1


def test_mixed_orders_need_explicit_embedding():
    with pytest.raises(PreconditionError):
        root_of_unity(3, 1) + root_of_unity(4, 1)
    with pytest.raises(PreconditionError):
        cyclo_arith(root_of_unity(3, 1), root_of_unity(4, 1), "mul")
    # 有理元素可以与任意阶相加
    assert root_of_unity(3, 1) + Fraction(1, 2) == CycloElem(3, (Fraction(1, 2), Fraction(1)))


def test_embed_preserves_value():
    assert embed(root_of_unity(2, 1), 4) == -1
    assert embed(root_of_unity(4, 1), 8) == root_of_unity(8, 2)
    assert embed(root_of_unity(3, 1), 6) == root_of_unity(6, 2)
    with pytest.raises(PreconditionError):
        embed(root_of_unity(4, 1), 6)


def test_equality_and_hash_across_orders():
    a = CycloElem.rational(3, 4)
    b = CycloElem.rational(3)
    assert a == b
    assert hash(a) == hash(b)
    assert root_of_unity(4, 1) == embed(root_of_unity(4, 1), 12)


def test_inverse():
    x = 1 + root_of_unity(4, 1)
    assert inverse(x).coords == (Fraction(1, 2), Fraction(-1, 2))
    assert x * inverse(x) == 1
    y = root_of_unity(5, 2) - 3
    assert y / y == 1
    assert inverse(CycloElem.rational(Fraction(2, 3))) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        inverse(CycloElem.rational(0, 5))


def test_try_rational():
    assert try_rational(root_of_unity(3, 1) + root_of_unity(3, 2)) == -1
    assert try_rational(root_of_unity(3, 1)) is None


def test_root_of_unity_exponent():
    assert root_of_unity_exponent(root_of_unity(3, 1)) == Fraction(1, 3)
    assert root_of_unity_exponent(CycloElem.rational(-1)) == Fraction(1, 2)
    assert root_of_unity_exponent(root_of_unity(4, 3)) == Fraction(3, 4)
    assert root_of_unity_exponent(CycloElem.rational(2)) is None


def test_coordinate_length_is_checked():
    with pytest.raises(PreconditionError):
        CycloElem(4, (Fraction(1),))


def test_str():
    assert str(root_of_unity(4, 1)) == "[0,1;order=4]"
    assert str(CycloElem.rational(Fraction(-2, 3), 5)) == "-2/3"


def test_power():
    zeta = root_of_unity(6, 1)
    assert zeta ** 6 == 1
    assert zeta ** 3 == -1
    assert zeta ** -1 == root_of_unity(6, 5)


# --- 域公理与嵌入 ---
ORDERS = list(range(1, 25))


def _random_elem(rng, L):
    return CycloElem(L, tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(totient(L))))


@pytest.mark.parametrize("L", ORDERS)
def test_field_axioms(L):
    rng = random.Random(1000 + L)
    for _ in range(3):
        x, y, z = (_random_elem(rng, L) for _ in range(3))
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x - x).is_zero()
        assert x * 1 == x
        if not x.is_zero():
            assert x * inverse(x) == 1


@pytest.mark.parametrize("L", ORDERS)
def test_root_of_unity_has_exact_order(L):
    zeta = root_of_unity(L, 1)
    assert zeta ** L == 1
    assert all(zeta ** k != 1 for k in range(1, L))


@pytest.mark.parametrize("d", range(1, 13))
def test_sum_of_roots_projects_onto_multiples(d):
    for m in range(-24, 25):
        total = sum((root_of_unity(d, k * m) for k in range(d)), CycloElem.rational(0, d))
        assert total == (d if m % d == 0 else 0)


@pytest.mark.parametrize("L, target", [(L, t) for t in ORDERS for L in ORDERS if t % L == 0 and L < t])
def test_embed_is_ring_homomorphism(L, target):
    rng = random.Random(L * 100 + target)
    x, y = _random_elem(rng, L), _random_elem(rng, L)
    assert embed(x + y, target) == embed(x, target) + embed(y, target)
    assert embed(x * y, target) == embed(x, target) * embed(y, target)
    assert embed(x, target) == x
    assert hash(embed(x, target)) == hash(x)


def test_hash_distinguishes_roots_of_unity():
    positions = {root_of_unity(12, k): k for k in range(12)}
    assert len(positions) == 12
    assert positions[embed(root_of_unity(4, 1), 24)] == 3
    assert positions[root_of_unity(3, 1)] == 4
    assert len({hash(root_of_unity(12, k)) for k in range(12)}) > 2
    assert hash(root_of_unity(3, 1)) == hash(root_of_unity(6, 2))
