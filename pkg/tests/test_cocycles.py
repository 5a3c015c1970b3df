from fractions import Fraction

import pytest

from cocycles import (CyclicCocycle, action_order, chain_map_check, coboundary_check, cocycle_eval,
                      is_normalized, restrict_to_power, tn_action, twist_data)
from errors import CapExceededError, PreconditionError


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_cocycles_are_closed_and_normalized(n):
    for s in range(n):
        alpha = CyclicCocycle(n, s)
        assert coboundary_check(alpha)
        assert is_normalized(alpha)


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8, 9, 10, 11, 12])
def test_cocycles_are_closed_large(n):
    for s in range(n):
        assert coboundary_check(CyclicCocycle(n, s))


def test_tampered_values_fail():
    alpha = CyclicCocycle(2, 0)

    def tampered(i, j, k):
        if (i % 2, j % 2, k % 2) == (1, 1, 1):
            return Fraction(1, 3)
        return cocycle_eval(alpha, i, j, k)

    assert not coboundary_check(alpha, tampered)


def test_exhaustive_cap():
    with pytest.raises(CapExceededError):
        coboundary_check(CyclicCocycle(17, 1))


def test_class_is_reduced_mod_n():
    assert CyclicCocycle(4, 6) == CyclicCocycle(4, 2)
    with pytest.raises(PreconditionError):
        CyclicCocycle(0, 1)


@pytest.mark.parametrize("n,s", [(2, 1), (3, 2), (6, 4), (5, 0)])
def test_tn_action_is_s_over_n(n, s):
    assert tn_action(CyclicCocycle(n, s)) == Fraction(s, n)


def test_action_order():
    assert action_order(CyclicCocycle(6, 4)) == 3
    assert action_order(CyclicCocycle(6, 0)) == 1
    assert action_order(CyclicCocycle(5, 2)) == 5


def test_restrict_to_power():
    assert restrict_to_power(CyclicCocycle(6, 4), 3) == CyclicCocycle(2, 0)
    assert restrict_to_power(CyclicCocycle(6, 1), 2) == CyclicCocycle(3, 1)
    assert restrict_to_power(CyclicCocycle(6, 5), 1) == CyclicCocycle(6, 5)
    with pytest.raises(PreconditionError):
        restrict_to_power(CyclicCocycle(6, 1), 4)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 9, 12])
def test_restriction_matches_reduction(n):
    for m in (m for m in range(1, n + 1) if n % m == 0):
        for s in range(n):
            assert restrict_to_power(CyclicCocycle(n, s), m).s == s % (n // m)


def test_twist_data():
    td = twist_data(2, 1)
    assert (td.n, td.s, td.h, td.N) == (2, 1, 2, 4)
    assert td.offset == Fraction(1, 4)
    assert td.admits_exponent(Fraction(1, 4))
    assert td.admits_exponent(Fraction(-1, 4))
    assert not td.admits_exponent(Fraction(1, 2))
    untwisted = twist_data(3, 0)
    assert (untwisted.h, untwisted.N) == (1, 3)
    assert untwisted.admits_exponent(Fraction(2, 3))
    assert twist_data(4, 2).h == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8])
def test_chain_map(n):
    report = chain_map_check(n)
    assert all(report.commutes)
    assert report.coinvariant_differentials == [0, n, 0]
    assert report.pairings == [Fraction(s, n) for s in range(n)]
    assert report.ok
