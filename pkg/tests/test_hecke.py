from fractions import Fraction

import pytest

from errors import PreconditionError
from finite_groups import cyclic_group, trivial_group
from fixtures import random_norton, twisted_z2_fixture
from hecke import (ModuliPoint, check_multiplicativity, fricke, hecke_classical, hecke_combinatorial,
                   hecke_geometric, verify_equivalence)
from norton import pullback_from_trivial
from qseries import PuiseuxSeries, faber


RANDOM_SEEDS = range(5)


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_geometric_equals_combinatorial(small_group, n, seed):
    f = random_norton(small_group, seed=seed, trunc=12)
    report = verify_equivalence(f, n)
    assert report.agrees
    assert len(report.deltas) == len(f.classes())


@pytest.mark.slow
@pytest.mark.parametrize("seed", RANDOM_SEEDS)
@pytest.mark.parametrize("n", [5, 6])
def test_geometric_equals_combinatorial_large(small_group, n, seed):
    assert verify_equivalence(random_norton(small_group, seed=seed, trunc=12), n).agrees


def test_equivalence_on_twisted_fixture():
    f = twisted_z2_fixture()
    for n in (2, 3):
        assert verify_equivalence(f, n).agrees


def test_hecke_of_j_is_faber(j40):
    f = pullback_from_trivial(j40, trivial_group())
    pc = f.classes()[0]
    for n in (2, 3, 4):
        expected = faber(j40, n).series.scale(Fraction(1, n))
        assert hecke_geometric(f, n).values[pc].agrees_with(expected)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_classical_formula_on_j(j72, n):
    f = pullback_from_trivial(j72, trivial_group())
    report = verify_equivalence(f, n, {a: j72 for a in range(1, n + 1)})
    assert report.classical_delta is not None
    assert report.agrees
    assert report.classical_delta.trunc >= 12


def test_classical_needs_replicates(j40):
    with pytest.raises(PreconditionError):
        hecke_classical(j40, 4, {1: j40, 2: j40})


def test_classical_rejects_unnormalized():
    with pytest.raises(PreconditionError):
        hecke_classical(PuiseuxSeries({-1: 1, 0: 3}, trunc=10), 2, {1: None, 2: None})


def test_t1_is_identity(z2):
    f = random_norton(z2, seed=11, trunc=6)
    for geometric_or_combinatorial in (hecke_geometric, hecke_combinatorial):
        result = geometric_or_combinatorial(f, 1)
        assert all(result.values[pc] == f.values[pc] for pc in f.classes())


def test_multiplicativity_on_j(j72):
    f = pullback_from_trivial(j72, trivial_group())
    deltas = check_multiplicativity(f, 2, 3)
    assert all(delta.is_zero() for delta in deltas.values())
    with pytest.raises(PreconditionError):
        check_multiplicativity(f, 2, 4)


def test_fricke():
    point = fricke(5, 2)
    assert point.matrix == ((0, -1), (5, 0))
    assert abs(point.apply(1j) - 0.2j) < 1e-12
    twice = fricke(5, point)
    assert twice.same_point(ModuliPoint(5, 2))
    assert not point.same_point(ModuliPoint(5, 2))
    assert "τ" in point.describe()


def test_fricke_rejects_non_generators():
    with pytest.raises(PreconditionError):
        fricke(4, 2)
    with pytest.raises(PreconditionError):
        fricke(5, ModuliPoint(7, 1))
