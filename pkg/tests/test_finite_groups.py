import random

import pytest
from sympy import divisor_sigma

from errors import CapExceededError, InputError, PreconditionError
from finite_groups import (CayleyGroup, Sublattice, abelian_invariants, canonical_triple, centralizer,
                           class_of, commuting_pair_count, cyclic_group, direct_product, generated_subgroup,
                           hecke_triples, orbit_decomposition, pair_classes, pair_sgn, parse_group_spec,
                           pullback_pair, sl2_act, subgroup_abelian_invariants, symmetric_group,
                           transitive_pair_classes)

KLEIN_LABELS = ["e", "a", "b", "c"]
KLEIN_TABLE = [
    ["e", "a", "b", "c"],
    ["a", "e", "c", "b"],
    ["b", "c", "e", "a"],
    ["c", "b", "a", "e"],
]


def test_parse_group_spec():
    assert parse_group_spec("1").order == 1
    assert parse_group_spec("Z/2xZ/3").order == 6
    assert parse_group_spec("S3").order == 6
    assert parse_group_spec({"labels": KLEIN_LABELS, "table": KLEIN_TABLE}).order == 4
    with pytest.raises(InputError):
        parse_group_spec("PSL(2,7)")


def test_cayley_table_axioms_are_checked():
    no_identity = [["a", "a"], ["a", "a"]]
    with pytest.raises(InputError):
        CayleyGroup(["e", "a"], no_identity)
    with pytest.raises(InputError):
        CayleyGroup(["e", "a"], [["e", "x"], ["a", "e"]])
    with pytest.raises(InputError):
        CayleyGroup(["e", "a"], [["e", "a"]])


def test_symmetric_group_cap():
    with pytest.raises(CapExceededError):
        symmetric_group(9)


def test_s3_pair_classes(s3):
    classes = pair_classes(s3)
    assert len(classes) == 8
    assert commuting_pair_count(s3) == 18
    assert all(pc.class_size * pc.centralizer_order == s3.order for pc in classes)


def test_pair_classes_cover_commuting_pairs(small_group):
    G = small_group
    pairs = [(g, h) for g in G.elements for h in G.elements if G.commutes(g, h)]
    assert commuting_pair_count(G) == len(pairs)
    sizes = {}
    for g, h in pairs:
        pc = class_of(G, g, h)
        sizes[pc] = sizes.get(pc, 0) + 1
    assert all(sizes[pc] == pc.class_size for pc in pair_classes(G))


def test_abelian_pair_classes_are_singletons():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert len(pair_classes(G)) == 36
    assert all(pc.class_size == 1 for pc in pair_classes(G))


def test_class_of_identifies_conjugate_pairs(s3):
    e = s3.identity
    assert class_of(s3, (1, 0, 2), e) == class_of(s3, (2, 1, 0), e)
    assert class_of(s3, (1, 0, 2), e) != class_of(s3, e, (1, 0, 2))
    with pytest.raises(PreconditionError):
        class_of(s3, (1, 0, 2), (2, 1, 0))


def test_sl2_action(s3):
    g, h = (1, 2, 0), s3.identity
    S = ((0, -1), (1, 0))
    assert sl2_act(s3, (g, h), S) == (h, s3.inv(g))
    T = ((1, 1), (0, 1))
    assert sl2_act(s3, (g, h), T) == (g, g)
    with pytest.raises(PreconditionError):
        sl2_act(s3, (g, h), ((2, 0), (0, 1)))


def test_pullback_pair():
    G = cyclic_group(5)
    assert pullback_pair(G, ((1,), (2,)), (2, 1, 3)) == ((3,), (3,))


def test_hecke_triples():
    assert len(hecke_triples(4)) == 7
    assert set(hecke_triples(2)) == {(1, 0, 2), (1, 1, 2), (2, 0, 1)}
    with pytest.raises(PreconditionError):
        hecke_triples(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_transitive_classes_match_sublattices(n):
    classes = transitive_pair_classes(n)
    assert len(classes) == divisor_sigma(n)
    assert {lattice.triple for _, lattice in classes} == set(hecke_triples(n))


@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 7])
def test_transitive_classes_match_sublattices_large(n):
    assert len(transitive_pair_classes(n)) == divisor_sigma(n)


def test_transitive_triples_small():
    assert {l.triple for _, l in transitive_pair_classes(2)} == {(2, 0, 1), (1, 0, 2), (1, 1, 2)}
    assert {l.triple for _, l in transitive_pair_classes(3)} == {(1, 0, 3), (1, 1, 3), (1, 2, 3), (3, 0, 1)}


def test_orbit_decomposition():
    sigma = (1, 0, 2, 3)
    rho = (0, 1, 3, 2)
    orbits = orbit_decomposition(sigma, rho, 4)
    assert [sorted(o) for o, _ in orbits] == [[0, 1], [2, 3]]
    assert [l.triple for _, l in orbits] == [(1, 0, 2), (2, 0, 1)]
    with pytest.raises(PreconditionError):
        orbit_decomposition((1, 2, 0), (1, 0, 2))


def test_canonical_triple():
    assert canonical_triple([(2, 0), (0, 1)]).triple == (1, 0, 2)
    assert canonical_triple([(3, 0), (-1, 1)]).triple == (1, 1, 3)
    assert canonical_triple([(1, 0), (0, 2)]).triple == (2, 0, 1)
    with pytest.raises(PreconditionError):
        canonical_triple([(1, 1), (2, 2)])


def test_sublattice_validation():
    assert Sublattice(2, 1, 3).index == 6
    assert Sublattice(2, 1, 3).generators() == ((3, 0), (-1, 2))
    with pytest.raises(PreconditionError):
        Sublattice(1, 3, 3)


def test_abelian_invariants():
    assert abelian_invariants(Sublattice(2, 0, 2)) == [2, 2]
    assert abelian_invariants(Sublattice(1, 0, 4)) == [4]
    assert abelian_invariants(Sublattice(1, 0, 1)) == []


def test_lattice_and_subgroup_invariants_agree():
    G = symmetric_group(4)
    for pc, lattice in transitive_pair_classes(4):
        assert abelian_invariants(lattice) == subgroup_abelian_invariants(G, [pc.g, pc.h])


def test_pair_sgn():
    assert pair_sgn((0, 1, 2), (0, 1, 2)) == 1
    assert pair_sgn((1, 0, 2), (0, 1, 2)) == -1
    assert pair_sgn((1, 0, 3, 2), (0, 1, 2, 3)) == 1


# --- 不变性 ---
S = ((0, -1), (1, 0))
T = ((1, 1), (0, 1))


def _matmul(m, n):
    return tuple(tuple(sum(m[i][k] * n[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _random_word(rng, length):
    gamma = ((1, 0), (0, 1))
    for _ in range(length):
        step = rng.choice([S, T, ((1, -1), (0, 1))])
        gamma = _matmul(gamma, step)
    return gamma


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_canonical_triple_ignores_choice_of_basis(n):
    rng = random.Random(n)
    for _, lattice in transitive_pair_classes(n):
        v1, v2 = lattice.generators()
        for _ in range(20):
            (p, q), (r, s) = _random_word(rng, 8)
            basis = [(p * v1[0] + q * v2[0], p * v1[1] + q * v2[1]),
                     (r * v1[0] + s * v2[0], r * v1[1] + s * v2[1])]
            assert canonical_triple(basis) == lattice


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_centralizer_of_transitive_pair_is_generated_subgroup(n):
    G = symmetric_group(n)
    for pc, _ in transitive_pair_classes(n):
        assert set(centralizer(G, [pc.g, pc.h])) == generated_subgroup(G, [pc.g, pc.h])


@pytest.mark.slow
def test_centralizer_of_transitive_pair_is_generated_subgroup_s6():
    G = symmetric_group(6)
    for pc, _ in transitive_pair_classes(6):
        assert set(centralizer(G, [pc.g, pc.h])) == generated_subgroup(G, [pc.g, pc.h])


def test_sl2_act_is_right_action(s3):
    rng = random.Random(5)
    pairs = [pc.representative for pc in pair_classes(s3)]
    for _ in range(30):
        M, N = _random_word(rng, rng.randint(1, 6)), _random_word(rng, rng.randint(1, 6))
        for pair in pairs:
            assert sl2_act(s3, pair, _matmul(M, N)) == sl2_act(s3, sl2_act(s3, pair, M), N)
