import math
from fractions import Fraction

import pytest

from cocycles import twist_data
from errors import PreconditionError
from exact_arith import CycloElem
from finite_groups import cyclic_group, pair_classes, symmetric_group, trivial_group
from fixtures import broken_twisted_fixture, random_norton, twisted_z2_fixture
from norton import (S_MATRIX, T_MATRIX, NortonSeries, check_T_equivariance, check_homomorphism,
                    constant_norton, evaluate, external_product, induce, inner_product,
                    inner_product_by_induction, internal_product, numeric_check, pullback_from_trivial,
                    restrict, series_to_complex, validate_twisted_support)
from qseries import PuiseuxSeries, constant, difference, j_expansion


def _scalars(report):
    return {e.pair_class.representative: e.scalar_exponent for e in report.entries}


def test_missing_class_is_rejected(z2):
    values = {pc: constant(1) for pc in pair_classes(z2)[1:]}
    with pytest.raises(PreconditionError):
        NortonSeries(z2, values)


def test_evaluate_uses_conjugacy_class(s3):
    f = random_norton(s3, seed=7, trunc=4)
    e = s3.identity
    assert evaluate(f, (1, 0, 2), e) == evaluate(f, (2, 1, 0), e)
    with pytest.raises(PreconditionError):
        evaluate(f, (1, 0, 2), (2, 1, 0))


def test_t_equivariance_of_twisted_fixture():
    report = check_T_equivariance(twisted_z2_fixture())
    assert report.ok
    scalars = _scalars(report)
    assert scalars[((1,), (0,))] == 0
    assert scalars[((1,), (1,))] == Fraction(1, 2)
    assert scalars[((0,), (0,))] == 0


def test_t_equivariance_detects_missing_shift():
    report = check_T_equivariance(broken_twisted_fixture())
    assert not report.ok
    failed = [e for e in report.entries if not e.agrees]
    assert failed and all(e.reason for e in failed)


def test_pullback_of_integral_series_is_t_invariant(small_group, j40):
    report = check_T_equivariance(pullback_from_trivial(j40, small_group))
    assert report.ok
    assert all(e.scalar_exponent == 0 for e in report.entries)


def test_twisted_support():
    report = validate_twisted_support(twisted_z2_fixture())
    assert report.ok
    twisted = [e for e in report.entries if e.pair_class.g == (1,)]
    assert all(e.twist.N == 4 for e in twisted)


def test_twisted_support_flags_bad_exponent():
    good = twisted_z2_fixture()
    values = dict(good.values)
    target = next(pc for pc in values if pc.representative == ((1,), (0,)))
    values[target] = PuiseuxSeries({Fraction(1, 4): 1, Fraction(1, 2): 5}, 4)
    report = validate_twisted_support(NortonSeries(good.group, values, good.twist))
    assert not report.ok
    bad = [e for e in report.entries if not e.ok]
    assert [e.bad_exponent for e in bad] == [Fraction(1, 2)]


def test_twisted_support_requires_twist(z2):
    with pytest.raises(PreconditionError):
        validate_twisted_support(constant_norton(z2, 1))


def test_twist_for_defaults_to_untwisted():
    f = twisted_z2_fixture()
    assert f.twist_for((0,)) == twist_data(1, 0)
    assert f.twist_for((1,)) == twist_data(2, 1)


def test_numeric_s_check_on_j(j40):
    f = pullback_from_trivial(j40, trivial_group())
    report = numeric_check(f, S_MATRIX, [2j, 1.5j + 0.25], 1e-6)
    assert report.ok
    assert abs(report.entries[0].scalar - 1) < 1e-6


def test_numeric_check_reports_truncation():
    f = pullback_from_trivial(j_expansion(3), trivial_group())
    report = numeric_check(f, S_MATRIX, [0.1j], 1e-6)
    assert not report.ok
    assert not report.entries[0].truncation_ok


def test_numeric_check_rejects_lower_half_plane(z2):
    with pytest.raises(PreconditionError):
        numeric_check(constant_norton(z2, 1), T_MATRIX, [-1j], 1e-6)
    with pytest.raises(PreconditionError):
        numeric_check(constant_norton(z2, 1), T_MATRIX, [], 1e-6)


def test_series_to_complex():
    value, tail = series_to_complex(PuiseuxSeries({0: 2, 1: 1}), 1j)
    assert tail == 0.0
    assert abs(value - (2 + math.exp(-2 * math.pi))) < 1e-12
    root = PuiseuxSeries({0: CycloElem(4, (Fraction(0), Fraction(1)))})
    value, _ = series_to_complex(root, 1j)
    assert abs(value - 1j) < 1e-12


def test_homomorphism_check():
    with pytest.raises(PreconditionError):
        check_homomorphism(cyclic_group(2), cyclic_group(3), lambda x: x)
    check_homomorphism(cyclic_group(2), cyclic_group(4), lambda x: ((2 * x[0]) % 4,))


def test_restrict_along_inclusion():
    G = cyclic_group(4)
    f = random_norton(G, seed=3, trunc=4)
    H = cyclic_group(2)
    res = restrict(f, H, lambda x: ((2 * x[0]) % 4,))
    for pc in res.classes():
        assert res.values[pc] == evaluate(f, ((2 * pc.g[0]) % 4,), ((2 * pc.h[0]) % 4,))
    assert res.twist is None


def test_induce_from_trivial():
    point = trivial_group()
    G = cyclic_group(2)
    induced = induce(constant_norton(point, 1), G, lambda _: G.identity)
    for pc in induced.classes():
        expected = 2 if pc.representative == ((0,), (0,)) else 0
        assert induced.values[pc] == constant(expected)


def test_induce_regular_to_s3(s3):
    point = trivial_group()
    induced = induce(constant_norton(point, 1), s3, lambda _: s3.identity)
    identity_pair = (s3.identity, s3.identity)
    for pc in induced.classes():
        expected = s3.order if pc.representative == identity_pair else 0
        assert induced.values[pc] == constant(expected)


def test_inner_product_two_ways(small_group):
    f1 = random_norton(small_group, seed=1, trunc=3)
    f2 = random_norton(small_group, seed=2, trunc=3)
    direct = inner_product(f1, f2)
    via_induction = inner_product_by_induction(f1, f2)
    assert difference(direct, via_induction).is_zero()


def test_inner_product_of_constants_counts_pairs(s3):
    value = inner_product(constant_norton(s3, 1), constant_norton(s3, 1))
    assert value == constant(3)


def test_products(z2):
    f = random_norton(z2, seed=5, trunc=3)
    square = internal_product(f, f)
    for pc in f.classes():
        assert square.values[pc] == f.values[pc] * f.values[pc]
    outer = external_product(f, constant_norton(trivial_group(), 2))
    assert outer.group.order == 2
    assert len(outer.classes()) == 4
    with pytest.raises(PreconditionError):
        internal_product(f, constant_norton(symmetric_group(3), 1))


def test_induce_after_restrict_to_normal_subgroup(s3):
    f = random_norton(s3, seed=7, trunc=4)
    H = cyclic_group(3)
    rotation = (1, 2, 0)

    def include(x):
        return s3.power(rotation, x[0])

    image = {include(x) for x in H.elements}
    round_trip = induce(restrict(f, H, include), s3, include)
    for pc in pair_classes(s3):
        g1, g2 = pc.representative
        landing = sum(1 for s in s3.elements
                      if s3.conjugate(g1, s) in image and s3.conjugate(g2, s) in image)
        expected = f.values[pc].scale(Fraction(landing, H.order))
        assert difference(round_trip.values[pc], expected).is_zero()


def test_inner_product_is_symmetric_and_bilinear(small_group):
    f1, f2, f3 = (random_norton(small_group, seed=seed, trunc=3) for seed in (21, 22, 23))
    assert difference(inner_product(f1, f2), inner_product(f2, f1)).is_zero()
    a, b = Fraction(2, 3), Fraction(-5, 2)
    combined = NortonSeries.from_function(
        small_group, lambda pc: f2.values[pc].scale(a) + f3.values[pc].scale(b))
    expected = inner_product(f1, f2).scale(a) + inner_product(f1, f3).scale(b)
    assert difference(inner_product(f1, combined), expected).is_zero()
