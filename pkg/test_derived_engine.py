"""
Tests for the derived category engine

Projective complexes, Hom up to homotopy, mapping cones, cohomology
splitting, the inverse Serre functor and the orbit functor F.
"""

import numpy as np
import pytest

from derived_engine import (
    ChainMap,
    DerivedCategory,
    DerivedIndec,
    OrbitFunctor,
    ProjComplex,
    apply_F,
    apply_F_inverse,
    apply_tau,
    compose_d,
    cohomology_split,
    hom_d,
    long_exact_sequence_holds,
    mapping_cone,
    serre_inverse,
    to_complex,
)
from lab_errors import ModelViolation, NonComposableError
from linear_algebra import FieldMatrix, field_from_tag
from quiver_modules import IntervalModule, all_intervals, ext1_dimension, hom_dimension

FIELD = field_from_tag(101)


def indec(a, b, n, shift=0):
    return DerivedIndec(IntervalModule(a, b, n), shift)


def stalks(n, shifts=(0,)):
    return [DerivedIndec(interval, s) for s in shifts for interval in all_intervals(n)]


def test_differential_must_respect_labels():
    one = FieldMatrix.identity(FIELD, 1)
    with pytest.raises(ModelViolation):
        ProjComplex(2, FIELD, {0: (1,), 1: (2,)}, {0: one})


def test_square_zero_enforced():
    one = FieldMatrix.identity(FIELD, 1)
    with pytest.raises(ModelViolation):
        ProjComplex(1, FIELD, {0: (1,), 1: (1,), 2: (1,)}, {0: one, 1: one})


def test_shift_moves_degrees_and_signs():
    complex_ = to_complex(indec(1, 1, 2), FIELD)
    shifted = complex_.shift(1)
    assert shifted.terms == {-2: (2,), -1: (1,)}
    assert shifted.differential(-2).to_lists() == [[100]]


def test_ext_between_simples_in_derived_category():
    derived = DerivedCategory(2, FIELD)
    assert derived.hom_dimension(indec(1, 1, 2), indec(2, 2, 2, 1)) == 1
    assert derived.hom_dimension(indec(2, 2, 2), indec(1, 1, 2, 1)) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_hom_and_ext_match_module_category(n):
    derived = DerivedCategory(n, FIELD)
    for x in all_intervals(n):
        for y in all_intervals(n):
            zero, one = DerivedIndec(x, 0), DerivedIndec(y, 0)
            assert derived.hom_dimension(zero, one) == hom_dimension(x, y, FIELD)
            assert derived.hom_dimension(zero, one.shifted(1)) == ext1_dimension(x, y, FIELD)
            assert derived.hom_dimension(zero, one.shifted(2)) == 0


def test_cone_of_projective_inclusion_is_simple():
    source = ProjComplex.stalk(2, 2, FIELD)
    target = ProjComplex.stalk(1, 2, FIELD)
    morphism = hom_d(source, target).basis[0]
    triangle = mapping_cone(morphism)
    assert cohomology_split(triangle.minimal_cone) == [indec(1, 1, 2)]
    assert triangle.minimal_cone == to_complex(indec(1, 1, 2), FIELD)
    assert triangle.inclusion.is_chain_map()
    assert triangle.projection.is_chain_map()


def test_cone_of_identity_is_contractible():
    complex_ = to_complex(indec(2, 3, 4), FIELD)
    triangle = mapping_cone(ChainMap.identity(complex_))
    assert triangle.cone.size == 4
    assert triangle.minimal_cone.is_zero()


def test_identity_is_first_endomorphism():
    for x in stalks(3):
        space = hom_d(to_complex(x, FIELD), to_complex(x, FIELD))
        assert space.dim == 1
        assert list(space.coordinates(ChainMap.identity(space.source))) == [1]


def test_non_composable_chain_maps():
    first = ChainMap.identity(ProjComplex.stalk(1, 2, FIELD))
    second = ChainMap.identity(ProjComplex.stalk(2, 2, FIELD))
    with pytest.raises(NonComposableError):
        second @ first


@pytest.mark.parametrize("n", [2, 3])
def test_long_exact_sequences_of_cones(n):
    derived = DerivedCategory(n, FIELD)
    probes = [derived.complex(p) for p in stalks(n, shifts=(-1, 0, 1))]
    for x in stalks(n):
        for y in stalks(n, shifts=(0, 1)):
            for morphism in derived.hom(x, y).basis:
                triangle = mapping_cone(morphism)
                assert all(long_exact_sequence_holds(triangle, probe) for probe in probes)


def test_cohomology_split_of_sum():
    pieces = [indec(1, 2, 3), indec(2, 2, 3, 1), indec(1, 3, 3)]
    complex_ = ProjComplex.direct_sum([to_complex(p, FIELD) for p in pieces], 3, FIELD)
    assert cohomology_split(complex_) == sorted(pieces)


@pytest.mark.parametrize("n", [2, 3])
def test_serre_duality_in_derived_category(n):
    for x in stalks(n):
        for y in stalks(n, shifts=(0, 1)):
            cx, cy = to_complex(x, FIELD), to_complex(y, FIELD)
            assert hom_d(cx, cy).dim == hom_d(serre_inverse(cy), cx).dim, (x, y)


def test_orbit_functor_on_a1():
    simple = indec(1, 1, 1)
    assert apply_F(simple, 1) == indec(1, 1, 1, 2)
    assert apply_F(simple, 3) == indec(1, 1, 1, 4)
    assert apply_F_inverse(apply_F(simple, 1), 1) == simple


def test_tau_on_projectives_and_intervals():
    assert apply_tau(indec(2, 3, 3), FIELD) == indec(1, 2, 3, -1)
    assert apply_tau(indec(1, 2, 3), FIELD) == indec(2, 3, 3)


@pytest.mark.parametrize("orbit", [1, 2])
def test_orbit_functor_inverts(orbit):
    for x in stalks(3, shifts=(0, 1)):
        assert apply_F_inverse(apply_F(x, orbit, FIELD), orbit, FIELD) == x
        assert apply_F(x, orbit, FIELD).shift >= x.shift + orbit


def test_orbit_functor_transports_hom_classes():
    derived = DerivedCategory(3, FIELD)
    functor = OrbitFunctor(derived, 1)
    for x in stalks(3):
        for y in stalks(3, shifts=(0, 1)):
            space = derived.hom(x, y)
            if not space.dim:
                continue
            coefficients = FIELD.array(list(range(1, space.dim + 1)))
            moved_x, moved_y, moved = functor.transport(x, y, coefficients, 1)
            assert (moved_x, moved_y) == (functor.apply(x), functor.apply(y))
            back_x, back_y, back = functor.transport(moved_x, moved_y, moved, -1)
            assert (back_x, back_y) == (x, y)
            assert np.array_equal(back, coefficients)


def test_compose_d_with_identity_and_zero():
    source = ProjComplex.stalk(2, 2, FIELD)
    target = ProjComplex.stalk(1, 2, FIELD)
    morphism = hom_d(source, target).basis[0]
    for composite in (compose_d(ChainMap.identity(target), morphism), compose_d(morphism, ChainMap.identity(source))):
        assert composite.components.keys() == morphism.components.keys()
        assert all(composite.components[p] == morphism.components[p] for p in morphism.components)
    zero = ChainMap.zero(target, target)
    assert compose_d(zero, morphism).is_zero()


def test_null_homotopic_maps():
    complex_ = to_complex(indec(2, 3, 4), FIELD)
    space = hom_d(complex_, complex_)
    assert not space.is_null_homotopic(ChainMap.identity(complex_))
    assert space.is_null_homotopic(ChainMap.zero(complex_, complex_))
    cone = mapping_cone(ChainMap.identity(complex_)).cone
    assert hom_d(cone, cone).is_null_homotopic(ChainMap.identity(cone))
