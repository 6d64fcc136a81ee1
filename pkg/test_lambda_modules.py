"""
Tests for End_C(T) and its modules

Structure constants of the endomorphism algebra, the quiver read off the
radical filtration, module axioms and the functor H = Hom_C(-, X)|_T.
"""

import numpy as np
import pytest

from cluster_category import CObject, build_category
from lab_errors import ModuleActionError
from lambda_modules import (
    LambdaModule,
    endomorphism_algebra,
    hom_functor,
    indecomposable_probes,
    injective_module,
    modules_isomorphic,
    projective_module,
    zero_module,
)
from polygon_oracle import Angulation, Arc
from tilting_manager import subcat_from_angulation


def angulation(*pairs, size=6):
    return Angulation(tuple(Arc(i, j, size) for i, j in pairs), size, 1)


@pytest.fixture(scope="module")
def a3():
    return build_category(3, 1, "101")


@pytest.fixture(scope="module")
def triangle_subcat(a3):
    return subcat_from_angulation(a3, angulation((0, 2), (2, 4), (0, 4)))


@pytest.fixture(scope="module")
def fan_subcat(a3):
    return subcat_from_angulation(a3, angulation((0, 2), (0, 3), (0, 4)))


def test_oriented_cycle_algebra(triangle_subcat):
    algebra = endomorphism_algebra(triangle_subcat)
    assert algebra.vertex_count == 3
    assert algebra.dim == 6
    assert sum(algebra.arrow_counts().values()) == 3
    assert algebra.radical_power_dimension(1) == 3
    assert algebra.radical_power_dimension(2) == 0
    assert algebra.is_associative()


def test_fan_gives_linear_path_algebra(fan_subcat):
    algebra = endomorphism_algebra(fan_subcat)
    assert algebra.dim == 6
    assert sum(algebra.arrow_counts().values()) == 2
    assert algebra.radical_power_dimension(2) == 1
    assert algebra.radical_power_dimension(3) == 0
    assert algebra.is_associative()


def test_algebra_is_cached(fan_subcat):
    assert endomorphism_algebra(fan_subcat) is endomorphism_algebra(fan_subcat)


def test_opposite_algebra(fan_subcat):
    algebra = endomorphism_algebra(fan_subcat)
    opposite = algebra.opposite()
    assert opposite.opposite() is algebra
    assert opposite.dim == algebra.dim
    assert opposite.is_associative()
    for index in range(algebra.dim):
        assert opposite.basis[index] == tuple(reversed(algebra.basis[index]))


@pytest.mark.parametrize("name", ["triangle_subcat", "fan_subcat"])
def test_projectives_and_injectives_are_modules(name, request):
    algebra = endomorphism_algebra(request.getfixturevalue(name))
    for vertex in range(algebra.vertex_count):
        projective = projective_module(algebra, vertex)
        projective.check_axioms()
        injective = injective_module(algebra, vertex)
        assert injective.algebra is algebra
        injective.check_axioms()
        top = [0] * algebra.vertex_count
        top[vertex] = 1
        assert projective.top_dimensions() == tuple(top)


@pytest.mark.parametrize("name", ["triangle_subcat", "fan_subcat"])
def test_h_of_t_is_projective(name, request):
    subcat = request.getfixturevalue(name)
    algebra = endomorphism_algebra(subcat)
    probes = indecomposable_probes(algebra)
    for vertex, t in enumerate(subcat.indecomposables):
        module = hom_functor(algebra, CObject.of(t))
        module.check_axioms()
        assert modules_isomorphic(module, projective_module(algebra, vertex), probes)


def test_h_kills_t_shifted(triangle_subcat):
    algebra = endomorphism_algebra(triangle_subcat)
    for x in triangle_subcat.shifted(1):
        assert hom_functor(algebra, CObject.of(x)).is_zero()


def test_h_reaches_every_indecomposable_module(fan_subcat):
    algebra = endomorphism_algebra(fan_subcat)
    probes = indecomposable_probes(algebra)
    # mod of linear A_3 has six indecomposables, C has nine with three in T[1]
    assert len(probes) == 6
    for probe in probes:
        probe.check_axioms()
        assert probe.hom_dimension(probe) == 1


def test_action_axioms_detect_broken_products(fan_subcat):
    algebra = endomorphism_algebra(fan_subcat)
    radical = algebra.radical_elements()
    f, g = next((f, g) for f in radical for g in radical
                if algebra.target(f) == algebra.source(g) and np.any(algebra.product(g, f)))
    one = algebra.field.eye(1)
    module = LambdaModule(algebra, [1] * algebra.vertex_count, {f: one, g: one})
    with pytest.raises(ModuleActionError):
        module.check_axioms()


def test_zero_module(fan_subcat):
    algebra = endomorphism_algebra(fan_subcat)
    module = zero_module(algebra)
    assert module.is_zero()
    assert module.hom_dimension(projective_module(algebra, 0)) == 0


def test_dual_lives_over_opposite(triangle_subcat):
    algebra = endomorphism_algebra(triangle_subcat)
    module = projective_module(algebra, 1)
    dual = module.dual()
    assert dual.algebra is algebra.opposite()
    assert dual.dims == module.dims
    dual.check_axioms()
