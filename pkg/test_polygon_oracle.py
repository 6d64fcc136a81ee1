"""
Tests for the polygon model

Arcs, crossings, (m+2)-angulation enumeration against the Fuss-Catalan
numbers, and the matching of arcs to indecomposables.
"""

import pytest

from cluster_category import build_category, indecomposable_count
from lab_errors import IncompatibleParameters
from polygon_oracle import (
    Arc,
    crossing_number,
    enumerate_angulations,
    fuss_catalan,
    m_diagonals,
    polygon_model,
    polygon_size,
)


@pytest.fixture(scope="module")
def a2():
    return build_category(2, 1, "101")


@pytest.fixture(scope="module")
def a3():
    return build_category(3, 1, "101")


@pytest.fixture(scope="module")
def a2_m2():
    return build_category(2, 2, "101")


def test_polygon_sizes():
    assert polygon_size(2, 1) == 5
    assert polygon_size(3, 1) == 6
    assert polygon_size(2, 2) == 8


def test_fuss_catalan_values():
    assert [fuss_catalan(rank, 1) for rank in range(1, 6)] == [2, 5, 14, 42, 132]
    assert fuss_catalan(2, 2) == 12
    assert fuss_catalan(1, 2) == 3


def test_sides_are_not_arcs():
    with pytest.raises(IncompatibleParameters):
        Arc(0, 1, 5)
    with pytest.raises(IncompatibleParameters):
        Arc(0, 4, 5)
    with pytest.raises(IncompatibleParameters):
        Arc(3, 1, 5)
    assert Arc.of(3, 1, 5) == Arc(1, 3, 5)


def test_crossings():
    size = 6
    assert crossing_number(Arc(0, 2, size), Arc(1, 3, size)) == 1
    assert crossing_number(Arc(0, 2, size), Arc(2, 4, size)) == 0
    assert crossing_number(Arc(0, 3, size), Arc(1, 4, size)) == 1
    assert crossing_number(Arc(0, 4, size), Arc(1, 3, size)) == 0
    with pytest.raises(IncompatibleParameters):
        crossing_number(Arc(0, 2, 5), Arc(0, 2, 6))


@pytest.mark.parametrize("rank, orbit", [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (2, 3)])
def test_m_diagonals_match_indecomposables(rank, orbit):
    assert len(m_diagonals(polygon_size(rank, orbit), orbit)) == indecomposable_count(rank, orbit)


@pytest.mark.parametrize("rank, orbit", [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (3, 2), (2, 3)])
def test_angulation_count(rank, orbit):
    angulations = enumerate_angulations(polygon_size(rank, orbit), orbit)
    assert len(angulations) == fuss_catalan(rank, orbit)
    assert len(set(angulations)) == len(angulations)
    for angulation in angulations:
        assert len(angulation.arcs) == rank
        for position, first in enumerate(angulation.arcs):
            for second in angulation.arcs[position + 1:]:
                assert not crossing_number(first, second)


def test_pentagon_triangulations():
    found = {tuple(str(arc) for arc in t.arcs) for t in enumerate_angulations(5)}
    assert ("(0,2)", "(0,3)") in found
    assert ("(0,2)", "(2,4)") in found
    assert len(found) == 5


def test_incompatible_polygon():
    with pytest.raises(IncompatibleParameters):
        enumerate_angulations(7, 2)


def test_pentagon_model_symmetry(a2):
    model = polygon_model(a2)
    assert model.size == 5
    assert model.isomorphism_count() == 10
    assert model.isomorphism_count(limit=3) == 3


def test_hexagon_model_symmetry(a3):
    assert polygon_model(a3).isomorphism_count() >= 12


@pytest.mark.parametrize("name", ["a2", "a3"])
def test_ext_equals_crossing(name, request):
    category = request.getfixturevalue(name)
    model = polygon_model(category)
    for first in model.arcs:
        for second in model.arcs:
            x, y = model.arc_to_object(first), model.arc_to_object(second)
            assert category.ext_dimension(x, y, 1) == crossing_number(first, second)


def test_higher_model_crossing_means_incompatible(a2_m2):
    model = polygon_model(a2_m2)
    for first in model.arcs:
        for second in model.arcs:
            if first == second:
                continue
            x, y = model.arc_to_object(first), model.arc_to_object(second)
            assert bool(crossing_number(first, second)) == bool(model.incompatibility(x, y))


def test_model_is_a_bijection(a2_m2):
    model = polygon_model(a2_m2)
    assert sorted(model.to_arc) == sorted(a2_m2.indecomposables)
    assert len(set(model.to_object.values())) == len(model.arcs)


def test_foreign_arc_rejected(a2):
    model = polygon_model(a2)
    with pytest.raises(IncompatibleParameters):
        model.arc_to_object(Arc(0, 2, 6))
    wrong = enumerate_angulations(6)[0]
    with pytest.raises(IncompatibleParameters):
        model.objects_of(wrong)
