"""
Tests for factorization ideals

Dimensions and witnesses of I_M(X, Y), vanishing over strata, the membership
criterion for cluster-tilting subcategories and shift propagation.
"""

import pytest

from cluster_category import CObject, build_category
from ideal_manager import (
    ideal_cell,
    ideal_over_stratum,
    ideal_vanishes,
    membership_criterion,
    shift_corollary_check,
    shift_propagation_check,
    stratum,
)
from lab_errors import ProfileInsufficient
from polygon_oracle import polygon_model
from tilting_manager import higher_cluster_tilting, subcat_from_angulation, syzygy


@pytest.fixture(scope="module")
def a3():
    return build_category(3, 1, "101")


@pytest.fixture(scope="module")
def a2_m2():
    return build_category(2, 2, "101")


@pytest.fixture(scope="module")
def a3_subcats(a3):
    return [subcat_from_angulation(a3, t) for t in polygon_model(a3).angulations()[:3]]


def test_identity_factors_through_itself(a3):
    for x in a3.indecomposables:
        obj = CObject.of(x)
        cell = ideal_cell(a3, obj, obj, obj)
        assert cell.dimension == 1
        alpha, beta = cell.witness
        assert not a3.compose_c(beta, alpha).is_zero()
        assert "dimension 1" in cell.describe()


def test_ideal_is_bounded_by_hom(a3):
    xs = a3.indecomposables
    for x in xs:
        for y in xs:
            for m in xs[::2]:
                cell = ideal_cell(a3, CObject.of(x), CObject.of(m), CObject.of(y))
                assert cell.dimension <= a3.hom_dimension(x, y)
                assert cell.vanishes == (cell.witness is None)


def test_zero_middle_gives_zero_ideal(a3):
    x, y = a3.indecomposables[:2]
    cell = ideal_cell(a3, CObject.of(x), CObject.zero(), CObject.of(y))
    assert cell.vanishes
    assert cell.witness is None


def test_multiplicity_of_middle_is_irrelevant(a3):
    x = a3.indecomposables[0]
    for m in a3.indecomposables:
        for y in a3.indecomposables:
            single = ideal_cell(a3, CObject.of(x), CObject.of(m), CObject.of(y))
            double = ideal_cell(a3, CObject.of(x), CObject.of(m, m), CObject.of(y))
            assert single.dimension == double.dimension


def test_empty_stratum_is_vacuous(a3):
    result = ideal_vanishes(a3, CObject.of(a3.indecomposables[0]), [], a3.indecomposables)
    assert result.vanishes
    assert result.vacuous
    assert result.cells_checked == 0


def test_exhaustive_scan_sums_cells(a3):
    middle = CObject(tuple(a3.indecomposables))
    quick = ideal_vanishes(a3, middle, a3.indecomposables, a3.indecomposables)
    full = ideal_vanishes(a3, middle, a3.indecomposables, a3.indecomposables, exhaustive=True)
    assert not quick.vanishes and not full.vanishes
    assert full.cells_checked == len(a3.indecomposables) ** 2
    assert full.dimension >= len(a3.indecomposables)


def test_stratum_zero_is_t(a3_subcats):
    for subcat in a3_subcats:
        assert stratum(subcat, (0,)) == tuple(subcat.indecomposables)
        assert ideal_over_stratum(subcat, CObject.zero(), [0]).vanishes


def test_membership_criterion_detects_t(a3_subcats):
    for subcat in a3_subcats:
        for x in subcat.category.indecomposables:
            assert membership_criterion(subcat, x, 2) == subcat.contains(x), (subcat.label, x)


def test_membership_criterion_for_higher_tilting(a2_m2):
    subcat = higher_cluster_tilting(a2_m2)[0]
    for x in a2_m2.indecomposables:
        assert membership_criterion(subcat, x, 3) == subcat.contains(x)


def test_shift_propagation_holds(a3_subcats):
    subcat = a3_subcats[0]
    members = stratum(subcat, (0, 1))
    for x in subcat.category.indecomposables:
        sequence = syzygy(subcat, CObject.of(x), 2)
        for i in range(2):
            report = shift_propagation_check(subcat, sequence, members, 0, i, part="a")
            assert report.holds


def test_shift_propagation_profile_guard(a3_subcats):
    subcat = a3_subcats[0]
    sequence = syzygy(subcat, subcat.object, 1)
    with pytest.raises(ProfileInsufficient):
        shift_propagation_check(subcat, sequence, [], 1, 0, part="a")
    with pytest.raises(ProfileInsufficient):
        shift_propagation_check(subcat, sequence, [], 0, 0, part="b")
    with pytest.raises(ValueError):
        shift_propagation_check(subcat, sequence, [], 0, 1, part="a")
    with pytest.raises(ValueError):
        shift_propagation_check(subcat, sequence, [], 0, 0, part="c")


def test_shift_corollary(a3_subcats):
    subcat = a3_subcats[0]
    for x in subcat.category.indecomposables:
        sequence = syzygy(subcat, CObject.of(x), 2)
        assert shift_corollary_check(subcat, sequence, 2, part="a").holds
    with pytest.raises(ProfileInsufficient):
        shift_corollary_check(subcat, syzygy(subcat, subcat.object, 3), 3, part="a")
