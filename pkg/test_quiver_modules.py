"""
Tests for representations of linear A_n

Hom and Ext between interval modules, minimal projective resolutions,
Krull-Schmidt decomposition and the AR translate.
"""

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lab_errors import DimensionMismatchError, FieldMismatchError
from linear_algebra import FieldMatrix, field_from_tag
from quiver_modules import (
    INJECTIVE,
    PROJECTIVE,
    IntervalModule,
    Representation,
    all_intervals,
    decompose,
    ext1_dimension,
    hom_basis,
    hom_dimension,
    projective_resolution,
    tau,
    tau_inverse,
)

FIELD = field_from_tag(101)


def interval(a, b, n):
    return IntervalModule(a, b, n)


def test_interval_bounds():
    with pytest.raises(DimensionMismatchError):
        IntervalModule(2, 1, 3)
    with pytest.raises(DimensionMismatchError):
        IntervalModule(1, 4, 3)


def test_projectives_and_injectives():
    assert IntervalModule.projective(2, 3) == interval(2, 3, 3)
    assert IntervalModule.injective(2, 3) == interval(1, 2, 3)
    assert interval(1, 3, 3).is_projective and interval(1, 3, 3).is_injective
    assert str(interval(1, 2, 3)) == "M[1,2]"


def test_small_hom_values():
    assert hom_dimension(interval(1, 3, 3), interval(1, 3, 3), FIELD) == 1
    assert hom_dimension(interval(2, 2, 2), interval(1, 1, 2), FIELD) == 0
    # S_2 is the socle of P_1 = M[1,2]
    assert hom_dimension(interval(2, 2, 2), interval(1, 2, 2), FIELD) == 1
    assert hom_dimension(interval(1, 2, 2), interval(2, 2, 2), FIELD) == 0


def test_small_ext_value():
    assert ext1_dimension(interval(1, 1, 2), interval(2, 2, 2), FIELD) == 1
    assert ext1_dimension(interval(2, 2, 2), interval(1, 1, 2), FIELD) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hom_matches_interval_rule(n):
    for source in all_intervals(n):
        for target in all_intervals(n):
            expected = int(target.a <= source.a <= target.b <= source.b)
            assert hom_dimension(source, target, FIELD) == expected, (source, target)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ext_is_dual_hom_into_tau(n):
    for source in all_intervals(n):
        translated = tau(source, FIELD)
        for target in all_intervals(n):
            expected = 0 if translated == PROJECTIVE else hom_dimension(target, translated, FIELD)
            assert ext1_dimension(source, target, FIELD) == expected, (source, target)


def test_resolution_of_simple_top():
    resolution = projective_resolution(interval(1, 1, 2).representation(FIELD))
    assert resolution.p0 == (1,)
    assert resolution.p1 == (2,)
    assert not resolution.is_projective
    assert resolution.differential.shape == (1, 1)
    assert not resolution.differential.is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_resolution_shape_of_every_interval(n):
    for module in all_intervals(n):
        resolution = projective_resolution(module.representation(FIELD))
        assert resolution.p0 == (module.a,)
        if module.is_projective:
            assert resolution.p1 == ()
        else:
            assert resolution.p1 == (module.b + 1,)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tau_shifts_intervals(n):
    for module in all_intervals(n):
        if module.is_projective:
            assert tau(module, FIELD) == PROJECTIVE
        else:
            assert tau(module, FIELD) == interval(module.a + 1, module.b + 1, n)
        if module.is_injective:
            assert tau_inverse(module, FIELD) == INJECTIVE
        else:
            assert tau_inverse(module, FIELD) == interval(module.a - 1, module.b - 1, n)


def test_dual_reverses_orientation():
    module = interval(1, 2, 4)
    assert module.dual() == interval(3, 4, 4)
    rep = module.representation(FIELD).dual()
    assert rep.dims == (0, 0, 1, 1)
    assert decompose(rep) == [interval(3, 4, 4)]


def test_mismatched_representations_rejected():
    with pytest.raises(DimensionMismatchError):
        hom_basis(interval(1, 1, 2).representation(FIELD), interval(1, 1, 3).representation(FIELD))
    other = field_from_tag(7)
    with pytest.raises(FieldMismatchError):
        hom_basis(interval(1, 1, 2).representation(FIELD), interval(1, 1, 2).representation(other))


def test_bad_arrow_shape_rejected():
    with pytest.raises(DimensionMismatchError):
        Representation(2, [1, 1], [FieldMatrix.zeros(FIELD, 2, 1)], FIELD)


@st.composite
def interval_multisets(draw, n=3):
    pool = all_intervals(n)
    return sorted(draw(st.lists(st.sampled_from(pool), min_size=1, max_size=4)))


@st.composite
def invertible(draw, size):
    rows = draw(st.lists(st.lists(st.integers(0, 100), min_size=size, max_size=size),
                         min_size=size, max_size=size))
    matrix = FieldMatrix.from_rows(rows, FIELD, cols=size)
    assume(matrix.rank() == size)
    return matrix


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_decompose_survives_change_of_basis(data):
    summands = data.draw(interval_multisets())
    module = Representation.direct_sum([s.representation(FIELD) for s in summands], 3, FIELD)
    bases = [data.draw(invertible(module.dim(v))) for v in range(1, 4)]
    assert decompose(module.conjugated(bases)) == summands


@settings(max_examples=30, deadline=None)
@given(interval_multisets())
def test_hom_is_additive(summands):
    module = Representation.direct_sum([s.representation(FIELD) for s in summands], 3, FIELD)
    probe = interval(2, 3, 3)
    expected = sum(hom_dimension(probe, s, FIELD) for s in summands)
    assert len(hom_basis(probe.representation(FIELD), module)) == expected
