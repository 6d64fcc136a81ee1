"""
Tests for exact linear algebra

Covers the prime and rational fields, FieldMatrix arithmetic, rank, kernels,
linear solves and the field-mismatch guards.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lab_errors import ConfigurationError, DimensionMismatchError, FieldMismatchError
from linear_algebra import (
    FieldMatrix,
    PrimeField,
    bareiss_rank,
    field_from_tag,
    in_span,
    inverse_matrix,
    kernel_basis,
    rank,
    solve,
)

SMALL_PRIMES = [2, 3, 5, 7, 101]


@st.composite
def matrices(draw, max_side=5):
    p = draw(st.sampled_from(SMALL_PRIMES))
    rows = draw(st.integers(min_value=1, max_value=max_side))
    cols = draw(st.integers(min_value=1, max_value=max_side))
    entries = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                            min_size=rows, max_size=rows))
    return FieldMatrix.from_rows(entries, field_from_tag(p))


def test_field_tags_are_shared():
    assert field_from_tag("32003") is field_from_tag(32003)
    assert field_from_tag("rational") is field_from_tag("Q")
    assert field_from_tag("f_101").tag == "101"


def test_composite_modulus_rejected():
    with pytest.raises(ConfigurationError):
        PrimeField(15)
    with pytest.raises(ConfigurationError):
        field_from_tag("reals")


def test_scalar_arithmetic_mod_p():
    field = field_from_tag(7)
    m = FieldMatrix.from_rows([[3, 5]], field)
    a, b = m.entries()
    assert a + b == 1
    assert a * b == 1
    assert a / b == 2
    assert -a == 4
    assert bool(a - a) is False


def test_rational_entries_coerced():
    field = field_from_tag("rational")
    m = FieldMatrix.from_rows([[Fraction(1, 2), 1], [1, 3]], field)
    assert m.rank() == 2
    assert inverse_matrix(m) @ m == FieldMatrix.identity(field, 2)


def test_singular_rational_matrix_has_no_inverse():
    field = field_from_tag("rational")
    m = FieldMatrix.from_rows([[Fraction(1, 2), 1], [1, 2]], field)
    assert m.rank() == 1
    with pytest.raises(ZeroDivisionError):
        inverse_matrix(m)


def test_fraction_into_prime_field():
    field = field_from_tag(7)
    m = FieldMatrix.from_rows([[Fraction(1, 2)]], field)
    assert m.to_lists() == [[4]]


def test_mixed_fields_rejected():
    left = FieldMatrix.identity(field_from_tag(5), 2)
    right = FieldMatrix.identity(field_from_tag(7), 2)
    with pytest.raises(FieldMismatchError):
        left @ right
    with pytest.raises(FieldMismatchError):
        left + right


def test_shape_mismatch_rejected():
    field = field_from_tag(5)
    with pytest.raises(DimensionMismatchError):
        FieldMatrix.zeros(field, 2, 3) @ FieldMatrix.zeros(field, 2, 3)
    with pytest.raises(DimensionMismatchError):
        FieldMatrix.from_rows([[1, 2], [3]], field)


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    assert rank(FieldMatrix.from_rows(rows, field_from_tag(2))) == 1
    assert rank(FieldMatrix.from_rows(rows, field_from_tag(3))) == 2
    assert rank(FieldMatrix.from_rows(rows, field_from_tag("rational"))) == 2


def test_empty_matrices():
    field = field_from_tag(5)
    empty = FieldMatrix.zeros(field, 0, 3)
    assert empty.rank() == 0
    assert len(kernel_basis(empty)) == 3
    assert FieldMatrix.zeros(field, 3, 0).rank() == 0


def test_bareiss_matches_known_ranks():
    assert bareiss_rank([[2, 4], [1, 2]]) == 1
    assert bareiss_rank([[0, 0, 1], [0, 2, 0], [3, 0, 0]]) == 3
    assert bareiss_rank([[0, 0], [0, 0]]) == 0


def test_solve_and_span():
    field = field_from_tag(101)
    matrix = FieldMatrix.from_rows([[1, 0], [0, 1], [1, 1]], field)
    target = FieldMatrix.column_vector(field, [2, 3, 5])
    solution = solve(matrix, target)
    assert solution is not None
    assert matrix @ solution == target
    assert solve(matrix, FieldMatrix.column_vector(field, [2, 3, 0])) is None
    assert in_span(target, [matrix.column(0), matrix.column(1)])
    assert not in_span(FieldMatrix.column_vector(field, [0, 0, 1]), [matrix.column(0), matrix.column(1)])


def test_singular_inverse_raises():
    field = field_from_tag(5)
    with pytest.raises(ZeroDivisionError):
        inverse_matrix(FieldMatrix.from_rows([[1, 2], [2, 4]], field))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(matrix):
    kernel = kernel_basis(matrix)
    assert matrix.rank() + len(kernel) == matrix.cols
    for vector in kernel:
        assert (matrix @ vector).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_of_transpose(matrix):
    assert matrix.rank() == matrix.T.rank()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rational_rank_matches_floating_point(rows):
    rational = FieldMatrix.from_rows(rows, field_from_tag("rational")).rank()
    assert rational == int(np.linalg.matrix_rank(np.array(rows, dtype=float)))
