"""
Exact Linear Algebra

This module provides exact matrices over a prime field F_p or over the
rationals. Every Hom space, resolution and ideal computation in the workbench
reduces to the rank, kernel and solve operations defined here.

Prime-field matrices are numpy int64 arrays kept reduced mod p; rational
matrices are numpy object arrays of Fraction. Ranks over the rationals use
fraction-free (Bareiss) elimination on integer-scaled rows.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from lab_errors import ConfigurationError, DimensionMismatchError, FieldMismatchError

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    divisor = 3
    while divisor * divisor <= p:
        if p % divisor == 0:
            return False
        divisor += 2
    return True


class Field:
    """
    Base class for the exact fields used by the workbench.

    A field knows how to coerce Python values into its canonical representation
    and how to run elimination on numpy arrays of those values.
    """

    tag: str = ""
    dtype: Any = object

    def coerce(self, value) -> Any:
        raise NotImplementedError

    def reduce(self, array: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inverse(self, value) -> Any:
        raise NotImplementedError

    def rank(self, array: np.ndarray) -> int:
        raise NotImplementedError

    def array(self, data, shape: Optional[Tuple[int, ...]] = None) -> np.ndarray:
        """Convert nested data to a canonical array over this field."""
        if isinstance(data, np.ndarray) and data.dtype != object and self.dtype is not object:
            result = self.reduce(data.astype(self.dtype))
        else:
            raw = np.asarray(data, dtype=object)
            flat = [self.coerce(value) for value in raw.ravel()]
            result = np.array(flat, dtype=self.dtype).reshape(raw.shape)
        if shape is not None:
            result = result.reshape(shape)
        return result

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            result = np.empty(shape, dtype=object)
            result.fill(Fraction(0))
            return result
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, size: int) -> np.ndarray:
        result = self.zeros((size, size))
        for i in range(size):
            result[i, i] = self.coerce(1)
        return result

    def matmul(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        if left.shape[1] != right.shape[0]:
            raise DimensionMismatchError("matrix product", left.shape[1], right.shape[0])
        if left.shape[1] == 0:
            return self.zeros((left.shape[0], right.shape[1]))
        return self.reduce(left @ right)

    def is_zero(self, array: np.ndarray) -> bool:
        return not np.any(array != 0)

    def rref(self, array: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """
        Reduced row echelon form.

        Args:
            array: 2-D array over this field

        Returns:
            Tuple of (reduced array, list of pivot column indices)
        """
        work = array.copy()
        rows, cols = work.shape
        pivots: List[int] = []
        row = 0
        for col in range(cols):
            if row == rows:
                break
            candidates = np.nonzero(work[row:, col] != 0)[0]
            if candidates.size == 0:
                continue
            pivot_row = row + int(candidates[0])
            if pivot_row != row:
                work[[row, pivot_row]] = work[[pivot_row, row]]
            work[row] = self.reduce(work[row] * self.inverse(work[row, col]))
            column = work[:, col].copy()
            column[row] = self.coerce(0)
            others = np.nonzero(column != 0)[0]
            if others.size:
                work[others] = self.reduce(work[others] - np.outer(column[others], work[row]))
            pivots.append(col)
            row += 1
        return work, pivots

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self) -> int:
        return hash(self.tag)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.tag})"


class PrimeField(Field):
    """The prime field F_p, stored as int64 residues in [0, p)."""

    dtype = np.int64

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise ConfigurationError('field', str(p), "modulus must be prime")
        if p >= 2 ** 31:
            raise ConfigurationError('field', str(p), "modulus must be below 2^31")
        self.p = p
        self.tag = str(p)

    def coerce(self, value) -> int:
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise FieldMismatchError(value.field.tag, self.tag)
            return int(value.value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        return int(value) % self.p

    def reduce(self, array: np.ndarray) -> np.ndarray:
        return np.mod(array, self.p)

    def matmul(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        if left.shape[1] != right.shape[0]:
            raise DimensionMismatchError("matrix product", left.shape[1], right.shape[0])
        if left.shape[1] == 0:
            return self.zeros((left.shape[0], right.shape[1]))
        if (self.p - 1) ** 2 * left.shape[1] < 2 ** 63:
            return self.reduce(left @ right)
        # fall back to Python ints when int64 accumulation could overflow
        product = left.astype(object) @ right.astype(object)
        return np.mod(product, self.p).astype(np.int64)

    def inverse(self, value) -> int:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(value, self.p - 2, self.p)

    def rank(self, array: np.ndarray) -> int:
        if array.size == 0:
            return 0
        return len(self.rref(array)[1])


class RationalField(Field):
    """The rationals, stored as Fraction objects."""

    dtype = object
    tag = "rational"

    def coerce(self, value) -> Fraction:
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise FieldMismatchError(value.field.tag, self.tag)
            return value.value
        return Fraction(value)

    def reduce(self, array: np.ndarray) -> np.ndarray:
        return array

    def inverse(self, value) -> Fraction:
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(value)

    def rank(self, array: np.ndarray) -> int:
        if array.size == 0:
            return 0
        # Scale every row to integers, then eliminate without fractions
        integer_rows = []
        for row in array:
            scale = lcm(*(Fraction(value).denominator for value in row))
            integer_rows.append([int(Fraction(value) * scale) for value in row])
        return bareiss_rank(integer_rows)


def bareiss_rank(rows: List[List[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    work = [list(row) for row in rows]
    if not work:
        return 0
    row_count, col_count = len(work), len(work[0])
    rank = 0
    previous = 1
    for col in range(col_count):
        pivot = next((i for i in range(rank, row_count) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        head = work[rank][col]
        for i in range(rank + 1, row_count):
            factor = work[i][col]
            for j in range(col + 1, col_count):
                # exact by Sylvester's identity
                work[i][j] = (work[i][j] * head - factor * work[rank][j]) // previous
            work[i][col] = 0
        previous = head
        rank += 1
        if rank == row_count:
            break
    return rank


@lru_cache(maxsize=None)
def _prime_field(p: int) -> PrimeField:
    return PrimeField(p)


_RATIONALS = RationalField()


def field_from_tag(tag: Union[str, int, Field]) -> Field:
    """
    Resolve a field tag such as "32003", 101 or "rational".

    Args:
        tag: A prime (int or digit string), "rational"/"q"/"qq", or a Field

    Returns:
        Shared Field instance for the tag
    """
    if isinstance(tag, Field):
        return tag
    if isinstance(tag, int):
        return _prime_field(tag)
    text = str(tag).strip().lower()
    if text in ('rational', 'rationals', 'q', 'qq'):
        return _RATIONALS
    if text.startswith('f_'):
        text = text[2:]
    if not text.isdigit():
        raise ConfigurationError('field', str(tag), "expected a prime or 'rational'")
    return _prime_field(int(text))


@dataclass(frozen=True)
class FieldScalar:
    """An exact scalar tagged with its field."""

    value: Any
    field: Field

    def _other(self, other) -> Any:
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldMismatchError(self.field.tag, other.field.tag)
            return other.value
        return self.field.coerce(other)

    def _wrap(self, value) -> 'FieldScalar':
        return FieldScalar(self.field.coerce(value), self.field)

    def __add__(self, other):
        return self._wrap(self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.value * self.field.inverse(self._other(other)))

    def __neg__(self):
        return self._wrap(-self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return False

    def __hash__(self) -> int:
        return hash((self.field.tag, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} in {self.field.tag}"


class FieldMatrix:
    """
    Exact rows x cols matrix over a Field.

    Instances are treated as immutable values: every operation returns a new
    matrix and the underlying array is never modified in place.
    """

    __slots__ = ('field', 'data')

    def __init__(self, field: Field, data: np.ndarray):
        if data.ndim != 2:
            raise DimensionMismatchError("matrix construction", 2, data.ndim)
        self.field = field
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], field: Optional[Field] = None,
                  cols: Optional[int] = None) -> 'FieldMatrix':
        """
        Build a matrix from nested rows of ints, Fractions or FieldScalars.

        Args:
            rows: Row-major entries
            field: Target field; inferred from FieldScalar entries when omitted
            cols: Column count, required only when rows is empty

        Returns:
            New FieldMatrix
        """
        tags = {value.field for row in rows for value in row if isinstance(value, FieldScalar)}
        if len(tags) > 1:
            first, second = sorted(tag.tag for tag in tags)[:2]
            raise FieldMismatchError(first, second)
        if field is None:
            field = tags.pop() if tags else field_from_tag(DEFAULT_PRIME)
        elif tags and tags.pop() != field:
            raise FieldMismatchError(field.tag, "entries")
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise DimensionMismatchError("row lengths", min(widths), max(widths))
        width = widths.pop() if widths else (cols or 0)
        if not rows:
            return cls.zeros(field, 0, width)
        return cls(field, field.array([list(row) for row in rows], shape=(len(rows), width)))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> 'FieldMatrix':
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: Field, size: int) -> 'FieldMatrix':
        return cls(field, field.eye(size))

    @classmethod
    def column_vector(cls, field: Field, values: Sequence[Any]) -> 'FieldMatrix':
        return cls(field, field.array(list(values), shape=(len(values), 1)))

    @classmethod
    def hstack(cls, field: Field, blocks: Sequence['FieldMatrix'], rows: int) -> 'FieldMatrix':
        parts = [block.data for block in blocks if block.cols]
        if not parts:
            return cls.zeros(field, rows, 0)
        return cls(field, np.hstack(parts))

    @classmethod
    def vstack(cls, field: Field, blocks: Sequence['FieldMatrix'], cols: int) -> 'FieldMatrix':
        parts = [block.data for block in blocks if block.rows]
        if not parts:
            return cls.zeros(field, 0, cols)
        return cls(field, np.vstack(parts))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    def _check(self, other: 'FieldMatrix') -> None:
        if other.field != self.field:
            raise FieldMismatchError(self.field.tag, other.field.tag)

    def __matmul__(self, other: 'FieldMatrix') -> 'FieldMatrix':
        self._check(other)
        return FieldMatrix(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: 'FieldMatrix') -> 'FieldMatrix':
        self._check(other)
        if other.shape != self.shape:
            raise DimensionMismatchError("matrix sum", self.shape, other.shape)
        return FieldMatrix(self.field, self.field.reduce(self.data + other.data))

    def __sub__(self, other: 'FieldMatrix') -> 'FieldMatrix':
        self._check(other)
        if other.shape != self.shape:
            raise DimensionMismatchError("matrix difference", self.shape, other.shape)
        return FieldMatrix(self.field, self.field.reduce(self.data - other.data))

    def __neg__(self) -> 'FieldMatrix':
        return FieldMatrix(self.field, self.field.reduce(-self.data))

    def scale(self, factor) -> 'FieldMatrix':
        value = self.field.coerce(factor)
        return FieldMatrix(self.field, self.field.reduce(self.data * value))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.all(self.data == other.data)))

    __hash__ = None

    def __getitem__(self, index: Tuple[int, int]) -> FieldScalar:
        return FieldScalar(self.data[index], self.field)

    def entries(self) -> List[FieldScalar]:
        """Row-major list of entries."""
        return [FieldScalar(value, self.field) for value in self.data.ravel()]

    def to_lists(self) -> List[List[Any]]:
        if self.field.dtype is object:
            return [list(row) for row in self.data]
        return [[int(value) for value in row] for row in self.data]

    def transpose(self) -> 'FieldMatrix':
        return FieldMatrix(self.field, self.data.T.copy())

    @property
    def T(self) -> 'FieldMatrix':
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> 'FieldMatrix':
        rows, cols = list(rows), list(cols)
        if not rows or not cols:
            return FieldMatrix.zeros(self.field, len(rows), len(cols))
        return FieldMatrix(self.field, self.data[np.ix_(rows, cols)].copy())

    def column(self, index: int) -> 'FieldMatrix':
        return FieldMatrix(self.field, self.data[:, index:index + 1].copy())

    def is_zero(self) -> bool:
        return self.field.is_zero(self.data)

    def rank(self) -> int:
        return self.field.rank(self.data)

    def kernel_basis(self) -> List['FieldMatrix']:
        return [FieldMatrix(self.field, v.reshape(-1, 1)) for v in kernel_vectors(self.field, self.data)]

    def __repr__(self) -> str:
        return f"FieldMatrix({self.rows}x{self.cols} over {self.field.tag}, {self.to_lists()})"


def kernel_vectors(field: Field, array: np.ndarray) -> List[np.ndarray]:
    """Basis of the null space of a 2-D array, as 1-D arrays."""
    rows, cols = array.shape
    if cols == 0:
        return []
    if rows == 0:
        return [field.eye(cols)[i] for i in range(cols)]
    reduced, pivots = field.rref(array)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vector = field.zeros(cols)
        vector[free] = field.coerce(1)
        for i, pivot_col in enumerate(pivots):
            vector[pivot_col] = field.reduce(np.array([-reduced[i, free]], dtype=field.dtype))[0]
        basis.append(vector)
    return basis


def solve_vector(field: Field, array: np.ndarray, target: np.ndarray) -> Optional[np.ndarray]:
    """
    One solution x of array @ x = target, or None when inconsistent.

    Args:
        field: Field of the entries
        array: Coefficient matrix, shape (r, c)
        target: Right-hand side, shape (r,)

    Returns:
        1-D array of length c, or None
    """
    rows, cols = array.shape
    if rows == 0:
        return field.zeros(cols)
    augmented = np.hstack([array, target.reshape(-1, 1)])
    reduced, pivots = field.rref(augmented)
    if pivots and pivots[-1] == cols:
        return None
    solution = field.zeros(cols)
    for i, pivot_col in enumerate(pivots):
        solution[pivot_col] = reduced[i, cols]
    return solution


def pivot_columns(field: Field, array: np.ndarray) -> List[int]:
    """Indices of a maximal set of linearly independent columns, chosen left to right."""
    if array.size == 0:
        return []
    return field.rref(array)[1]


def rank(matrix: FieldMatrix) -> int:
    """Rank of a matrix by exact elimination."""
    return matrix.rank()


def kernel_basis(matrix: FieldMatrix) -> List[FieldMatrix]:
    """Column vectors spanning the null space; there are cols - rank of them."""
    return matrix.kernel_basis()


def in_span(vector: FieldMatrix, basis: Iterable[FieldMatrix]) -> bool:
    """True iff the column vector lies in the span of the given column vectors."""
    basis = list(basis)
    for member in basis:
        if member.field != vector.field:
            raise FieldMismatchError(vector.field.tag, member.field.tag)
        if member.shape != vector.shape:
            raise DimensionMismatchError("span membership", vector.shape, member.shape)
    if vector.cols != 1:
        raise DimensionMismatchError("span membership", 1, vector.cols)
    if vector.is_zero():
        return True
    if not basis:
        return False
    spanning = FieldMatrix.hstack(vector.field, basis, vector.rows)
    combined = FieldMatrix.hstack(vector.field, basis + [vector], vector.rows)
    return spanning.rank() == combined.rank()


def solve(matrix: FieldMatrix, target: FieldMatrix) -> Optional[FieldMatrix]:
    """A column x with matrix @ x = target, or None."""
    matrix._check(target)
    if target.rows != matrix.rows:
        raise DimensionMismatchError("linear solve", matrix.rows, target.rows)
    solution = solve_vector(matrix.field, matrix.data, target.data.ravel())
    if solution is None:
        return None
    return FieldMatrix(matrix.field, solution.reshape(-1, 1))


def inverse_matrix(matrix: FieldMatrix) -> FieldMatrix:
    """Inverse of a square invertible matrix."""
    if matrix.rows != matrix.cols:
        raise DimensionMismatchError("matrix inverse", (matrix.rows, matrix.rows), matrix.shape)
    field = matrix.field
    size = matrix.rows
    augmented = np.hstack([matrix.data, field.eye(size)])
    reduced, pivots = field.rref(augmented)
    if pivots[:size] != list(range(size)):
        raise ZeroDivisionError("matrix is singular")
    return FieldMatrix(field, reduced[:, size:].copy())
