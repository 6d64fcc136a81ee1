"""
Representations of the Linear A_n Quiver

Vertices are 1..n and arrows run i -> i+1. This module provides interval
modules, general representations, Hom and Ext^1 spaces, Krull-Schmidt
decomposition, minimal projective resolutions and the AR translate.

With this orientation P_i = M[i,n], I_i = M[1,i] and S_i = M[i,i].
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from lab_errors import DimensionMismatchError, FieldMismatchError, ModelViolation
from linear_algebra import (
    Field,
    FieldMatrix,
    inverse_matrix,
    kernel_vectors,
    pivot_columns,
    solve_vector,
)

logger = logging.getLogger(__name__)

PROJECTIVE = "projective"
INJECTIVE = "injective"

Intertwiner = Tuple[FieldMatrix, ...]


@dataclass(frozen=True, order=True)
class IntervalModule:
    """The indecomposable M[a,b]: k at vertices a..b, identity maps between them."""

    a: int
    b: int
    rank: int

    def __post_init__(self):
        if not 1 <= self.a <= self.b <= self.rank:
            raise DimensionMismatchError("interval", f"1 <= a <= b <= {self.rank}", (self.a, self.b))

    @classmethod
    def projective(cls, vertex: int, rank: int) -> 'IntervalModule':
        return cls(vertex, rank, rank)

    @classmethod
    def injective(cls, vertex: int, rank: int) -> 'IntervalModule':
        return cls(1, vertex, rank)

    @classmethod
    def simple(cls, vertex: int, rank: int) -> 'IntervalModule':
        return cls(vertex, vertex, rank)

    @property
    def is_projective(self) -> bool:
        return self.b == self.rank

    @property
    def is_injective(self) -> bool:
        return self.a == 1

    def dimension_vector(self) -> Tuple[int, ...]:
        return tuple(1 if self.a <= v <= self.b else 0 for v in range(1, self.rank + 1))

    def dual(self) -> 'IntervalModule':
        """The interval of D(M) after relabelling vertices v -> n+1-v."""
        return IntervalModule(self.rank + 1 - self.b, self.rank + 1 - self.a, self.rank)

    def representation(self, field: Field) -> 'Representation':
        dims = self.dimension_vector()
        maps = []
        for v in range(1, self.rank):
            if self.a <= v and v + 1 <= self.b:
                maps.append(FieldMatrix.identity(field, 1))
            else:
                maps.append(FieldMatrix.zeros(field, dims[v], dims[v - 1]))
        return Representation(self.rank, dims, maps, field)

    def __str__(self) -> str:
        return f"M[{self.a},{self.b}]"


def all_intervals(rank: int) -> List[IntervalModule]:
    """Every indecomposable of mod kA_n, ordered by (a, b)."""
    return [IntervalModule(a, b, rank) for a in range(1, rank + 1) for b in range(a, rank + 1)]


class Representation:
    """
    A representation of linear A_n.

    maps[k] is the matrix of the arrow k+1 -> k+2 and has shape
    dims[k+1] x dims[k] (vertices are 1-based, lists are 0-based).
    """

    def __init__(self, rank: int, dims: Sequence[int], maps: Sequence[FieldMatrix], field: Field):
        if len(dims) != rank:
            raise DimensionMismatchError("dimension vector length", rank, len(dims))
        if len(maps) != max(rank - 1, 0):
            raise DimensionMismatchError("arrow count", rank - 1, len(maps))
        for k, matrix in enumerate(maps):
            if matrix.field != field:
                raise FieldMismatchError(field.tag, matrix.field.tag)
            if matrix.shape != (dims[k + 1], dims[k]):
                raise DimensionMismatchError(
                    f"map of arrow {k + 1}->{k + 2}", (dims[k + 1], dims[k]), matrix.shape
                )
        self.rank = rank
        self.dims = tuple(dims)
        self.maps = tuple(maps)
        self.field = field

    def dim(self, vertex: int) -> int:
        return self.dims[vertex - 1]

    @property
    def total_dimension(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dimension == 0

    def path_map(self, source: int, target: int) -> FieldMatrix:
        """Composite of the arrows from vertex source to vertex target (source <= target)."""
        result = FieldMatrix.identity(self.field, self.dim(source))
        for v in range(source, target):
            result = self.maps[v - 1] @ result
        return result

    @classmethod
    def zero(cls, rank: int, field: Field) -> 'Representation':
        return cls(rank, [0] * rank, [FieldMatrix.zeros(field, 0, 0) for _ in range(rank - 1)], field)

    @classmethod
    def direct_sum(cls, summands: Sequence['Representation'], rank: int, field: Field) -> 'Representation':
        """Block-diagonal direct sum."""
        if not summands:
            return cls.zero(rank, field)
        dims = [sum(s.dim(v) for s in summands) for v in range(1, rank + 1)]
        maps = []
        for k in range(rank - 1):
            block = field.zeros((dims[k + 1], dims[k]))
            row = col = 0
            for s in summands:
                r, c = s.maps[k].shape
                if r and c:
                    block[row:row + r, col:col + c] = s.maps[k].data
                row += r
                col += c
            maps.append(FieldMatrix(field, block))
        return cls(rank, dims, maps, field)

    def conjugated(self, bases: Sequence[FieldMatrix]) -> 'Representation':
        """The isomorphic representation with maps g_{k+1} M_k g_k^{-1}."""
        inverses = [inverse_matrix(g) for g in bases]
        maps = [bases[k + 1] @ self.maps[k] @ inverses[k] for k in range(self.rank - 1)]
        return Representation(self.rank, self.dims, maps, self.field)

    def dual(self) -> 'Representation':
        """D(M) with vertices relabelled v -> n+1-v, again a linear A_n representation."""
        n = self.rank
        dims = [self.dims[n - v] for v in range(1, n + 1)]
        maps = [self.maps[n - v - 1].transpose() for v in range(1, n)]
        return Representation(n, dims, maps, self.field)

    def __repr__(self) -> str:
        return f"Representation(rank={self.rank}, dims={self.dims}, field={self.field.tag})"


def _check_pair(left: Representation, right: Representation) -> None:
    if left.rank != right.rank:
        raise DimensionMismatchError("quiver rank", left.rank, right.rank)
    if left.field != right.field:
        raise FieldMismatchError(left.field.tag, right.field.tag)


def hom_basis(source: Representation, target: Representation) -> List[Intertwiner]:
    """
    Basis of Hom(M, N) as solutions of N_arrow f_i = f_{i+1} M_arrow.

    Args:
        source: The representation M
        target: The representation N

    Returns:
        List of intertwiners, each a tuple of per-vertex matrices dims_N[v] x dims_M[v]
    """
    _check_pair(source, target)
    field = source.field
    n = source.rank
    offsets = [0]
    for v in range(n):
        offsets.append(offsets[-1] + target.dims[v] * source.dims[v])
    unknowns = offsets[-1]
    if unknowns == 0:
        return []

    def index(v: int, r: int, c: int) -> int:
        return offsets[v] + r * source.dims[v] + c

    equations = []
    for k in range(n - 1):
        arrow_m = source.maps[k].data
        arrow_n = target.maps[k].data
        for r in range(target.dims[k + 1]):
            for c in range(source.dims[k]):
                row = field.zeros(unknowns)
                for s in range(target.dims[k]):
                    row[index(k, s, c)] = field.reduce(row[index(k, s, c)] + arrow_n[r, s])
                for t in range(source.dims[k + 1]):
                    row[index(k + 1, r, t)] = field.reduce(row[index(k + 1, r, t)] - arrow_m[t, c])
                equations.append(row)
    if equations:
        vectors = kernel_vectors(field, np.vstack(equations))
    else:
        vectors = [field.eye(unknowns)[i] for i in range(unknowns)]

    basis = []
    for vector in vectors:
        blocks = []
        for v in range(n):
            chunk = vector[offsets[v]:offsets[v + 1]]
            blocks.append(FieldMatrix(field, chunk.reshape(target.dims[v], source.dims[v]).copy()))
        basis.append(tuple(blocks))
    return basis


@dataclass
class ProjectiveResolution:
    """
    Minimal resolution 0 -> P1 -> P0 -> M -> 0.

    p0 and p1 list the vertex labels of the indecomposable projective summands in
    ascending order. differential[s, t] is the scalar of the inclusion
    P_{p1[t]} -> P_{p0[s]}; cover[v-1] maps (P0)_v onto M_v.
    """

    module: Representation
    p0: Tuple[int, ...]
    p1: Tuple[int, ...]
    differential: FieldMatrix
    cover: Tuple[FieldMatrix, ...]

    @property
    def is_projective(self) -> bool:
        return not self.p1


def _complement_columns(field: Field, existing: np.ndarray, candidates: np.ndarray) -> List[int]:
    """Indices of candidate columns extending the span of existing to the span of both."""
    width = existing.shape[1]
    stacked = np.hstack([existing, candidates]) if width else candidates
    return [col - width for col in pivot_columns(field, stacked) if col >= width]


def projective_resolution(module: Representation) -> ProjectiveResolution:
    """Minimal projective resolution of a representation of linear A_n."""
    field = module.field
    n = module.rank
    generators: List[Tuple[int, np.ndarray]] = []
    for v in range(1, n + 1):
        size = module.dim(v)
        if size == 0:
            continue
        if v > 1:
            image = module.maps[v - 2].data
        else:
            image = field.zeros((size, 0))
        identity = field.eye(size)
        for col in _complement_columns(field, image, identity):
            generators.append((v, identity[:, col].copy()))
    p0 = tuple(label for label, _ in generators)

    cover = []
    for v in range(1, n + 1):
        columns = [
            module.path_map(label, v).data @ vector
            for label, vector in generators if label <= v
        ]
        if columns:
            cover.append(FieldMatrix(field, field.reduce(np.column_stack(columns))))
        else:
            cover.append(FieldMatrix.zeros(field, module.dim(v), 0))

    p1_labels: List[int] = []
    p1_columns: List[np.ndarray] = []
    previous = field.zeros((0, 0))
    for v in range(1, n + 1):
        width = cover[v - 1].cols
        kernel = kernel_vectors(field, cover[v - 1].data) if width else []
        current = np.column_stack(kernel) if kernel else field.zeros((width, 0))
        padded = field.zeros((width, previous.shape[1]))
        if previous.shape[1]:
            padded[:previous.shape[0], :] = previous
        for col in _complement_columns(field, padded, current):
            column = field.zeros(len(p0))
            column[:width] = current[:, col]
            p1_labels.append(v)
            p1_columns.append(column)
        previous = current

    if p1_columns:
        differential = FieldMatrix(field, np.column_stack(p1_columns))
    else:
        differential = FieldMatrix.zeros(field, len(p0), 0)
    return ProjectiveResolution(module, p0, tuple(p1_labels), differential, tuple(cover))


def ext1_basis(source: Representation, target: Representation) -> List[FieldMatrix]:
    """
    Basis of Ext^1(M, N) from the minimal resolution of M.

    Ext^1 is the cokernel of Hom(P0, N) -> Hom(P1, N); the returned column
    vectors live in Hom(P1, N) = direct sum of N_v over the summands P_v of P1
    and represent a basis of that cokernel.
    """
    _check_pair(source, target)
    field = source.field
    resolution = projective_resolution(source)
    p0, p1 = resolution.p0, resolution.p1
    d = resolution.differential.data
    col_offsets = np.cumsum([0] + [target.dim(label) for label in p0])
    row_offsets = np.cumsum([0] + [target.dim(label) for label in p1])
    total_rows, total_cols = int(row_offsets[-1]), int(col_offsets[-1])
    if total_rows == 0:
        return []
    induced = field.zeros((total_rows, total_cols))
    for t, label_t in enumerate(p1):
        for s, label_s in enumerate(p0):
            if d[s, t] == 0:
                continue
            path = target.path_map(label_s, label_t).data
            block = field.reduce(path * d[s, t])
            induced[row_offsets[t]:row_offsets[t + 1], col_offsets[s]:col_offsets[s + 1]] = field.reduce(
                induced[row_offsets[t]:row_offsets[t + 1], col_offsets[s]:col_offsets[s + 1]] + block
            )
    identity = field.eye(total_rows)
    chosen = _complement_columns(field, induced, identity)
    return [FieldMatrix(field, identity[:, col].reshape(-1, 1).copy()) for col in chosen]


def interval_multiplicities(rank: int, rank_function: Callable[[int, int], int]) -> Counter:
    """
    Multiplicities of intervals from the ranks r(a, b) of the maps M_a -> M_b.

    r(a, a) must be dim M_a. An interval [c, d] contributes to r(a, b) exactly
    when c <= a and b <= d, so inclusion-exclusion recovers each multiplicity.
    """
    cache: Dict[Tuple[int, int], int] = {}

    def r(a: int, b: int) -> int:
        if a < 1 or b > rank:
            return 0
        if (a, b) not in cache:
            cache[(a, b)] = rank_function(a, b)
        return cache[(a, b)]

    counts: Counter = Counter()
    for a in range(1, rank + 1):
        for b in range(a, rank + 1):
            multiplicity = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1)
            if multiplicity < 0:
                raise ModelViolation(f"negative multiplicity {multiplicity} for interval [{a},{b}]")
            if multiplicity:
                counts[IntervalModule(a, b, rank)] = multiplicity
    return counts


def decompose(module: Representation, verify: bool = True) -> List[IntervalModule]:
    """
    Krull-Schmidt decomposition into interval modules.

    Args:
        module: Any representation of linear A_n
        verify: Re-check dimension vector and dim End against the direct sum

    Returns:
        Sorted list of intervals, repeated by multiplicity
    """
    counts = interval_multiplicities(
        module.rank,
        lambda a, b: module.dim(a) if a == b else module.path_map(a, b).rank(),
    )
    summands = sorted(counts.elements())
    if verify:
        dims = tuple(sum(s.dimension_vector()[v] for s in summands) for v in range(module.rank))
        if dims != module.dims:
            raise ModelViolation(f"decomposition dimension vector {dims} differs from {module.dims}")
        rebuilt = Representation.direct_sum(
            [s.representation(module.field) for s in summands], module.rank, module.field
        )
        if len(hom_basis(module, module)) != len(hom_basis(rebuilt, rebuilt)):
            raise ModelViolation("decomposition changes the endomorphism dimension")
    return summands


def nakayama_kernel(module: Representation) -> Representation:
    """ker(nu P1 -> nu P0) for the minimal resolution of the module, i.e. tau M."""
    field = module.field
    n = module.rank
    resolution = projective_resolution(module)
    p0, p1 = resolution.p0, resolution.p1
    d = resolution.differential
    kernels: List[np.ndarray] = []
    for v in range(1, n + 1):
        rows = [s for s, label in enumerate(p0) if label >= v]
        cols = [t for t, label in enumerate(p1) if label >= v]
        local = d.submatrix(rows, cols)
        vectors = kernel_vectors(field, local.data) if cols else []
        kernels.append(np.column_stack(vectors) if vectors else field.zeros((len(cols), 0)))
    maps = []
    for v in range(1, n):
        cols_here = [t for t, label in enumerate(p1) if label >= v]
        keep = [i for i, t in enumerate(cols_here) if p1[t] >= v + 1]
        source, target = kernels[v - 1], kernels[v]
        block = field.zeros((target.shape[1], source.shape[1]))
        for j in range(source.shape[1]):
            projected = source[keep, j]
            coordinates = solve_vector(field, target, projected)
            if coordinates is None:
                raise ModelViolation("Nakayama kernel is not closed under the arrow maps")
            block[:, j] = coordinates
        maps.append(FieldMatrix(field, block))
    dims = [kernel.shape[1] for kernel in kernels]
    return Representation(n, dims, maps, field)


def tau(module: IntervalModule, field: Field) -> Union[IntervalModule, str]:
    """AR translate of an interval; PROJECTIVE when the interval is projective."""
    if module.is_projective:
        return PROJECTIVE
    pieces = decompose(nakayama_kernel(module.representation(field)), verify=False)
    if len(pieces) != 1:
        raise ModelViolation(f"tau of {module} decomposed into {len(pieces)} pieces")
    return pieces[0]


def tau_inverse(module: IntervalModule, field: Field) -> Union[IntervalModule, str]:
    """Inverse AR translate, computed as D tau D; INJECTIVE when the interval is injective."""
    if module.is_injective:
        return INJECTIVE
    translated = tau(module.dual(), field)
    if translated == PROJECTIVE:
        raise ModelViolation(f"dual of non-injective {module} is projective")
    return translated.dual()


def hom_dimension(source: IntervalModule, target: IntervalModule, field: Field) -> int:
    return len(hom_basis(source.representation(field), target.representation(field)))


def ext1_dimension(source: IntervalModule, target: IntervalModule, field: Field) -> int:
    return len(ext1_basis(source.representation(field), target.representation(field)))
