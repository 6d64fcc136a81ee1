"""
Endomorphism Algebra Modules

This module provides the endomorphism algebra End_C(T) of a tilting
subcategory as a finite-dimensional algebra given by structure constants,
right modules over it (the category mod T), and the functor
H X = Hom_C(-, X)|_T that turns objects of C into such modules.

Modules are contravariant representations: a basis element f: a -> b acts
from V_b to V_a by a matrix of shape (dim V_a, dim V_b), and
action(f) @ action(g) == action(g o f) whenever g o f is defined.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from cluster_category import CIndec, CObject, ClusterCategory
from lab_errors import DimensionMismatchError, ModelViolation, ModuleActionError
from linear_algebra import Field, kernel_vectors, pivot_columns
from tilting_manager import TiltingSubcat

logger = logging.getLogger(__name__)


def _kron(field: Field, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    rows_l, cols_l = left.shape
    rows_r, cols_r = right.shape
    outer = np.multiply.outer(left, right).transpose(0, 2, 1, 3)
    return field.reduce(outer.reshape(rows_l * rows_r, cols_l * cols_r))


def _independent_columns(field: Field, columns: Sequence[np.ndarray], height: int) -> np.ndarray:
    """A matrix whose columns are a basis of the span of the given vectors."""
    if not columns:
        return field.zeros((height, 0))
    stacked = np.column_stack(columns)
    return stacked[:, pivot_columns(field, stacked)]


class EndoAlgebra:
    """
    A basic finite-dimensional algebra given by a basis of morphisms a -> b.

    Each vertex a carries exactly one basis element a -> a, its identity; all
    other basis elements span the radical. products[(g, f)] holds the
    coordinates of g o f for composable basis elements f: a -> b, g: b -> c.
    """

    def __init__(self, field: Field, vertex_count: int, basis: Sequence[Tuple[int, int]],
                 products: Mapping[Tuple[int, int], np.ndarray], identities: Sequence[int],
                 labels: Optional[Sequence[str]] = None):
        self.field = field
        self.vertex_count = vertex_count
        self.basis: List[Tuple[int, int]] = list(basis)
        self.identities: List[int] = list(identities)
        self.labels = list(labels) if labels else [str(a) for a in range(vertex_count)]
        self._products: Dict[Tuple[int, int], np.ndarray] = {
            key: field.array(vector) for key, vector in products.items()
        }
        self._blocks: Dict[Tuple[int, int], List[int]] = {}
        for index, (source, target) in enumerate(self.basis):
            self._blocks.setdefault((source, target), []).append(index)
        self._opposite: Optional['EndoAlgebra'] = None
        self.subcat: Optional[TiltingSubcat] = None
        self._validate()

    def _validate(self) -> None:
        if len(self.identities) != self.vertex_count:
            raise DimensionMismatchError("identity elements", self.vertex_count, len(self.identities))
        for a, index in enumerate(self.identities):
            if self.block(a, a) != [index]:
                raise ModelViolation(f"End of vertex {self.labels[a]} is not one-dimensional")

    @classmethod
    def from_subcategory(cls, subcat: TiltingSubcat) -> 'EndoAlgebra':
        """
        End_C(T) read off the composition tables of the ambient category.

        Raises:
            ModelViolation: If some End_C(T_a) is not one-dimensional
        """
        category = subcat.category
        objects = subcat.indecomposables
        basis: List[Tuple[int, int]] = []
        positions: Dict[Tuple[int, int], List[int]] = {}
        identities = []
        for a, x in enumerate(objects):
            for b, y in enumerate(objects):
                dim = category.hom_dimension(x, y)
                if a == b and dim != 1:
                    raise ModelViolation(f"End_C({x}) has dimension {dim}")
                positions[(a, b)] = list(range(len(basis), len(basis) + dim))
                basis.extend((a, b) for _ in range(dim))
                if a == b:
                    identities.append(positions[(a, b)][0])

        products = {}
        size = len(basis)
        for a, x in enumerate(objects):
            for b, y in enumerate(objects):
                if not positions[(a, b)]:
                    continue
                for c, z in enumerate(objects):
                    if not positions[(b, c)]:
                        continue
                    tensor = category.structure_constants(x, y, z)
                    for i, f in enumerate(positions[(a, b)]):
                        for l, g in enumerate(positions[(b, c)]):
                            coefficients = tensor[:, i, l]
                            if category.field.is_zero(coefficients):
                                continue
                            vector = category.field.zeros(size)
                            vector[positions[(a, c)]] = coefficients
                            products[(g, f)] = vector

        algebra = cls(category.field, len(objects), basis, products, identities,
                      labels=[str(x) for x in objects])
        algebra.subcat = subcat
        logger.debug(f"End_C({subcat.label}) has dimension {algebra.dim}")
        return algebra

    @property
    def dim(self) -> int:
        return len(self.basis)

    def block(self, source: int, target: int) -> List[int]:
        """Basis indices of the morphisms source -> target."""
        return self._blocks.get((source, target), [])

    def source(self, index: int) -> int:
        return self.basis[index][0]

    def target(self, index: int) -> int:
        return self.basis[index][1]

    def is_identity(self, index: int) -> bool:
        return index in self.identities

    def radical_elements(self) -> List[int]:
        return [i for i in range(self.dim) if not self.is_identity(i)]

    def product(self, second: int, first: int) -> np.ndarray:
        """Coordinates of second o first (zero when the ends do not meet)."""
        if self.target(first) != self.source(second):
            return self.field.zeros(self.dim)
        if self.is_identity(second) or self.is_identity(first):
            other = first if self.is_identity(second) else second
            vector = self.field.zeros(self.dim)
            vector[other] = self.field.coerce(1)
            return vector
        stored = self._products.get((second, first))
        return stored.copy() if stored is not None else self.field.zeros(self.dim)

    def multiply(self, second: np.ndarray, first: np.ndarray) -> np.ndarray:
        """Bilinear extension of product to coordinate vectors."""
        result = self.field.zeros(self.dim)
        for f in np.nonzero(first != 0)[0]:
            for g in np.nonzero(second != 0)[0]:
                scalar = self.field.reduce(np.array([first[f] * second[g]], dtype=self.field.dtype))[0]
                result = self.field.reduce(result + self.product(int(g), int(f)) * scalar)
        return result

    def unit(self, index: int) -> np.ndarray:
        vector = self.field.zeros(self.dim)
        vector[index] = self.field.coerce(1)
        return vector

    def opposite(self) -> 'EndoAlgebra':
        """The opposite algebra; basis indices are kept and every arrow reversed."""
        if self._opposite is None:
            products = {(first, second): vector for (second, first), vector in self._products.items()}
            basis = [(target, source) for source, target in self.basis]
            opposite = EndoAlgebra(self.field, self.vertex_count, basis, products, self.identities,
                                   labels=self.labels)
            opposite._opposite = self
            self._opposite = opposite
        return self._opposite

    def is_associative(self) -> bool:
        """h(gf) == (hg)f over every composable triple of basis elements."""
        for f in range(self.dim):
            for g in range(self.dim):
                if self.target(f) != self.source(g):
                    continue
                gf = self.product(g, f)
                for h in range(self.dim):
                    if self.target(g) != self.source(h):
                        continue
                    left = self.multiply(self.unit(h), gf)
                    right = self.multiply(self.product(h, g), self.unit(f))
                    if not np.array_equal(left, right):
                        logger.warning(f"associativity fails on basis triple ({h}, {g}, {f})")
                        return False
        return True

    def _radical_power(self, power: int) -> Dict[Tuple[int, int], np.ndarray]:
        """Column bases of rad^power restricted to each block."""
        radical = {}
        for a in range(self.vertex_count):
            for b in range(self.vertex_count):
                columns = [self.unit(i) for i in self.block(a, b) if not self.is_identity(i)]
                radical[(a, b)] = _independent_columns(self.field, columns, self.dim)
        current = radical
        for _ in range(power - 1):
            following = {}
            for a in range(self.vertex_count):
                for c in range(self.vertex_count):
                    columns = []
                    for b in range(self.vertex_count):
                        left, right = current[(a, b)], radical[(b, c)]
                        for i in range(left.shape[1]):
                            for l in range(right.shape[1]):
                                product = self.multiply(right[:, l], left[:, i])
                                if not self.field.is_zero(product):
                                    columns.append(product)
                    following[(a, c)] = _independent_columns(self.field, columns, self.dim)
            current = following
        return current

    def radical_power_dimension(self, power: int) -> int:
        """Total dimension of rad^power."""
        if power < 1:
            return self.dim
        return sum(block.shape[1] for block in self._radical_power(power).values())

    def arrow_counts(self) -> Dict[Tuple[int, int], int]:
        """Number of arrows a -> b of the quiver of the algebra, dim of rad / rad^2 on each block."""
        first, second = self._radical_power(1), self._radical_power(2)
        counts = {}
        for key, block in first.items():
            arrows = block.shape[1] - second[key].shape[1]
            if arrows:
                counts[key] = arrows
        return counts

    def __repr__(self) -> str:
        return f"EndoAlgebra(vertices={self.vertex_count}, dim={self.dim})"


@lru_cache(maxsize=64)
def endomorphism_algebra(subcat: TiltingSubcat) -> EndoAlgebra:
    """End_C(T), built once per subcategory."""
    return EndoAlgebra.from_subcategory(subcat)


class LambdaModule:
    """A finite-dimensional right module over an EndoAlgebra."""

    def __init__(self, algebra: EndoAlgebra, dims: Sequence[int], actions: Mapping[int, np.ndarray],
                 label: str = ""):
        if len(dims) != algebra.vertex_count:
            raise DimensionMismatchError("module dimension vector", algebra.vertex_count, len(dims))
        self.algebra = algebra
        self.field = algebra.field
        self.dims: Tuple[int, ...] = tuple(int(d) for d in dims)
        self.label = label
        self._actions: Dict[int, np.ndarray] = {}
        for index, matrix in actions.items():
            expected = (self.dims[algebra.source(index)], self.dims[algebra.target(index)])
            matrix = self.field.array(matrix, shape=expected)
            if not self.field.is_zero(matrix):
                self._actions[index] = matrix

    def action(self, index: int) -> np.ndarray:
        """Matrix of basis element index: a -> b, from V_b to V_a."""
        algebra = self.algebra
        source, target = algebra.source(index), algebra.target(index)
        if algebra.is_identity(index):
            return self.field.eye(self.dims[source])
        matrix = self._actions.get(index)
        if matrix is None:
            return self.field.zeros((self.dims[source], self.dims[target]))
        return matrix

    def acting(self, vector: np.ndarray, a: int, b: int) -> np.ndarray:
        """Matrix of an algebra element with coordinates vector, restricted to its a -> b block."""
        result = self.field.zeros((self.dims[a], self.dims[b]))
        for index in self.algebra.block(a, b):
            if vector[index] != 0:
                result = self.field.reduce(result + self.action(index) * vector[index])
        return result

    @property
    def total_dimension(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dimension == 0

    def check_axioms(self) -> None:
        """
        Confirm the action respects the structure constants.

        Raises:
            ModuleActionError: Listing every violated pair of basis elements
        """
        algebra = self.algebra
        errors = []
        for f in range(algebra.dim):
            for g in range(algebra.dim):
                if algebra.target(f) != algebra.source(g):
                    continue
                left = self.field.matmul(self.action(f), self.action(g))
                right = self.acting(algebra.product(g, f), algebra.source(f), algebra.target(g))
                if not np.array_equal(left, right):
                    errors.append(f"action({f}) @ action({g}) differs from action of their product")
        if errors:
            raise ModuleActionError(errors)

    def radical(self) -> Dict[int, np.ndarray]:
        """Column bases of (M rad)_a = sum of the images of radical elements a -> b."""
        basis = {}
        for a in range(self.algebra.vertex_count):
            columns = []
            for index in self.algebra.radical_elements():
                if self.algebra.source(index) != a:
                    continue
                image = self.action(index)
                columns.extend(image[:, j] for j in range(image.shape[1]))
            basis[a] = _independent_columns(self.field, columns, self.dims[a])
        return basis

    def top_dimensions(self) -> Tuple[int, ...]:
        radical = self.radical()
        return tuple(self.dims[a] - radical[a].shape[1] for a in range(self.algebra.vertex_count))

    def top_vectors(self) -> Dict[int, List[np.ndarray]]:
        """Vectors of M_a completing a basis of (M rad)_a; their classes span the top."""
        radical = self.radical()
        vectors = {}
        for a in range(self.algebra.vertex_count):
            known = radical[a]
            width = known.shape[1]
            stacked = np.hstack([known, self.field.eye(self.dims[a])]) if self.dims[a] else known
            chosen = [col - width for col in pivot_columns(self.field, stacked) if col >= width]
            vectors[a] = [self.field.eye(self.dims[a])[:, col] for col in chosen]
        return vectors

    def submodule(self, bases: Mapping[int, np.ndarray], label: str = "") -> 'LambdaModule':
        """
        The submodule spanned by independent columns bases[a] of each M_a.

        Raises:
            ModelViolation: If the spans are not closed under the action
        """
        algebra = self.algebra
        dims = [bases[a].shape[1] for a in range(algebra.vertex_count)]
        actions = {}
        for index in algebra.radical_elements():
            a, b = algebra.source(index), algebra.target(index)
            if not dims[a] or not dims[b]:
                continue
            image = self.field.matmul(self.action(index), bases[b])
            reduced, pivots = self.field.rref(np.hstack([bases[a], image]))
            if pivots[:dims[a]] != list(range(dims[a])) or (pivots and pivots[-1] >= dims[a]):
                raise ModelViolation(f"subspace is not closed under basis element {index}")
            actions[index] = reduced[:dims[a], dims[a]:]
        return LambdaModule(algebra, dims, actions, label=label)

    def dual(self) -> 'LambdaModule':
        """D M = Hom_k(M, k), a module over the opposite algebra."""
        actions = {index: matrix.T.copy() for index, matrix in self._actions.items()}
        label = f"D({self.label})" if self.label else ""
        return LambdaModule(self.algebra.opposite(), self.dims, actions, label=label)

    def hom_dimension(self, other: 'LambdaModule') -> int:
        """dim Hom over the algebra from this module to other."""
        if other.algebra is not self.algebra:
            raise ModelViolation("Hom between modules over different algebras")
        algebra = self.algebra
        offsets = []
        unknowns = 0
        for a in range(algebra.vertex_count):
            offsets.append(unknowns)
            unknowns += other.dims[a] * self.dims[a]
        if not unknowns:
            return 0
        equations = []
        for index in algebra.radical_elements():
            a, b = algebra.source(index), algebra.target(index)
            rows = other.dims[a] * self.dims[b]
            if not rows:
                continue
            block = self.field.zeros((rows, unknowns))
            if self.dims[a]:
                left = _kron(self.field, self.field.eye(other.dims[a]), self.action(index).T)
                block[:, offsets[a]:offsets[a] + left.shape[1]] = left
            if other.dims[b]:
                right = _kron(self.field, other.action(index), self.field.eye(self.dims[b]))
                span = slice(offsets[b], offsets[b] + right.shape[1])
                block[:, span] = self.field.reduce(block[:, span] - right)
            equations.append(block)
        if not equations:
            return unknowns
        return len(kernel_vectors(self.field, np.vstack(equations)))

    def __repr__(self) -> str:
        name = self.label or "LambdaModule"
        return f"{name}{list(self.dims)}"


def zero_module(algebra: EndoAlgebra) -> LambdaModule:
    return LambdaModule(algebra, [0] * algebra.vertex_count, {}, label="0")


def projective_module(algebra: EndoAlgebra, vertex: int) -> LambdaModule:
    """P_b: (P_b)_a spanned by the basis elements a -> b, acted on by precomposition."""
    positions = {a: algebra.block(a, vertex) for a in range(algebra.vertex_count)}
    dims = [len(positions[a]) for a in range(algebra.vertex_count)]
    actions = {}
    for index in algebra.radical_elements():
        a, b = algebra.source(index), algebra.target(index)
        if not dims[a] or not dims[b]:
            continue
        matrix = algebra.field.zeros((dims[a], dims[b]))
        for column, u in enumerate(positions[b]):
            product = algebra.product(u, index)
            matrix[:, column] = product[positions[a]]
        actions[index] = matrix
    return LambdaModule(algebra, dims, actions, label=f"P({algebra.labels[vertex]})")


def injective_module(algebra: EndoAlgebra, vertex: int) -> LambdaModule:
    """I_a = D Hom(T_a, -), the dual of a projective over the opposite algebra."""
    injective = projective_module(algebra.opposite(), vertex).dual()
    injective.label = f"I({algebra.labels[vertex]})"
    return injective


def hom_functor(algebra: EndoAlgebra, target: CObject) -> LambdaModule:
    """
    H X = Hom_C(-, X) restricted to T, acted on by precomposition.

    Args:
        algebra: End_C(T) built from a subcategory
        target: The object X

    Returns:
        LambdaModule with (H X)_a = Hom_C(T_a, X)
    """
    subcat = algebra.subcat
    if subcat is None:
        raise ModelViolation("hom_functor needs an algebra built from a subcategory")
    category: ClusterCategory = subcat.category
    category.check_object(target)
    objects = subcat.indecomposables
    bases = [category.hom_c(CObject.of(t), target) for t in objects]
    dims = [basis.dim for basis in bases]
    actions = {}
    for index in algebra.radical_elements():
        a, b = algebra.source(index), algebra.target(index)
        if not dims[a] or not dims[b]:
            continue
        local = algebra.block(a, b).index(index)
        unit = category.field.zeros(len(algebra.block(a, b)))
        unit[local] = category.field.coerce(1)
        morphism = category.indec_morphism(objects[a], objects[b], unit)
        matrix = category.field.zeros((dims[a], dims[b]))
        for column, element in enumerate(bases[b].elements()):
            matrix[:, column] = bases[a].vector(category.compose_c(element, morphism))
        actions[index] = matrix
    return LambdaModule(algebra, dims, actions, label=f"H({target})")


def indecomposable_probes(algebra: EndoAlgebra) -> List[LambdaModule]:
    """H X for every indecomposable X of the ambient category with H X nonzero."""
    category = algebra.subcat.category
    probes = []
    for x in category.indecomposables:
        module = hom_functor(algebra, CObject.of(x))
        if not module.is_zero():
            probes.append(module)
    return probes


def module_iso_invariant(module: LambdaModule, probes: Sequence[LambdaModule]) -> Tuple[int, ...]:
    """dim Hom(P, M) for each probe P; with all indecomposables as probes this decides isomorphism."""
    return tuple(probe.hom_dimension(module) for probe in probes)


def modules_isomorphic(first: LambdaModule, second: LambdaModule, probes: Sequence[LambdaModule]) -> bool:
    if first.dims != second.dims:
        return False
    return module_iso_invariant(first, probes) == module_iso_invariant(second, probes)
