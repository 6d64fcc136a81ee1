"""
Tilting Subcategory Manager

This module provides rigid and cluster-tilting subcategories T of a built
cluster category: their rigidity and strength profiles, enumeration from
angulations or by maximal-clique search, right T-approximations, syzygy
sequences, membership in star products T[s] * ... * T[e], and the reduction
X -> X-bar that strips summands lying in T[1].
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from cluster_category import CIndec, CMorphism, CObject, CTriangle, ClusterCategory
from lab_errors import ModelViolation, NonContiguousWindow
from polygon_oracle import Angulation, polygon_model

logger = logging.getLogger(__name__)


class TiltingSubcat:
    """
    The additive closure of a finite set of indecomposables of C.

    rigidity is the largest n with Hom(T, T[i]) = 0 for 0 < i < n;
    strength is the largest s with Hom(T[i], T) = 0 for 0 < i < s, scanned up
    to strength_bound (strength_capped is set when the scan ran out).
    """

    def __init__(self, category: ClusterCategory, indecomposables: Iterable[CIndec], label: str = ""):
        self.category = category
        self.indecomposables: List[CIndec] = sorted(set(indecomposables))
        for x in self.indecomposables:
            category.check_indec(x)
        self.label = label or "{" + ", ".join(str(x) for x in self.indecomposables) + "}"
        self.members = frozenset(self.indecomposables)
        self.strength_bound = 2 * category.orbit + 2
        self.rigidity = self._rigidity()
        self.strength, self.strength_capped = self._strength()

    def _rigidity(self) -> int:
        bound = self.category.orbit + 1
        for i in range(1, bound + 1):
            if any(self.category.ext_dimension(t, u, i) for t in self.indecomposables for u in self.indecomposables):
                return i
        return bound + 1

    def _strength(self) -> Tuple[int, bool]:
        category = self.category
        for i in range(1, self.strength_bound + 1):
            if any(category.hom_dimension(category.shift_indec(t, i), u)
                   for t in self.indecomposables for u in self.indecomposables):
                return i, False
        return self.strength_bound + 1, True

    @property
    def object(self) -> CObject:
        return CObject(tuple(self.indecomposables))

    def __len__(self) -> int:
        return len(self.indecomposables)

    def contains(self, indec: CIndec) -> bool:
        return indec in self.members

    def in_add(self, obj: CObject) -> bool:
        return all(x in self.members for x in obj.summands)

    def shifted(self, steps: int) -> List[CIndec]:
        return sorted({self.category.shift_indec(t, steps) for t in self.indecomposables})

    def is_rigid(self, order: int = 2) -> bool:
        return self.rigidity >= order

    def __repr__(self) -> str:
        return f"TiltingSubcat({self.label}, rigidity={self.rigidity}, strength={self.strength})"


@dataclass
class ProfileReport:
    """Outcome of an exhaustive rigidity / strength / maximality scan."""

    order: int
    strength: int
    rigid: bool
    strong: bool
    maximal: bool
    witness: Optional[str] = None

    @property
    def cluster_tilting(self) -> bool:
        return self.rigid and self.maximal


def _vanishes_against(subcat: TiltingSubcat, indec: CIndec, order: int) -> Tuple[bool, bool]:
    """(Hom(T, X[i]) = 0 and Hom(X, T[i]) = 0) for all 0 < i < order, reported separately."""
    category = subcat.category
    left = all(not category.ext_dimension(t, indec, i)
               for t in subcat.indecomposables for i in range(1, order))
    right = all(not category.ext_dimension(indec, t, i)
                for t in subcat.indecomposables for i in range(1, order))
    return left, right


def verify_profiles(subcat: TiltingSubcat, order: int = 2, strength: int = 1) -> ProfileReport:
    """
    Exhaustively confirm order-rigidity, strength and order-cluster-tilting maximality.

    Args:
        subcat: The subcategory to scan
        order: n of n-rigidity and n-cluster-tilting
        strength: s of s-strength

    Returns:
        ProfileReport with the first indecomposable breaking maximality as witness
    """
    rigid = subcat.rigidity >= order
    strong = subcat.strength >= strength
    maximal = True
    witness = None
    for x in subcat.category.indecomposables:
        if subcat.contains(x):
            continue
        left, right = _vanishes_against(subcat, x, order)
        if left or right:
            maximal = False
            witness = str(x)
            break
    return ProfileReport(order, strength, rigid, strong, maximal, witness)


def subcat_from_angulation(category: ClusterCategory, angulation: Angulation) -> TiltingSubcat:
    """The subcategory whose indecomposables correspond to the arcs of an angulation."""
    objects = polygon_model(category).objects_of(angulation)
    return TiltingSubcat(category, objects, label=str(angulation))


def compatibility_graph(category: ClusterCategory, order: int) -> nx.Graph:
    """Graph on order-rigid indecomposables, joined when the pair is order-rigid."""
    graph = nx.Graph()
    rigid = [x for x in category.indecomposables
             if all(not category.ext_dimension(x, x, i) for i in range(1, order))]
    graph.add_nodes_from(rigid)
    for position, x in enumerate(rigid):
        for y in rigid[position + 1:]:
            if all(not category.ext_dimension(x, y, i) and not category.ext_dimension(y, x, i)
                   for i in range(1, order)):
                graph.add_edge(x, y)
    return graph


def higher_cluster_tilting(category: ClusterCategory, order: Optional[int] = None) -> List[TiltingSubcat]:
    """
    Every order-cluster-tilting subcategory, found as verified maximal cliques.

    The default order is m + 1.
    """
    order = category.orbit + 1 if order is None else order
    graph = compatibility_graph(category, order)
    found = []
    for clique in nx.find_cliques(graph):
        candidate = TiltingSubcat(category, clique)
        if verify_profiles(candidate, order).cluster_tilting:
            found.append(candidate)
    found.sort(key=lambda t: t.indecomposables)
    logger.info(f"{len(found)} {order}-cluster-tilting subcategories for A_{category.rank}, m={category.orbit}")
    return found


@dataclass
class Approximation:
    """A right T-approximation g: T_0 -> X, one basis map per summand of T_0."""

    target: CObject
    source: CObject
    morphism: CMorphism
    canonical_size: int


def _postcomposition_columns(subcat: TiltingSubcat, target: CObject,
                             copies: Sequence[Tuple[CIndec, CMorphism]]) -> Dict[CIndec, List[List[np.ndarray]]]:
    """For each probe T_c and copy p, the images of the basis of Hom(T_c, t_p) in Hom(T_c, X)."""
    category = subcat.category
    columns: Dict[CIndec, List[List[np.ndarray]]] = {}
    for probe in subcat.indecomposables:
        probe_basis = category.hom_c(CObject.of(probe), target)
        per_copy = []
        for t, component in copies:
            images = []
            for l in range(category.hom_dimension(probe, t)):
                unit = category.field.zeros(category.hom_dimension(probe, t))
                unit[l] = category.field.coerce(1)
                precomposed = category.compose_c(component, category.indec_morphism(probe, t, unit))
                images.append(probe_basis.vector(precomposed))
            per_copy.append(images)
        columns[probe] = per_copy
    return columns


def is_epi_on_T(subcat: TiltingSubcat, target: CObject, columns: Dict[CIndec, List[List[np.ndarray]]],
                selected: Sequence[int]) -> bool:
    """H of the approximation restricted to the selected copies is surjective."""
    category = subcat.category
    for probe, per_copy in columns.items():
        needed = category.object_hom_dimension(CObject.of(probe), target)
        if not needed:
            continue
        vectors = [column for p in selected for column in per_copy[p]]
        if not vectors or category.field.rank(np.column_stack(vectors)) != needed:
            return False
    return True


def right_approximation(subcat: TiltingSubcat, target: CObject, minimal: bool = True) -> Approximation:
    """
    Right T-approximation of X.

    Starts from one copy of T_a per basis element of Hom_C(T_a, X) and, when
    minimal is set, drops copies while H of the map stays epi.
    """
    category = subcat.category
    category.check_object(target)
    copies: List[Tuple[CIndec, CMorphism]] = []
    for t in subcat.indecomposables:
        basis = category.hom_c(CObject.of(t), target)
        copies.extend((t, basis.element(i)) for i in range(basis.dim))
    columns = _postcomposition_columns(subcat, target, copies)
    selected = list(range(len(copies)))
    if not is_epi_on_T(subcat, target, columns, selected):
        raise ModelViolation(f"canonical approximation of {target} is not epi on T")
    if minimal:
        for p in range(len(copies)):
            trial = [q for q in selected if q != p]
            if is_epi_on_T(subcat, target, columns, trial):
                selected = trial
    kept = [copies[p] for p in selected]
    source = CObject(tuple(t for t, _ in kept))
    blocks = {}
    for p, (_, component) in enumerate(kept):
        for (_, q), vector in component.blocks.items():
            blocks[(p, q)] = vector
    morphism = CMorphism(source, target, blocks, category.field)
    return Approximation(target, source, morphism, len(copies))


@dataclass
class SyzygySequence:
    """Triangles Omega^{i+1} X -> T_i -> Omega^i X -> Omega^{i+1} X [1] for i < depth."""

    start: CObject
    objects: List[CObject] = field(default_factory=list)
    approximations: List[Approximation] = field(default_factory=list)
    triangles: List[Optional[CTriangle]] = field(default_factory=list)

    def omega(self, index: int) -> CObject:
        return self.objects[index]

    @property
    def depth(self) -> int:
        return len(self.objects) - 1


def syzygy(subcat: TiltingSubcat, target: CObject, depth: int) -> SyzygySequence:
    """Omega^1 X .. Omega^depth X from minimal approximations and their cones."""
    if depth < 1:
        raise ValueError("syzygy depth must be at least 1")
    category = subcat.category
    sequence = SyzygySequence(start=target, objects=[target])
    current = target
    for _ in range(depth):
        if current.is_zero():
            sequence.approximations.append(Approximation(current, current, category.zero_morphism(current, current), 0))
            sequence.triangles.append(None)
            sequence.objects.append(current)
            continue
        approximation = right_approximation(subcat, current)
        triangle = category.complete_triangle(approximation.morphism)
        current = category.shift(triangle.cone, -1)
        sequence.approximations.append(approximation)
        sequence.triangles.append(triangle)
        sequence.objects.append(current)
    return sequence


def _check_window(strata: Sequence[int]) -> Tuple[int, int]:
    strata = list(strata)
    if not strata or strata != list(range(strata[0], strata[0] + len(strata))):
        raise NonContiguousWindow(strata)
    return strata[0], strata[-1]


def star_membership(subcat: TiltingSubcat, target: CObject, strata: Sequence[int]) -> bool:
    """
    Whether X lies in T[s] * T[s+1] * ... * T[e].

    The window is moved to start at 0; then X is peeled by minimal right
    T-approximations, each cone shifted by -1 moving one stratum down.

    Raises:
        NonContiguousWindow: If strata is not an increasing run of consecutive shifts
    """
    start, end = _check_window(strata)
    category = subcat.category
    if start >= 1 and subcat.rigidity >= end + 1:
        # Hom(T, -) vanishes on T[1] * ... * T[end] for (end+1)-rigid T
        if any(category.hom_dimension(t, x) for t in subcat.indecomposables for x in target.summands):
            return False
    current = category.shift(category.check_object(target), -start)
    for remaining in range(end - start, -1, -1):
        if current.is_zero():
            return True
        if remaining == 0:
            return subcat.in_add(current)
        approximation = right_approximation(subcat, current)
        cone = category.complete_triangle(approximation.morphism).cone
        current = category.shift(cone, -1)
    return current.is_zero()


def summands_in_window(subcat: TiltingSubcat, target: CObject, strata: Sequence[int]) -> List[CIndec]:
    """Indecomposable summands of X lying in the given star product."""
    return [x for x in target.distinct() if star_membership(subcat, CObject.of(x), strata)]


def strip_shifted_summands(subcat: TiltingSubcat, target: CObject) -> CObject:
    """X-bar: X without its indecomposable summands in T[1]."""
    return target.without(subcat.shifted(1))
