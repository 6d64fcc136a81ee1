"""
Factorization Ideal Manager

This module provides the ideals I_M(X, Y) of morphisms X -> Y factoring
through an object M, with certified witnesses, their vanishing over strata of
objects, and the shift-propagation checks relating ideals along a syzygy
sequence.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from cluster_category import CIndec, CMorphism, CObject, ClusterCategory
from lab_errors import ModelViolation, ProfileInsufficient
from tilting_manager import SyzygySequence, TiltingSubcat, star_membership

logger = logging.getLogger(__name__)


@dataclass
class IdealCell:
    """dim I_M(X, Y) with a pair (alpha, beta) such that beta o alpha != 0 when positive."""

    source: CObject
    middle: CObject
    target: CObject
    dimension: int
    witness: Optional[Tuple[CMorphism, CMorphism]] = None

    @property
    def vanishes(self) -> bool:
        return self.dimension == 0

    def describe(self) -> str:
        text = f"I_{self.middle}({self.source}, {self.target}) has dimension {self.dimension}"
        if self.witness is not None:
            alpha, beta = self.witness
            text += f"; witness {alpha} then {beta}"
        return text


def _indec_cell(category: ClusterCategory, x: CIndec, middle: Sequence[CIndec],
                y: CIndec) -> Tuple[int, Optional[Tuple[CIndec, int, int]]]:
    """Rank of the composition pairing through the distinct summands of M, and a first nonzero (m, i, l)."""
    columns: List[np.ndarray] = []
    first = None
    for m in middle:
        if not category.hom_dimension(x, m) or not category.hom_dimension(m, y):
            continue
        tensor = category.structure_constants(x, m, y)
        for i in range(tensor.shape[1]):
            for l in range(tensor.shape[2]):
                column = tensor[:, i, l]
                if category.field.is_zero(column):
                    continue
                columns.append(column)
                if first is None:
                    first = (m, i, l)
    if not columns:
        return 0, None
    return category.field.rank(np.column_stack(columns)), first


def ideal_cell(category: ClusterCategory, source: CObject, middle: CObject, target: CObject) -> IdealCell:
    """
    Exact dimension of I_M(X, Y), the image of Hom(M, Y) x Hom(X, M) -> Hom(X, Y).

    The ideal is additive in X and Y, so the dimension is summed over pairs of
    summand positions; only distinct summands of M matter.

    Raises:
        ForeignObjectError: If an object is not in the category
        ModelViolation: If a witness fails to re-verify
    """
    for obj in (source, middle, target):
        category.check_object(obj)
    distinct = middle.distinct()
    total = 0
    witness = None
    for p, x in enumerate(source.summands):
        for q, y in enumerate(target.summands):
            dimension, first = _indec_cell(category, x, distinct, y)
            total += dimension
            if witness is None and first is not None:
                witness = _witness(category, source, middle, target, p, q, first)
    return IdealCell(source, middle, target, total, witness)


def _witness(category: ClusterCategory, source: CObject, middle: CObject, target: CObject,
             p: int, q: int, first: Tuple[CIndec, int, int]) -> Tuple[CMorphism, CMorphism]:
    m, i, l = first
    x, y = source.summands[p], target.summands[q]
    r = middle.summands.index(m)
    field = category.field
    alpha_vector = field.zeros(category.hom_dimension(x, m))
    alpha_vector[i] = field.coerce(1)
    beta_vector = field.zeros(category.hom_dimension(m, y))
    beta_vector[l] = field.coerce(1)
    alpha = CMorphism(source, middle, {(p, r): alpha_vector}, field)
    beta = CMorphism(middle, target, {(r, q): beta_vector}, field)
    if category.compose_c(beta, alpha).is_zero():
        raise ModelViolation(f"ideal witness through {m} composes to zero")
    return alpha, beta


@dataclass
class IdealVanishing:
    """Whether I_M(D, E) = 0 over two strata, with the first nonzero cell."""

    vanishes: bool
    vacuous: bool
    cells_checked: int
    worst: Optional[IdealCell] = None
    dimension: int = 0


def ideal_vanishes(category: ClusterCategory, middle: CObject, sources: Iterable[CIndec],
                   targets: Iterable[CIndec], exhaustive: bool = False) -> IdealVanishing:
    """
    I_M(D, E) = 0, checked cell by cell over indecomposables in lexicographic order.

    An empty stratum gives a vacuous True with the vacuous flag set. Without
    exhaustive the scan stops at the first nonzero cell; with it, dimension
    is the sum over all cells.
    """
    sources, targets = sorted(set(sources)), sorted(set(targets))
    if not sources or not targets:
        return IdealVanishing(True, True, 0)
    checked = 0
    dimension = 0
    worst = None
    for x in sources:
        for y in targets:
            cell = ideal_cell(category, CObject.of(x), middle, CObject.of(y))
            checked += 1
            if cell.vanishes:
                continue
            dimension += cell.dimension
            worst = worst or cell
            if not exhaustive:
                return IdealVanishing(False, False, checked, worst, dimension)
    return IdealVanishing(worst is None, False, checked, worst, dimension)


@lru_cache(maxsize=256)
def stratum(subcat: TiltingSubcat, strata: Tuple[int, ...]) -> Tuple[CIndec, ...]:
    """Indecomposables of C lying in T[s] * ... * T[e]."""
    category = subcat.category
    return tuple(x for x in category.indecomposables if star_membership(subcat, CObject.of(x), strata))


def shifted_stratum(category: ClusterCategory, objects: Iterable[CIndec], steps: int) -> List[CIndec]:
    return sorted({category.shift_indec(x, steps) for x in objects})


def ideal_over_stratum(subcat: TiltingSubcat, middle: CObject, strata: Sequence[int]) -> IdealVanishing:
    """I_M(T[s] * ... * T[e]) = 0."""
    members = stratum(subcat, tuple(strata))
    return ideal_vanishes(subcat.category, middle, members, members)


@dataclass
class PropagationReport:
    """Premise and conclusion of one shift-propagation implication."""

    part: str
    k: int
    i: int
    premise: bool
    conclusion: bool
    premise_vacuous: bool
    witness: Optional[IdealCell] = None

    @property
    def holds(self) -> bool:
        return not self.premise or self.conclusion


def shift_propagation_check(subcat: TiltingSubcat, sequence: SyzygySequence, stratum_objects: Sequence[CIndec],
                            k: int, i: int, part: str = "a") -> PropagationReport:
    """
    Evaluate one instance of shift propagation along a syzygy sequence.

    part 'a' (T n-rigid, 0 <= k < n - 1):
        I_{Omega^{i+1} X}(D, T[k]) = 0  implies  I_{Omega^i X}(D[1], T[k+1]) = 0
    part 'b' (T m-strong, 0 < k <= m - 1):
        I_{Omega^i X}(T[k+1], D[1]) = 0  implies  I_{Omega^{i+1} X}(T[k], D) = 0

    Raises:
        ProfileInsufficient: If the rigidity or strength of T does not cover k
    """
    category = subcat.category
    if i + 1 > sequence.depth:
        raise ValueError(f"syzygy sequence of depth {sequence.depth} has no Omega^{i + 1}")
    shifted = shifted_stratum(category, stratum_objects, 1)
    lower, upper = subcat.shifted(k), subcat.shifted(k + 1)
    if part == "a":
        if not 0 <= k < subcat.rigidity - 1:
            raise ProfileInsufficient("rigidity", subcat.rigidity, k + 2)
        premise = ideal_vanishes(category, sequence.omega(i + 1), stratum_objects, lower)
        conclusion = ideal_vanishes(category, sequence.omega(i), shifted, upper)
    elif part == "b":
        if not 0 < k <= subcat.strength - 1:
            raise ProfileInsufficient("strength", subcat.strength, k + 1)
        premise = ideal_vanishes(category, sequence.omega(i), upper, shifted)
        conclusion = ideal_vanishes(category, sequence.omega(i + 1), lower, stratum_objects)
    else:
        raise ValueError(f"unknown propagation part {part!r}")
    report = PropagationReport(part, k, i, premise.vanishes, conclusion.vanishes, premise.vacuous,
                               conclusion.worst)
    if not report.holds:
        logger.error(f"shift propagation ({part}) fails for k={k}, i={i} on {subcat.label}")
    return report


@dataclass
class CorollaryReport:
    part: str
    premise: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return not self.premise or self.conclusion


def shift_corollary_check(subcat: TiltingSubcat, sequence: SyzygySequence, order: int,
                          part: str = "a") -> CorollaryReport:
    """
    part 'a' (order-rigid): I_{Omega^{order-2} X}(T[1]) = 0 implies I_X(T[order-1]) = 0.
    part 'b' (order-strong): I_X(T[order]) = 0 implies I_{Omega^{order-1} X}(T[1]) = 0.
    """
    category = subcat.category
    first = subcat.shifted(1)
    if part == "a":
        if subcat.rigidity < order:
            raise ProfileInsufficient("rigidity", subcat.rigidity, order)
        premise = ideal_vanishes(category, sequence.omega(order - 2), first, first).vanishes
        far = subcat.shifted(order - 1)
        conclusion = ideal_vanishes(category, sequence.omega(0), far, far).vanishes
    elif part == "b":
        if subcat.strength < order:
            raise ProfileInsufficient("strength", subcat.strength, order)
        far = subcat.shifted(order)
        premise = ideal_vanishes(category, sequence.omega(0), far, far).vanishes
        conclusion = ideal_vanishes(category, sequence.omega(order - 1), first, first).vanishes
    else:
        raise ValueError(f"unknown corollary part {part!r}")
    return CorollaryReport(part, premise, conclusion)


def membership_criterion(subcat: TiltingSubcat, indec: CIndec, order: int) -> bool:
    """
    I_X(T[-order+1] * ... * T[-1], T[1] * ... * T[order-1]) = 0.

    For an order-cluster-tilting T this holds exactly when X lies in T.
    """
    negative = stratum(subcat, tuple(range(-order + 1, 0)))
    positive = stratum(subcat, tuple(range(1, order)))
    return ideal_vanishes(subcat.category, CObject.of(indec), negative, positive).vanishes
