"""
Resolution Engine Module

This module provides minimal projective resolutions over End_C(T): projective
covers, syzygy modules, projective-dimension verdicts and the Gorenstein
dimension of the algebra.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from lab_errors import ModelViolation
from lambda_modules import (EndoAlgebra, LambdaModule, injective_module, modules_isomorphic,
                            projective_module)
from linear_algebra import kernel_vectors

logger = logging.getLogger(__name__)

FINITE = "finite"
INFINITE = "infinite"
INDETERMINATE = "indeterminate"
ZERO_MODULE = "zero-module"


@dataclass
class PdVerdict:
    """
    Projective dimension of a module, as far as the resolution could tell.

    tops[i] is the top of the i-th projective term; reason is 'resolution',
    'gorenstein' or 'cycle', and cycle holds (j, i) when Omega^i M and
    Omega^j M were found isomorphic.
    """

    kind: str
    value: Optional[int] = None
    depth: int = 0
    reason: str = "resolution"
    tops: List[Tuple[int, ...]] = field(default_factory=list)
    cycle: Optional[Tuple[int, int]] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind == INFINITE

    def at_most(self, bound: int) -> bool:
        """pd <= bound; the zero module counts as satisfying every bound."""
        return self.kind == ZERO_MODULE or (self.kind == FINITE and self.value <= bound)

    @property
    def label(self) -> str:
        if self.kind == FINITE:
            return str(self.value)
        if self.kind == INFINITE:
            return "inf"
        if self.kind == ZERO_MODULE:
            return "zero"
        return f"?@{self.depth}"

    def __str__(self) -> str:
        return self.label


@dataclass
class ProjectiveCover:
    """P -> M with P a direct sum of indecomposable projectives, one per top vector."""

    module: LambdaModule
    projective: LambdaModule
    summands: List[int]
    kernel: LambdaModule

    @property
    def top(self) -> Tuple[int, ...]:
        return tuple(self.summands.count(a) for a in range(self.module.algebra.vertex_count))


def direct_sum(algebra: EndoAlgebra, modules: Sequence[LambdaModule], label: str = "") -> LambdaModule:
    """Block-diagonal sum of modules over the same algebra."""
    field_ = algebra.field
    dims = [sum(module.dims[a] for module in modules) for a in range(algebra.vertex_count)]
    actions = {}
    for index in algebra.radical_elements():
        a, b = algebra.source(index), algebra.target(index)
        if not dims[a] or not dims[b]:
            continue
        matrix = field_.zeros((dims[a], dims[b]))
        row = col = 0
        for module in modules:
            piece = module.action(index)
            matrix[row:row + piece.shape[0], col:col + piece.shape[1]] = piece
            row += module.dims[a]
            col += module.dims[b]
        actions[index] = matrix
    return LambdaModule(algebra, dims, actions, label=label)


def projective_cover(module: LambdaModule) -> ProjectiveCover:
    """
    The projective cover of M and its kernel, the first syzygy.

    One copy of P_b is taken for each top vector m of M_b, mapped by
    u -> action(u) @ m; the kernel is computed vertex by vertex.
    """
    algebra = module.algebra
    field_ = module.field
    tops = module.top_vectors()
    summands: List[int] = []
    generators: List[np.ndarray] = []
    for b in range(algebra.vertex_count):
        for vector in tops[b]:
            summands.append(b)
            generators.append(vector)
    projective = direct_sum(algebra, [projective_module(algebra, b) for b in summands])

    kernel_bases = {}
    for a in range(algebra.vertex_count):
        columns = []
        for b, vector in zip(summands, generators):
            for u in algebra.block(a, b):
                columns.append(field_.matmul(module.action(u), vector.reshape(-1, 1)).ravel())
        if not projective.dims[a]:
            kernel_bases[a] = field_.zeros((0, 0))
            continue
        evaluation = np.column_stack(columns) if module.dims[a] else field_.zeros((0, projective.dims[a]))
        if module.dims[a] and field_.rank(evaluation) != module.dims[a]:
            raise ModelViolation(f"cover of {module} is not surjective at vertex {algebra.labels[a]}")
        vectors = kernel_vectors(field_, evaluation)
        kernel_bases[a] = np.column_stack(vectors) if vectors else field_.zeros((projective.dims[a], 0))
    kernel = projective.submodule(kernel_bases, label=f"Omega({module.label})" if module.label else "")
    return ProjectiveCover(module, projective, summands, kernel)


def syzygy_module(module: LambdaModule) -> LambdaModule:
    return projective_cover(module).kernel


def projective_dimension(module: LambdaModule, depth: int, gorenstein_certified: bool = False,
                         probes: Optional[Sequence[LambdaModule]] = None) -> PdVerdict:
    """
    Projective dimension from a minimal projective resolution.

    Args:
        module: The module M
        depth: Number of syzygies computed before giving up
        gorenstein_certified: The algebra is known to be Gorenstein of
            dimension at most one, so a nonzero second syzygy means pd = inf
        probes: Modules whose Hom dimensions decide isomorphism; when given,
            a syzygy isomorphic to an earlier one means pd = inf

    Returns:
        PdVerdict
    """
    if depth < 2:
        raise ValueError("resolution depth must be at least 2")
    if module.is_zero():
        return PdVerdict(ZERO_MODULE)
    history = [module]
    tops: List[Tuple[int, ...]] = []
    current = module
    for step in range(depth):
        cover = projective_cover(current)
        tops.append(cover.top)
        following = cover.kernel
        if following.is_zero():
            return PdVerdict(FINITE, value=step, depth=step + 1, tops=tops)
        index = step + 1
        if gorenstein_certified and index >= 2:
            return PdVerdict(INFINITE, depth=index, reason="gorenstein", tops=tops)
        if probes is not None:
            for earlier, candidate in enumerate(history):
                if modules_isomorphic(following, candidate, probes):
                    logger.debug(f"Omega^{index} {module} is isomorphic to Omega^{earlier}")
                    return PdVerdict(INFINITE, depth=index, reason="cycle", tops=tops, cycle=(earlier, index))
        history.append(following)
        current = following
    logger.warning(f"pd of {module} undecided after {depth} syzygies")
    return PdVerdict(INDETERMINATE, depth=depth, tops=tops)


@dataclass
class GorensteinReport:
    """Injective dimension of the regular module on both sides."""

    kind: str
    value: Optional[int]
    verdicts: List[Tuple[str, PdVerdict]]

    def at_most(self, bound: int) -> bool:
        return self.kind == FINITE and self.value <= bound

    @property
    def label(self) -> str:
        return PdVerdict(self.kind, self.value).label if self.kind != INDETERMINATE else "?"


def _combine(verdicts: Sequence[PdVerdict]) -> Tuple[str, Optional[int]]:
    if any(v.is_infinite for v in verdicts):
        return INFINITE, None
    if any(v.kind == INDETERMINATE for v in verdicts):
        return INDETERMINATE, None
    return FINITE, max((v.value for v in verdicts if v.is_finite), default=0)


def gorenstein_dimension(algebra: EndoAlgebra, depth: int,
                         probes: Optional[Sequence[LambdaModule]] = None,
                         opposite_probes: Optional[Sequence[LambdaModule]] = None) -> GorensteinReport:
    """
    max(pd of the injectives over the algebra, pd of the injectives over its opposite).

    Args:
        algebra: The algebra
        depth: Resolution depth per module
        probes: Isomorphism probes over the algebra
        opposite_probes: Isomorphism probes over the opposite algebra
    """
    opposite = algebra.opposite()
    verdicts: List[Tuple[str, PdVerdict]] = []
    for a in range(algebra.vertex_count):
        module = injective_module(algebra, a)
        verdicts.append((module.label, projective_dimension(module, depth, probes=probes)))
    for a in range(algebra.vertex_count):
        module = injective_module(opposite, a)
        verdicts.append((f"op {module.label}", projective_dimension(module, depth, probes=opposite_probes)))
    kind, value = _combine([verdict for _, verdict in verdicts])
    logger.debug(f"Gorenstein dimension of {algebra}: {kind} {value}")
    return GorensteinReport(kind, value, verdicts)
