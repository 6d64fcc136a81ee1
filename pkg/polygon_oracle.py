"""
Polygon Oracle Module

This module provides the combinatorial model of type-A cluster categories:
arcs of a convex polygon, their crossings, enumeration of (m+2)-angulations and
the matching of arcs to indecomposable objects.

For rank r and orbit parameter m the polygon has N = (r+1)m + 2 vertices. The
arcs used are the m-diagonals, which cut the polygon into two pieces whose
vertex counts are both 2 mod m; every (m+2)-angulation has r arcs.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher, categorical_edge_match

from cluster_category import CIndec, ClusterCategory
from lab_errors import BijectionError, IncompatibleParameters

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Arc:
    """A diagonal (i, j) of a convex N-gon with vertices 0..N-1."""

    i: int
    j: int
    size: int

    def __post_init__(self):
        if not 0 <= self.i < self.j < self.size:
            raise IncompatibleParameters(f"arc ({self.i}, {self.j}) is not in a {self.size}-gon")
        if self.j - self.i < 2 or (self.i == 0 and self.j == self.size - 1):
            raise IncompatibleParameters(f"({self.i}, {self.j}) is a side of the {self.size}-gon")

    @classmethod
    def of(cls, u: int, v: int, size: int) -> 'Arc':
        return cls(min(u, v), max(u, v), size)

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


@dataclass(frozen=True)
class Angulation:
    """A maximal set of pairwise non-crossing m-diagonals, cutting the polygon into (m+2)-gons."""

    arcs: Tuple[Arc, ...]
    size: int
    orbit: int

    def __post_init__(self):
        object.__setattr__(self, 'arcs', tuple(sorted(self.arcs)))

    def __str__(self) -> str:
        return "{" + ", ".join(str(arc) for arc in self.arcs) + "}"


def polygon_size(rank: int, orbit: int) -> int:
    return (rank + 1) * orbit + 2


def crossing_number(first: Arc, second: Arc) -> int:
    """1 when the endpoints strictly interleave, else 0."""
    if first.size != second.size:
        raise IncompatibleParameters(f"arcs of a {first.size}-gon and a {second.size}-gon")
    i, j, k, l = first.i, first.j, second.i, second.j
    return int(i < k < j < l or k < i < l < j)


def all_arcs(size: int) -> List[Arc]:
    return [Arc(i, j, size) for i in range(size) for j in range(i + 2, size) if not (i == 0 and j == size - 1)]


def m_diagonals(size: int, orbit: int) -> List[Arc]:
    """Arcs whose two sides both have a vertex count congruent to 2 mod m."""
    return [arc for arc in all_arcs(size)
            if (arc.j - arc.i - 1) % orbit == 0 and (size - (arc.j - arc.i) - 1) % orbit == 0]


def _check_compatible(size: int, orbit: int) -> None:
    if orbit < 1 or size < orbit + 2 or (size - 2) % orbit:
        raise IncompatibleParameters(f"a {size}-gon cannot be cut into ({orbit}+2)-gons")


def enumerate_angulations(size: int, orbit: int = 1) -> List[Angulation]:
    """
    Every (m+2)-angulation of the N-gon, without duplicates.

    The cell containing the side (first, last) of a sub-polygon is chosen
    first; the pieces it leaves are angulated recursively.

    Raises:
        IncompatibleParameters: If N - 2 is not a positive multiple of m
    """
    _check_compatible(size, orbit)

    @lru_cache(maxsize=None)
    def angulate(vertices: Tuple[int, ...]) -> Tuple[Tuple[Arc, ...], ...]:
        if len(vertices) == orbit + 2:
            return ((),)
        results = []
        last = len(vertices) - 1
        for corners in _cell_choices(last, orbit):
            pieces = [((), )]
            arcs: List[Arc] = []
            for start, end in zip(corners, corners[1:]):
                if end - start == 1:
                    continue
                arcs.append(Arc.of(vertices[start], vertices[end], size))
                pieces.append(angulate(vertices[start:end + 1]))
            for combination in _product(pieces):
                results.append(tuple(arcs) + combination)
        return tuple(results)

    found = {tuple(sorted(arcs)) for arcs in angulate(tuple(range(size)))}
    angulations = sorted((Angulation(arcs, size, orbit) for arcs in found), key=lambda a: a.arcs)
    logger.debug(f"{len(angulations)} ({orbit}+2)-angulations of the {size}-gon")
    return angulations


def _cell_choices(last: int, orbit: int) -> List[Tuple[int, ...]]:
    """Index sequences 0 = u_0 < ... < u_{m+1} = last whose gaps leave valid pieces."""
    choices = []

    def extend(prefix: Tuple[int, ...]) -> None:
        remaining = orbit + 1 - (len(prefix) - 1)
        if remaining == 1:
            gap = last - prefix[-1] + 1
            if gap == 2 or (gap > 2 and (gap - 2) % orbit == 0):
                choices.append(prefix + (last,))
            return
        for nxt in range(prefix[-1] + 1, last):
            gap = nxt - prefix[-1] + 1
            if gap == 2 or (gap > 2 and (gap - 2) % orbit == 0):
                extend(prefix + (nxt,))

    extend((0,))
    return choices


def _product(pieces: Sequence[Tuple[Tuple[Arc, ...], ...]]) -> List[Tuple[Arc, ...]]:
    combined: List[Tuple[Arc, ...]] = [()]
    for options in pieces:
        combined = [left + right for left in combined for right in options]
    return combined


def fuss_catalan(rank: int, orbit: int) -> int:
    """Number of (m+2)-angulations of the ((r+1)m+2)-gon."""
    cells = rank + 1
    return comb((orbit + 1) * cells, cells) // (orbit * cells + 1)


class PolygonModel:
    """
    Arc model of a built cluster category.

    The bijection arcs <-> indecomposables is found by graph matching: for
    m = 1 the crossing graph is matched to the Ext^1 graph with multiplicities,
    for m >= 2 the crossing graph is matched to the graph of pairs that fail
    (m+1)-rigidity.
    """

    def __init__(self, category: ClusterCategory):
        self.category = category
        self.rank = category.rank
        self.orbit = category.orbit
        self.size = polygon_size(self.rank, self.orbit)
        self.arcs = m_diagonals(self.size, self.orbit)
        if len(self.arcs) != len(category.indecomposables):
            raise BijectionError(self.rank, self.orbit)
        self.arc_graph = self._arc_graph()
        self.object_graph = self._object_graph()
        matcher = self._matcher()
        mapping = next(matcher.isomorphisms_iter(), None)
        if mapping is None:
            raise BijectionError(self.rank, self.orbit)
        self.to_object: Dict[Arc, CIndec] = dict(mapping)
        self.to_arc: Dict[CIndec, Arc] = {x: arc for arc, x in mapping.items()}
        logger.info(f"Matched {len(self.arcs)} arcs to indecomposables for A_{self.rank}, m={self.orbit}")

    def _arc_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.arcs)
        for position, first in enumerate(self.arcs):
            for second in self.arcs[position + 1:]:
                if crossing_number(first, second):
                    graph.add_edge(first, second, weight=1)
        return graph

    def incompatibility(self, first: CIndec, second: CIndec) -> int:
        """Total dim Hom(x, y[i]) + dim Hom(y, x[i]) over 0 < i <= m."""
        category = self.category
        return sum(category.ext_dimension(first, second, i) + category.ext_dimension(second, first, i)
                   for i in range(1, self.orbit + 1))

    def _object_graph(self) -> nx.Graph:
        graph = nx.Graph()
        objects = self.category.indecomposables
        graph.add_nodes_from(objects)
        for position, first in enumerate(objects):
            for second in objects[position + 1:]:
                if self.orbit == 1:
                    weight = self.category.ext_dimension(first, second, 1)
                    if weight != self.category.ext_dimension(second, first, 1):
                        raise BijectionError(self.rank, self.orbit)
                else:
                    weight = 1 if self.incompatibility(first, second) else 0
                if weight:
                    graph.add_edge(first, second, weight=weight)
        return graph

    def _matcher(self) -> GraphMatcher:
        return GraphMatcher(self.arc_graph, self.object_graph, edge_match=categorical_edge_match('weight', 1))

    def isomorphism_count(self, limit: Optional[int] = None) -> int:
        count = 0
        for _ in self._matcher().isomorphisms_iter():
            count += 1
            if limit is not None and count >= limit:
                break
        return count

    def arc_to_object(self, arc: Arc) -> CIndec:
        if arc not in self.to_object:
            raise IncompatibleParameters(f"{arc} is not an m-diagonal of the {self.size}-gon")
        return self.to_object[arc]

    def angulations(self) -> List[Angulation]:
        return enumerate_angulations(self.size, self.orbit)

    def objects_of(self, angulation: Angulation) -> List[CIndec]:
        if angulation.size != self.size or angulation.orbit != self.orbit:
            raise IncompatibleParameters(
                f"angulation of a {angulation.size}-gon with m={angulation.orbit} "
                f"does not fit A_{self.rank}, m={self.orbit}"
            )
        return sorted(self.arc_to_object(arc) for arc in angulation.arcs)


@lru_cache(maxsize=16)
def polygon_model(category: ClusterCategory) -> PolygonModel:
    """The arc model of a category, built once per category."""
    return PolygonModel(category)


def arc_to_object(category: ClusterCategory, arc: Arc) -> CIndec:
    return polygon_model(category).arc_to_object(arc)
