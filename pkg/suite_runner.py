"""
Suite Runner

This module provides the verification suites of the workbench. Each suite
walks a family of cluster categories and tilting subcategories, evaluates a
set of statements on every instance, and aggregates the instance records
into a SuiteReport with an overall status.
"""

import logging
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from cluster_category import CIndec, CObject, ClusterCategory, build_category, indecomposable_count
from ideal_manager import (ideal_vanishes, membership_criterion, shift_corollary_check,
                           shift_propagation_check, stratum)
from lab_config import LabConfig
from lab_errors import IncompatibleParameters, ProfileInsufficient
from lambda_modules import (EndoAlgebra, LambdaModule, endomorphism_algebra, hom_functor,
                            indecomposable_probes, module_iso_invariant, modules_isomorphic)
from linear_algebra import field_from_tag
from polygon_oracle import crossing_number, enumerate_angulations, fuss_catalan, polygon_model
from report_models import (COUNTEREXAMPLE, FAIL, NO_COUNTEREXAMPLE, PASS, WARN, InstanceRecord,
                           SuiteParameters, SuiteReport, SuiteSummary)
from resolution_engine import INDETERMINATE, GorensteinReport, PdVerdict, gorenstein_dimension, projective_dimension
from tilting_manager import (SyzygySequence, TiltingSubcat, higher_cluster_tilting, star_membership,
                             strip_shifted_summands, subcat_from_angulation, syzygy, verify_profiles)

logger = logging.getLogger(__name__)

STATEMENTS: Dict[str, str] = {
    "main-theorem": "T cluster-tilting, X without summands in T[1]: pd H X <= 1 iff I_X(T[1]) = 0",
    "infinite-corollary": "X in T*T[1] without summands in T[1]: pd H X = inf iff I_X(T[1]) != 0",
    "x-bar": "H X = H X-bar, and pd H X = inf iff I_{X-bar}(T[1]) != 0",
    "trichotomy": "over a cluster-tilted algebra every pd is 0, 1 or inf",
    "gorenstein": "End_C(T) is Gorenstein of dimension at most one",
    "rigid-variant": "T rigid, X in T*T[1] without summands in T[1]: pd H X <= 1 iff I_X(T[1]) = 0",
    "krull-schmidt": "X, Y in T*T[1] with H X = H Y agree after removing summands in T[1]",
    "propagation-a": "T n-rigid, 0 <= k < n-1: I_{Omega^{i+1} X}(D, T[k]) = 0 implies I_{Omega^i X}(D[1], T[k+1]) = 0",
    "propagation-b": "T m-strong, 0 < k <= m-1: I_{Omega^i X}(T[k+1], D[1]) = 0 implies I_{Omega^{i+1} X}(T[k], D) = 0",
    "corollary-a": "T n-rigid: I_{Omega^{n-2} X}(T[1]) = 0 implies I_X(T[n-1]) = 0",
    "corollary-b": "T m-strong: I_X(T[m]) = 0 implies I_{Omega^{m-1} X}(T[1]) = 0",
    "membership": "T n-cluster-tilting: X in T iff I_X(T[-n+1]*...*T[-1], T[1]*...*T[n-1]) = 0",
    "star-hom-vanishing": "Hom(P, A) = Hom(P, B) = 0 implies Hom(P, E) = 0 on every triangle A -> E -> B",
    "enumeration": "n-cluster-tilting subcategories are counted by the Fuss-Catalan number",
    "stratum-lemma": "X in T*...*T[n-1] gives Omega^i X in T*...*T[n-i-1] for 0 <= i < n",
    "summand-freeness": "X without summands in T[1]*...*T[n-1] gives Omega^i X without summands in T[1]*...*T[n-i-1]",
    "pd-bound": "I_X(T[1]*...*T[n-1]) = 0 implies pd H X <= n-1",
    "hom-vanishing-bound": "H X[-i] = 0 for 0 < i < n implies pd H X <= n-1",
    "omega-proposition": "I_X(T[n-1]) = 0 iff pd H Omega^{n-2} X <= 1",
    "pd-range": "for (n-1)-strong n-cluster-tilting T every pd is 0, 1 or inf",
    "hunt": "pd H X <= n-1 with I_X(T[1]*...*T[n-1]) != 0 would refute the converse of pd-bound",
    "indecomposable-count": "ind C has m n(n+1)/2 + n objects",
    "angulation-count": "(m+2)-angulations are counted by the Fuss-Catalan number",
    "ext-crossing": "dim Ext^1(X, Y) equals the crossing number of the arcs",
    "serre-duality": "dim Hom(X, Y[i]) = dim Hom(Y, X[m+1-i])",
    "field-independence": "verdict tables agree over F_32003, F_101 and Q",
    "pd-table": "pd H X and dim I_X(T[1]) for every cluster-tilting T and indecomposable X",
}


@dataclass
class TiltingContext:
    """A subcategory with its algebra, isomorphism probes and Gorenstein certificate."""

    category: ClusterCategory
    subcat: TiltingSubcat
    algebra: EndoAlgebra
    probes: List[LambdaModule]
    depth: int
    certified: bool
    gorenstein: Optional[GorensteinReport] = None

    def module(self, obj: CObject) -> LambdaModule:
        return hom_functor(self.algebra, obj)

    def pd(self, obj: CObject) -> PdVerdict:
        return projective_dimension(self.module(obj), self.depth, self.certified, self.probes)


def summarize(records: Sequence[InstanceRecord]) -> SuiteSummary:
    summary = SuiteSummary()
    by_statement: Counter = Counter()
    non_vacuous: Counter = Counter()
    for record in records:
        summary.instances += 1
        by_statement[record.statement] += 1
        if record.agreement:
            summary.agreements += 1
        else:
            summary.disagreements += 1
        if record.vacuous:
            summary.vacuous += 1
        else:
            non_vacuous[record.statement] += 1
        if record.pd is not None and record.pd.startswith("?"):
            summary.indeterminate += 1
        if record.statement == "hunt" and record.premise and not record.conclusion:
            summary.counterexamples += 1
    summary.by_statement = dict(sorted(by_statement.items()))
    summary.non_vacuous_by_statement = {key: non_vacuous.get(key, 0) for key in summary.by_statement}
    return summary


def overall_status(summary: SuiteSummary, hunt: bool = False) -> str:
    """FAIL on any disagreement; WARN when a statement was only met vacuously."""
    if summary.disagreements:
        return FAIL
    if hunt:
        return COUNTEREXAMPLE if summary.counterexamples else NO_COUNTEREXAMPLE
    if not summary.instances:
        return WARN
    if any(count == 0 for count in summary.non_vacuous_by_statement.values()):
        return WARN
    return PASS


class SuiteRunner:
    """Runs verification suites over families of categories."""

    def __init__(self, config: Optional[LabConfig] = None, field: Optional[str] = None,
                 depth: Optional[int] = None, seed: Optional[int] = None, workers: Optional[int] = None):
        self.config = config or LabConfig.from_env()
        self.field = field_from_tag(field if field is not None else self.config.field.field)
        self.depth_override = depth
        self.seed = self.config.suite.seed if seed is None else seed
        self.workers = workers or self.config.suite.workers
        self.logger = logging.getLogger(__name__)
        self._categories: Dict[Tuple[int, int, str], ClusterCategory] = {}

    # Shared plumbing

    def depth_for(self, rank: int) -> int:
        return self.depth_override or self.config.resolution.depth_for(rank)

    def category(self, rank: int, orbit: int, field=None) -> ClusterCategory:
        field = field_from_tag(field) if field is not None else self.field
        key = (rank, orbit, field.tag)
        if key not in self._categories:
            self._categories[key] = build_category(rank, orbit, field, self.config.category)
        return self._categories[key]

    def context(self, subcat: TiltingSubcat, certify: bool = True) -> TiltingContext:
        """Algebra, probes and (when certify is set) the computed Gorenstein dimension of T."""
        category = subcat.category
        algebra = endomorphism_algebra(subcat)
        probes = indecomposable_probes(algebra)
        depth = self.depth_for(category.rank)
        gorenstein = None
        certified = False
        if certify:
            gorenstein = gorenstein_dimension(algebra, depth, probes, [probe.dual() for probe in probes])
            certified = self.config.resolution.gorenstein_shortcut and gorenstein.at_most(1)
        return TiltingContext(category, subcat, algebra, probes, depth, certified, gorenstein)

    def dispatch(self, tasks: Sequence[Callable[[], List[InstanceRecord]]]) -> List[InstanceRecord]:
        """Run independent tasks, in a thread pool when more than one worker is configured."""
        if self.workers <= 1 or len(tasks) <= 1:
            chunks = [task() for task in tasks]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                chunks = list(executor.map(lambda task: task(), tasks))
        records = [record for chunk in chunks for record in chunk]
        return sorted(records, key=lambda record: record.sort_key())

    def finish(self, suite: str, ranks: Sequence[int], orbits: Sequence[int], records: List[InstanceRecord],
               started: float, notes: Optional[List[str]] = None, hunt: bool = False) -> SuiteReport:
        summary = summarize(records)
        status = overall_status(summary, hunt=hunt)
        parameters = SuiteParameters(
            ranks=list(ranks), orbits=list(orbits), field=self.field.tag,
            depth=self.depth_override, seed=self.seed,
            decomposable_sample=self.config.suite.decomposable_sample if suite == "main-theorem" else 0,
        )
        used = {record.statement for record in records}
        report = SuiteReport(
            suite=suite,
            statements={key: text for key, text in STATEMENTS.items() if key in used},
            parameters=parameters,
            status=status,
            summary=summary,
            records=records,
            notes=notes or [],
            elapsed_seconds=round(time.perf_counter() - started, 3),
        )
        if status == FAIL:
            self.logger.error(f"Suite {suite}: {summary.disagreements} disagreements")
        elif status == WARN:
            self.logger.warning(f"Suite {suite} finished with warnings")
        self.logger.info(f"Suite {suite}: {status} over {summary.instances} instances")
        return report

    def run(self, suite: str, ranks: Sequence[int], orbits: Sequence[int]) -> SuiteReport:
        runners = {
            "main-theorem": lambda: self.main_theorem(ranks),
            "section3": lambda: self.section3(ranks, orbits),
            "section5": lambda: self.section5(ranks, orbits),
            "hunt": lambda: self.hunt(ranks, orbits),
            "model": lambda: self.model(ranks, orbits),
            "field-independence": lambda: self.field_independence(ranks),
            "pd-table": lambda: self.pd_table(ranks, orbits),
        }
        if suite not in runners:
            raise IncompatibleParameters(f"unknown suite {suite!r}; choose from {', '.join(sorted(runners))}")
        return runners[suite]()

    @staticmethod
    def _record(statement: str, subcat: TiltingSubcat, target, **values) -> InstanceRecord:
        category = subcat.category
        return InstanceRecord(statement=statement, rank=category.rank, orbit=category.orbit,
                              subcategory=subcat.label, target=str(target), **values)

    # Main theorem (m = 1)

    def main_theorem(self, ranks: Sequence[int]) -> SuiteReport:
        started = time.perf_counter()
        tasks = []
        for rank in ranks:
            category = self.category(rank, 1)
            for angulation in polygon_model(category).angulations():
                subcat = subcat_from_angulation(category, angulation)
                tasks.append(lambda subcat=subcat: self._main_theorem_instance(subcat))
        records = self.dispatch(tasks)
        records.extend(self._decomposable_sample(ranks))
        records.sort(key=lambda record: record.sort_key())
        return self.finish("main-theorem", ranks, [1], records, started)

    def _main_theorem_instance(self, subcat: TiltingSubcat) -> List[InstanceRecord]:
        category = subcat.category
        records = []
        profile = verify_profiles(subcat, order=2)
        ctx = self.context(subcat)
        records.append(self._record("gorenstein", subcat, "End(T)", pd=ctx.gorenstein.label,
                                    agreement=profile.cluster_tilting and ctx.gorenstein.at_most(1),
                                    witness=profile.witness))
        shifted = subcat.shifted(1)
        invariants: Dict[CIndec, Tuple[int, ...]] = {}
        modules: Dict[CIndec, LambdaModule] = {}
        for x in category.indecomposables:
            if x in shifted:
                continue
            obj = CObject.of(x)
            module = ctx.module(obj)
            modules[x] = module
            verdict = projective_dimension(module, ctx.depth, ctx.certified, ctx.probes)
            ideal = ideal_vanishes(category, obj, shifted, shifted, exhaustive=True)
            witness = ideal.worst.describe() if ideal.worst else None
            records.append(self._record(
                "main-theorem", subcat, x, pd=verdict.label, ideal_dimension=ideal.dimension,
                agreement=verdict.at_most(1) == ideal.vanishes and verdict.kind != INDETERMINATE,
                witness=witness,
            ))
            records.append(self._record(
                "infinite-corollary", subcat, x, pd=verdict.label, ideal_dimension=ideal.dimension,
                agreement=verdict.is_infinite == (not ideal.vanishes), witness=witness,
            ))
            records.append(self._record(
                "trichotomy", subcat, x, pd=verdict.label,
                agreement=verdict.label in ("0", "1", "inf"),
            ))
            invariants[x] = (module.dims,) + module_iso_invariant(module, ctx.probes)
        for x, first in invariants.items():
            clashes = [str(y) for y, second in invariants.items() if y != x and second == first]
            records.append(self._record("krull-schmidt", subcat, x, agreement=not clashes,
                                        detail=", ".join(clashes) or None))
        records.extend(self._rigid_variant(subcat))
        return records

    def _rigid_variant(self, subcat: TiltingSubcat) -> List[InstanceRecord]:
        """Rigid subcategories obtained by dropping one indecomposable of T."""
        category = subcat.category
        records = []
        for dropped in subcat.indecomposables:
            kept = [t for t in subcat.indecomposables if t != dropped]
            if not kept:
                continue
            rigid = TiltingSubcat(category, kept)
            if not rigid.is_rigid(2):
                continue
            ctx = self.context(rigid, certify=False)
            shifted = rigid.shifted(1)
            for x in category.indecomposables:
                obj = CObject.of(x)
                if x in shifted or not star_membership(rigid, obj, [0, 1]):
                    continue
                verdict = ctx.pd(obj)
                ideal = ideal_vanishes(category, obj, shifted, shifted, exhaustive=True)
                records.append(self._record(
                    "rigid-variant", rigid, x, pd=verdict.label,
                    ideal_dimension=ideal.dimension,
                    agreement=verdict.at_most(1) == ideal.vanishes and verdict.kind != INDETERMINATE,
                    witness=ideal.worst.describe() if ideal.worst else None,
                    detail=f"T minus {dropped}",
                ))
        return records

    def _decomposable_sample(self, ranks: Sequence[int]) -> List[InstanceRecord]:
        """Seeded decomposables X, compared with X-bar through H and the ideal I_{X-bar}(T[1])."""
        sample = self.config.suite.decomposable_sample
        records = []
        for rank in ranks:
            if sample <= 0:
                break
            category = self.category(rank, 1)
            angulations = polygon_model(category).angulations()
            rng = np.random.default_rng(self.seed + rank)
            contexts: Dict[int, TiltingContext] = {}
            for _ in range(sample):
                choice = int(rng.integers(len(angulations)))
                if choice not in contexts:
                    contexts[choice] = self.context(subcat_from_angulation(category, angulations[choice]))
                ctx = contexts[choice]
                pool = list(category.indecomposables)
                shifted = ctx.subcat.shifted(1)
                picks = [pool[int(i)] for i in rng.integers(len(pool), size=int(rng.integers(2, 4)))]
                picks.append(shifted[int(rng.integers(len(shifted)))])
                obj = CObject(tuple(picks))
                reduced = strip_shifted_summands(ctx.subcat, obj)
                module, reduced_module = ctx.module(obj), ctx.module(reduced)
                same = modules_isomorphic(module, reduced_module, ctx.probes)
                verdict = projective_dimension(module, ctx.depth, ctx.certified, ctx.probes)
                ideal = ideal_vanishes(category, reduced, shifted, shifted, exhaustive=True)
                records.append(self._record(
                    "x-bar", ctx.subcat, obj, pd=verdict.label,
                    ideal_dimension=ideal.dimension,
                    vacuous=reduced.is_zero(),
                    agreement=same and verdict.is_infinite == (not ideal.vanishes),
                    detail=f"X-bar = {reduced}",
                ))
        return records

    # Shift propagation and membership

    def section3(self, ranks: Sequence[int], orbits: Sequence[int]) -> SuiteReport:
        started = time.perf_counter()
        tasks = []
        for orbit in orbits:
            for rank in ranks:
                category = self.category(rank, orbit)
                for subcat in higher_cluster_tilting(category, orbit + 1):
                    tasks.append(lambda subcat=subcat: self._section3_instance(subcat))
        records = self.dispatch(tasks)
        return self.finish("section3", ranks, orbits, records, started)

    def _section3_instance(self, subcat: TiltingSubcat) -> List[InstanceRecord]:
        category = subcat.category
        order = category.orbit + 1
        strength = min(subcat.strength, order)
        depth = max(order, strength)
        strata_choices = {f"T[{j}]": subcat.shifted(j) for j in range(-1, order)}
        records = []
        for x in category.indecomposables:
            obj = CObject.of(x)
            sequence = syzygy(subcat, obj, depth)
            criterion = membership_criterion(subcat, x, order)
            records.append(self._record("membership", subcat, x, premise=criterion,
                                        conclusion=subcat.contains(x),
                                        agreement=criterion == subcat.contains(x)))
            for i in range(depth - 1):
                for name, objects in strata_choices.items():
                    for k in range(0, subcat.rigidity - 1):
                        report = shift_propagation_check(subcat, sequence, objects, k, i, part="a")
                        records.append(self._record(
                            "propagation-a", subcat, x, premise=report.premise, conclusion=report.conclusion,
                            vacuous=not report.premise, agreement=report.holds,
                            detail=f"D={name}, k={k}, i={i}",
                        ))
                    for k in range(1, strength):
                        report = shift_propagation_check(subcat, sequence, objects, k, i, part="b")
                        records.append(self._record(
                            "propagation-b", subcat, x, premise=report.premise, conclusion=report.conclusion,
                            vacuous=not report.premise, agreement=report.holds,
                            detail=f"D={name}, k={k}, i={i}",
                        ))
            corollary = shift_corollary_check(subcat, sequence, order, part="a")
            records.append(self._record("corollary-a", subcat, x, premise=corollary.premise,
                                        conclusion=corollary.conclusion, vacuous=not corollary.premise,
                                        agreement=corollary.holds, detail=f"n={order}"))
            for level in range(2, strength + 1):
                try:
                    corollary = shift_corollary_check(subcat, sequence, level, part="b")
                except ProfileInsufficient:
                    continue
                records.append(self._record("corollary-b", subcat, x, premise=corollary.premise,
                                            conclusion=corollary.conclusion, vacuous=not corollary.premise,
                                            agreement=corollary.holds, detail=f"m={level}"))
            records.extend(self._star_hom_vanishing(subcat, x, sequence))
        return records

    def _star_hom_vanishing(self, subcat: TiltingSubcat, x: CIndec, sequence) -> List[InstanceRecord]:
        category = subcat.category
        records = []
        for i, triangle in enumerate(sequence.triangles):
            if triangle is None:
                continue
            left, middle, right = sequence.omega(i + 1), sequence.approximations[i].source, sequence.omega(i)
            failures = []
            applicable = False
            for probe in category.indecomposables:
                probe_obj = CObject.of(probe)
                if category.object_hom_dimension(probe_obj, left) or category.object_hom_dimension(probe_obj, right):
                    continue
                applicable = True
                if category.object_hom_dimension(probe_obj, middle):
                    failures.append(str(probe))
            records.append(self._record("star-hom-vanishing", subcat, x, vacuous=not applicable,
                                        agreement=not failures, detail=f"i={i}",
                                        witness=", ".join(failures) or None))
        return records

    # Higher cluster-tilting (m >= 2)

    def section5(self, ranks: Sequence[int], orbits: Sequence[int]) -> SuiteReport:
        started = time.perf_counter()
        tasks = []
        notes = []
        for orbit in orbits:
            if orbit < 2:
                raise IncompatibleParameters("section5 needs m >= 2")
            for rank in ranks:
                category = self.category(rank, orbit)
                found = higher_cluster_tilting(category, orbit + 1)
                expected = fuss_catalan(rank, orbit)
                tasks.append(lambda category=category, found=found, expected=expected: [InstanceRecord(
                    statement="enumeration", rank=category.rank, orbit=category.orbit, subcategory="all",
                    target=f"{len(found)} found", agreement=len(found) == expected,
                    detail=f"Fuss-Catalan {expected}",
                )])
                strong = [t for t in found if t.strength >= orbit]
                notes.append(f"A_{rank}, m={orbit}: {len(strong)} of {len(found)} subcategories are {orbit}-strong")
                for subcat in found:
                    tasks.append(lambda subcat=subcat, strong=subcat.strength >= orbit:
                                 self._section5_instance(subcat, strong))
        records = self.dispatch(tasks)
        return self.finish("section5", ranks, orbits, records, started, notes=notes)

    def _admissible(self, subcat: TiltingSubcat, order: int) -> List[CIndec]:
        """Indecomposables of T*...*T[n-1] without summands in T[1]*...*T[n-1]."""
        upper = set(stratum(subcat, tuple(range(1, order))))
        whole = set(stratum(subcat, tuple(range(0, order))))
        return [x for x in subcat.category.indecomposables if x in whole and x not in upper]

    def _stratum_lemma(self, subcat: TiltingSubcat, order: int) -> Tuple[Dict[CIndec, SyzygySequence],
                                                                         List[InstanceRecord]]:
        """Omega^i X in T*...*T[n-1-i] for every indecomposable X of T*...*T[n-1] and i < n."""
        whole = set(stratum(subcat, tuple(range(0, order))))
        sequences = {}
        records = []
        for x in subcat.category.indecomposables:
            sequence = syzygy(subcat, CObject.of(x), order - 1)
            sequences[x] = sequence
            for i in range(order):
                if x not in whole:
                    records.append(self._record("stratum-lemma", subcat, x, vacuous=True, detail=f"i={i}"))
                    continue
                member = star_membership(subcat, sequence.omega(i), list(range(0, order - i)))
                records.append(self._record("stratum-lemma", subcat, x, agreement=member, detail=f"i={i}"))
        return sequences, records

    def _section5_instance(self, subcat: TiltingSubcat, strong: bool = True) -> List[InstanceRecord]:
        """
        Stratum lemma for every n-cluster-tilting T; the remaining statements
        only for (n-1)-strong T.
        """
        category = subcat.category
        order = category.orbit + 1
        sequences, records = self._stratum_lemma(subcat, order)
        if not strong:
            return records
        ctx = self.context(subcat)
        records.append(self._record("gorenstein", subcat, "End(T)", pd=ctx.gorenstein.label,
                                    agreement=ctx.gorenstein.at_most(1)))
        upper = stratum(subcat, tuple(range(1, order)))
        first = subcat.shifted(1)
        far = subcat.shifted(order - 1)
        admissible = set(self._admissible(subcat, order))
        for x in category.indecomposables:
            obj = CObject.of(x)
            verdict = ctx.pd(obj)
            sequence = sequences[x]
            records.append(self._record("pd-range", subcat, x, pd=verdict.label,
                                        agreement=verdict.label in ("0", "1", "inf")))
            ideal = ideal_vanishes(category, obj, upper, upper, exhaustive=True)
            records.append(self._record(
                "pd-bound", subcat, x, pd=verdict.label, premise=ideal.vanishes,
                ideal_dimension=ideal.dimension,
                conclusion=verdict.at_most(order - 1), vacuous=not ideal.vanishes,
                agreement=not ideal.vanishes or verdict.at_most(order - 1),
                witness=ideal.worst.describe() if ideal.worst else None,
            ))
            hom_zero = all(not category.object_hom_dimension(subcat.object, category.shift(obj, -i))
                           for i in range(1, order))
            records.append(self._record(
                "hom-vanishing-bound", subcat, x, pd=verdict.label, premise=hom_zero,
                conclusion=verdict.at_most(order - 1), vacuous=not hom_zero,
                agreement=not hom_zero or verdict.at_most(order - 1),
            ))
            if x not in admissible:
                continue
            for i in range(1, order - 1):
                window = set(stratum(subcat, tuple(range(1, order - i))))
                clean = not any(y in window for y in sequence.omega(i).summands)
                records.append(self._record("summand-freeness", subcat, x, agreement=clean, detail=f"i={i}"))
            if star_membership(subcat, obj, [0, 1]) and x not in first:
                ideal_first = ideal_vanishes(category, obj, first, first, exhaustive=True)
                records.append(self._record(
                    "infinite-corollary", subcat, x, pd=verdict.label,
                    ideal_dimension=ideal_first.dimension,
                    agreement=verdict.is_infinite == (not ideal_first.vanishes),
                ))
            if subcat.rigidity >= order and sequence.depth >= order - 2:
                ideal_far = ideal_vanishes(category, obj, far, far)
                omega = sequence.omega(order - 2)
                omega_verdict = ctx.pd(omega)
                records.append(self._record(
                    "omega-proposition", subcat, x, pd=omega_verdict.label, premise=ideal_far.vanishes,
                    conclusion=omega_verdict.at_most(1),
                    agreement=ideal_far.vanishes == omega_verdict.at_most(1)
                    and omega_verdict.kind != INDETERMINATE,
                ))
        return records

    def hunt(self, ranks: Sequence[int], orbits: Sequence[int]) -> SuiteReport:
        """
        Search for X with pd H X <= n-1 but I_X(T[1]*...*T[n-1]) != 0.

        Hits are COUNTEREXAMPLE records (premise True, conclusion False); a
        violation of the proven direction is a disagreement.
        """
        started = time.perf_counter()
        tasks = []
        for orbit in orbits:
            if orbit < 2:
                raise IncompatibleParameters("the hunt needs m >= 2")
            for rank in ranks:
                category = self.category(rank, orbit)
                for subcat in higher_cluster_tilting(category, orbit + 1):
                    if subcat.strength >= orbit:
                        tasks.append(lambda subcat=subcat: self._hunt_instance(subcat))
        records = self.dispatch(tasks)
        notes = ["absence of counterexamples is reported at the tested scale only"]
        return self.finish("hunt", ranks, orbits, records, started, notes=notes, hunt=True)

    def _hunt_instance(self, subcat: TiltingSubcat) -> List[InstanceRecord]:
        category = subcat.category
        order = category.orbit + 1
        ctx = self.context(subcat)
        upper = stratum(subcat, tuple(range(1, order)))
        records = []
        for x in self._admissible(subcat, order):
            obj = CObject.of(x)
            verdict = ctx.pd(obj)
            ideal = ideal_vanishes(category, obj, upper, upper, exhaustive=True)
            bounded = verdict.at_most(order - 1)
            certificate = None
            if bounded and not ideal.vanishes:
                certificate = f"resolution tops {verdict.tops}; {ideal.worst.describe()}"
                self.logger.warning(f"Counterexample candidate {x} for {subcat.label}")
            records.append(self._record(
                "hunt", subcat, x, pd=verdict.label, ideal_dimension=ideal.dimension,
                premise=bounded, conclusion=ideal.vanishes,
                vacuous=not bounded,
                agreement=not ideal.vanishes or bounded,
                witness=certificate,
            ))
        return records

    # Model cross-validation

    def model(self, ranks: Sequence[int], orbits: Sequence[int]) -> SuiteReport:
        started = time.perf_counter()
        tasks = []
        for orbit in orbits:
            for rank in ranks:
                tasks.append(lambda rank=rank, orbit=orbit: self._model_instance(self.category(rank, orbit)))
        records = self.dispatch(tasks)
        return self.finish("model", ranks, orbits, records, started)

    def _model_instance(self, category: ClusterCategory) -> List[InstanceRecord]:
        rank, orbit = category.rank, category.orbit
        model = polygon_model(category)

        def record(statement: str, agreement: bool, detail: str) -> InstanceRecord:
            return InstanceRecord(statement=statement, rank=rank, orbit=orbit, subcategory="all",
                                  target=f"A_{rank}", agreement=agreement, detail=detail)

        records = []
        count = len(category.indecomposables)
        expected = indecomposable_count(rank, orbit)
        records.append(record("indecomposable-count", count == expected, f"{count} of {expected}"))
        angulations = enumerate_angulations(model.size, orbit)
        catalan = fuss_catalan(rank, orbit)
        records.append(record("angulation-count", len(angulations) == catalan, f"{len(angulations)} of {catalan}"))
        tilting = higher_cluster_tilting(category, orbit + 1)
        records.append(record("enumeration", len(tilting) == catalan, f"{len(tilting)} of {catalan}"))
        if orbit == 1:
            mismatches = sum(1 for first in model.arcs for second in model.arcs
                             if category.ext_dimension(model.arc_to_object(first), model.arc_to_object(second), 1)
                             != crossing_number(first, second))
            records.append(record("ext-crossing", mismatches == 0, f"{mismatches} mismatched arc pairs"))
        failures = 0
        for x in category.indecomposables:
            for y in category.indecomposables:
                for i in range(0, orbit + 2):
                    if category.ext_dimension(x, y, i) != category.ext_dimension(y, x, orbit + 1 - i):
                        failures += 1
        records.append(record("serre-duality", failures == 0, f"{failures} asymmetric triples"))
        return records

    # Verdict tables

    def verdict_table(self, rank: int, orbit: int, field=None) -> Dict[Tuple[str, str], Tuple[str, int]]:
        """(T, X) -> (pd H X, dim I_X(T[1])) for every cluster-tilting T and indecomposable X."""
        category = self.category(rank, orbit, field)
        table = {}
        for subcat in higher_cluster_tilting(category, orbit + 1):
            ctx = self.context(subcat)
            shifted = subcat.shifted(1)
            for x in category.indecomposables:
                obj = CObject.of(x)
                verdict = ctx.pd(obj)
                ideal = ideal_vanishes(category, obj, shifted, shifted, exhaustive=True)
                table[(subcat.label, str(x))] = (verdict.label, ideal.dimension)
        return table

    def field_independence(self, ranks: Sequence[int], fields: Iterable[str] = ("32003", "101", "rational")
                           ) -> SuiteReport:
        started = time.perf_counter()
        fields = list(fields)
        records = []
        for rank in ranks:
            tables = {tag: self.verdict_table(rank, 1, tag) for tag in fields}
            keys = sorted(set().union(*(table.keys() for table in tables.values())))
            for subcategory, target in keys:
                cells = [tables[tag].get((subcategory, target)) for tag in fields]
                detail = "; ".join(f"{tag}: {cell}" for tag, cell in zip(fields, cells))
                records.append(InstanceRecord(
                    statement="field-independence", rank=rank, orbit=1, subcategory=subcategory,
                    target=target, pd=cells[0][0] if cells[0] else None,
                    ideal_dimension=cells[0][1] if cells[0] else None,
                    agreement=all(cell == cells[0] for cell in cells), detail=detail,
                ))
        records.sort(key=lambda record: record.sort_key())
        return self.finish("field-independence", ranks, [1], records, started)

    def pd_table(self, ranks: Sequence[int], orbits: Sequence[int]) -> SuiteReport:
        started = time.perf_counter()
        records = []
        for orbit in orbits:
            for rank in ranks:
                for (subcategory, target), (label, dimension) in sorted(self.verdict_table(rank, orbit).items()):
                    records.append(InstanceRecord(
                        statement="pd-table", rank=rank, orbit=orbit, subcategory=subcategory, target=target,
                        pd=label, ideal_dimension=dimension,
                    ))
        records.sort(key=lambda record: record.sort_key())
        return self.finish("pd-table", ranks, orbits, records, started)
