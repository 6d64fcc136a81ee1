"""
Tests for the verification suites

Status aggregation, exit codes and small end-to-end suite runs.
"""

import pytest

from cluster_category import CObject
from ideal_manager import ideal_vanishes
from lab_config import LabConfig
from lab_errors import IncompatibleParameters
from polygon_oracle import polygon_model
from report_models import (
    COUNTEREXAMPLE,
    FAIL,
    NO_COUNTEREXAMPLE,
    PASS,
    WARN,
    InstanceRecord,
    SuiteParameters,
    SuiteReport,
)
from suite_runner import SuiteRunner, overall_status, summarize
from tilting_manager import TiltingSubcat, higher_cluster_tilting, subcat_from_angulation


def record(statement="main-theorem", **values):
    return InstanceRecord(statement=statement, rank=2, orbit=1, subcategory="T", target="X", **values)


@pytest.fixture(scope="module")
def runner():
    config = LabConfig()
    config.suite.decomposable_sample = 12
    config.suite.seed = 7
    return SuiteRunner(config, field="101")


def test_summarize_counts():
    records = [
        record(pd="1"),
        record(pd="?@8"),
        record(agreement=False),
        record("hunt", premise=True, conclusion=False, vacuous=False),
        record("hunt", premise=False, vacuous=True),
    ]
    summary = summarize(records)
    assert summary.instances == 5
    assert summary.disagreements == 1
    assert summary.indeterminate == 1
    assert summary.counterexamples == 1
    assert summary.vacuous == 1
    assert summary.by_statement == {"hunt": 2, "main-theorem": 3}
    assert summary.non_vacuous_by_statement == {"hunt": 1, "main-theorem": 3}


def test_overall_status():
    assert overall_status(summarize([record()])) == PASS
    assert overall_status(summarize([record(agreement=False)])) == FAIL
    assert overall_status(summarize([])) == WARN
    assert overall_status(summarize([record(vacuous=True)])) == WARN
    hits = summarize([record("hunt", premise=True, conclusion=False)])
    assert overall_status(hits, hunt=True) == COUNTEREXAMPLE
    assert overall_status(summarize([record("hunt")]), hunt=True) == NO_COUNTEREXAMPLE


def test_indeterminate_verdicts_warn_on_exit():
    records = [record(pd="?@8")]
    summary = summarize(records)
    report = SuiteReport(suite="x", parameters=SuiteParameters(ranks=[2], orbits=[1], field="101"),
                         status=overall_status(summary), summary=summary, records=records)
    assert report.status == PASS
    assert report.exit_code == 3


def test_depth_defaults_to_rank_formula(runner):
    assert runner.depth_for(3) == 10
    assert SuiteRunner(LabConfig(), field="101", depth=5).depth_for(3) == 5


def test_categories_are_reused(runner):
    assert runner.category(2, 1) is runner.category(2, 1)
    assert runner.category(2, 1, "rational") is not runner.category(2, 1)


def test_model_suite_passes(runner):
    report = runner.run("model", [2, 3], [1, 2])
    assert report.status == PASS
    assert report.exit_code == 0
    assert report.summary.by_statement["serre-duality"] == 4
    assert "ext-crossing" in report.statements


def test_main_theorem_on_a2(runner):
    report = runner.main_theorem([2])
    assert report.status == PASS, report.failures()[:3]
    statements = report.summary.by_statement
    # five cluster-tilting subcategories, three indecomposables outside T[1] each
    assert statements["main-theorem"] == 15
    assert statements["gorenstein"] == 5
    assert statements["x-bar"] == 12
    assert report.parameters.decomposable_sample == 12


def test_rigid_variant_reports_total_ideal_dimension(runner):
    category = runner.category(3, 1)
    subcat = subcat_from_angulation(category, polygon_model(category).angulations()[0])
    names = {str(x): x for x in category.indecomposables}
    records = runner._rigid_variant(subcat)
    assert records
    for rec in records:
        dropped = names[rec.detail.removeprefix("T minus ")]
        shifted = TiltingSubcat(category, [t for t in subcat.indecomposables if t != dropped]).shifted(1)
        total = ideal_vanishes(category, CObject.of(names[rec.target]), shifted, shifted, exhaustive=True)
        assert rec.ideal_dimension == total.dimension


def test_section3_on_small_categories(runner):
    report = runner.section3([2], [1, 2])
    assert report.status != FAIL, report.failures()[:3]
    assert report.summary.by_statement["membership"] == 5 * 5 + 12 * 8


def test_field_independence(runner):
    report = runner.field_independence([2])
    assert report.status == PASS
    assert report.summary.instances == 25


def test_pd_table_lists_every_pair(runner):
    report = runner.pd_table([2], [1])
    assert len(report.records) == 25
    assert {r.pd for r in report.records} <= {"0", "1", "inf", "zero"}


def test_higher_suites_need_m_at_least_two(runner):
    with pytest.raises(IncompatibleParameters):
        runner.section5([2], [1])
    with pytest.raises(IncompatibleParameters):
        runner.hunt([2], [1])
    with pytest.raises(IncompatibleParameters):
        runner.run("nonsense", [2], [1])


@pytest.mark.slow
def test_section5_and_hunt_on_a2_m2(runner):
    report = runner.section5([2], [2])
    assert report.status != FAIL, report.failures()[:3]
    assert report.notes
    hunt = runner.hunt([2], [2])
    assert hunt.status in (NO_COUNTEREXAMPLE, COUNTEREXAMPLE)
    assert hunt.notes == ["absence of counterexamples is reported at the tested scale only"]


@pytest.mark.slow
def test_section5_covers_every_subcategory(runner):
    report = runner.section5([2], [2])
    category = runner.category(2, 2)
    found = higher_cluster_tilting(category, 3)
    strong = [t for t in found if t.strength >= 2]
    count = len(category.indecomposables)
    statements = report.summary.by_statement
    assert statements["stratum-lemma"] == len(found) * count * 3
    assert statements["pd-bound"] == len(strong) * count
    assert statements["hom-vanishing-bound"] == len(strong) * count
    assert statements["gorenstein"] == len(strong)
