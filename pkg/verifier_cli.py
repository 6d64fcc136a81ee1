#!/usr/bin/env python3
"""
Verifier Command Line

This module provides the click command group of the workbench: running
verification suites, the conjecture hunt, pd tables and AR quiver export.

Exit codes: 0 PASS (or no counterexample at scale), 1 FAIL, 2 COUNTEREXAMPLE,
3 warnings or indeterminate verdicts, 4 bad parameters, 5 export failure.
"""

import logging
import os
import sys
from typing import List, Optional

import click
from dotenv import load_dotenv

from lab_config import LabConfig
from lab_errors import IncompatibleParameters, LabError
from lab_logging import configure_logging
from polygon_oracle import polygon_model
from report_exporter import ar_quiver_to_dot, export_report, render, write_text
from report_models import SuiteReport
from suite_runner import SuiteRunner
from tilting_manager import subcat_from_angulation

logger = logging.getLogger(__name__)

SUITES = ["main-theorem", "section3", "section5", "model", "field-independence"]


def parse_range(raw: str) -> List[int]:
    """'3' -> [3]; '2-4' -> [2, 3, 4]; '1,3' -> [1, 3]."""
    values: List[int] = []
    try:
        for part in raw.split(","):
            part = part.strip()
            if "-" in part:
                low, high = (int(piece) for piece in part.split("-", 1))
                values.extend(range(low, high + 1))
            elif part:
                values.append(int(part))
    except ValueError:
        raise IncompatibleParameters(f"{raw!r} is not a value or range like 2-4")
    if not values or min(values) < 1:
        raise IncompatibleParameters(f"{raw!r} must name positive integers")
    return sorted(set(values))


def _emit(report: SuiteReport, out: Optional[str], format_type: str) -> None:
    if out:
        export_report(report, out, format_type)
        click.echo(f"{report.suite}: {report.status} ({report.summary.instances} instances) -> {out}")
    else:
        click.echo(render(report, format_type), nl=False)
        click.echo(f"{report.suite}: {report.status} ({report.summary.instances} instances)", err=True)


def _finish(report: SuiteReport) -> None:
    for record in report.failures()[:10]:
        click.echo(f"disagreement: {record.statement} T={record.subcategory} X={record.target} "
                   f"pd={record.pd} {record.witness or ''}", err=True)
    sys.exit(report.exit_code)


def _runner(ctx: click.Context, field: Optional[str], depth: Optional[int], seed: Optional[int] = None,
            workers: Optional[int] = None) -> SuiteRunner:
    return SuiteRunner(ctx.obj["config"], field=field, depth=depth, seed=seed, workers=workers)


def _guard(action):
    """Run an action, mapping workbench errors to their exit codes."""
    try:
        action()
    except LabError as e:
        click.echo(f"Error: {e.message}", err=True)
        sys.exit(e.exit_code)


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Log progress at INFO level')
@click.pass_context
def cli(ctx: click.Context, verbose: bool):
    """Type-A cluster category verification workbench."""
    load_dotenv()
    try:
        config = LabConfig.from_env()
        configure_logging(config.logging, verbose=verbose)
    except LabError as e:
        click.echo(f"Error: {e.message}", err=True)
        sys.exit(e.exit_code)
    ctx.ensure_object(dict)
    ctx.obj["config"] = config


@cli.command()
@click.argument('suite_id', type=click.Choice(SUITES))
@click.option('--n', 'ranks', default='2-3', help='Rank or range of ranks, e.g. 2-4')
@click.option('--m', 'orbits', default='1', help='Orbit parameter or range')
@click.option('--field', default=None, help='Prime p or "rational"')
@click.option('--depth', type=int, default=None, help='Resolution depth (default 2n + 4)')
@click.option('--seed', type=int, default=None, help='Seed for sampled decomposables')
@click.option('--workers', type=int, default=None, help='Worker threads')
@click.option('--out', default=None, help='Output file (stdout when omitted)')
@click.option('--format', 'format_type', type=click.Choice(['json', 'csv']), default='json')
@click.pass_context
def verify(ctx, suite_id, ranks, orbits, field, depth, seed, workers, out, format_type):
    """Run a verification suite."""
    def action():
        runner = _runner(ctx, field, depth, seed, workers)
        report = runner.run(suite_id, parse_range(ranks), parse_range(orbits))
        _emit(report, out, format_type)
        _finish(report)

    _guard(action)


@cli.command()
@click.option('--n', 'ranks', default='2-3', help='Rank or range of ranks')
@click.option('--m', 'orbits', default='2', help='Orbit parameter or range (at least 2)')
@click.option('--field', default=None, help='Prime p or "rational"')
@click.option('--depth', type=int, default=None, help='Resolution depth')
@click.option('--seed', type=int, default=None, help='Seed')
@click.option('--out', default=None, help='Output file')
@click.option('--format', 'format_type', type=click.Choice(['json', 'csv']), default='json')
@click.pass_context
def hunt(ctx, ranks, orbits, field, depth, seed, out, format_type):
    """Search for counterexamples to the converse of the pd bound."""
    def action():
        report = _runner(ctx, field, depth, seed).hunt(parse_range(ranks), parse_range(orbits))
        _emit(report, out, format_type)
        _finish(report)

    _guard(action)


@cli.command('pd-table')
@click.option('--n', 'ranks', default='3', help='Rank')
@click.option('--m', 'orbits', default='1', help='Orbit parameter')
@click.option('--field', default=None, help='Prime p or "rational"')
@click.option('--depth', type=int, default=None, help='Resolution depth')
@click.option('--out', default=None, help='Output file (a table is printed when omitted)')
@click.option('--format', 'format_type', type=click.Choice(['json', 'csv']), default='csv')
@click.pass_context
def pd_table(ctx, ranks, orbits, field, depth, out, format_type):
    """Print pd H X and dim I_X(T[1]) for every cluster-tilting T."""
    def action():
        report = _runner(ctx, field, depth).pd_table(parse_range(ranks), parse_range(orbits))
        if out:
            export_report(report, out, format_type)
        else:
            for record in report.records:
                click.echo(f"{record.subcategory:40} {record.target:14} pd={record.pd:6} "
                           f"dim I={record.ideal_dimension}")
        sys.exit(report.exit_code)

    _guard(action)


@cli.command('export-ar')
@click.option('--n', 'rank', type=int, default=3, help='Rank')
@click.option('--m', 'orbit', type=int, default=1, help='Orbit parameter')
@click.option('--field', default=None, help='Prime p or "rational"')
@click.option('--angulation', type=int, default=None, help='Index of an angulation whose T is highlighted')
@click.option('--out', default=None, help='DOT file (stdout when omitted)')
@click.pass_context
def export_ar(ctx, rank, orbit, field, angulation, out):
    """Write the AR quiver of the category as DOT."""
    def action():
        runner = _runner(ctx, field, None)
        category = runner.category(rank, orbit)
        highlight = None
        if angulation is not None:
            angulations = polygon_model(category).angulations()
            if not 0 <= angulation < len(angulations):
                raise IncompatibleParameters(f"angulation index {angulation} out of range 0..{len(angulations) - 1}")
            highlight = subcat_from_angulation(category, angulations[angulation]).indecomposables
        text = ar_quiver_to_dot(category, highlight)
        if out:
            write_text(out, text)
        else:
            click.echo(text, nl=False)

    _guard(action)


def main():
    cli(obj={}, prog_name=os.path.basename(sys.argv[0]) or "verifier")


if __name__ == '__main__':
    main()
