"""
Report Models

This module provides the pydantic models for suite reports: one record per
checked instance, the parameter echo, summary counts and the report itself.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

__version__ = "1.0.0"
SCHEMA_VERSION = 1

PASS = "PASS"
FAIL = "FAIL"
WARN = "WARN"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
NO_COUNTEREXAMPLE = "NO-COUNTEREXAMPLE-AT-SCALE"

EXIT_CODES = {
    PASS: 0,
    NO_COUNTEREXAMPLE: 0,
    FAIL: 1,
    COUNTEREXAMPLE: 2,
    WARN: 3,
}


class InstanceRecord(BaseModel):
    """One checked instance: a statement evaluated on (T, X)."""

    statement: str
    rank: int
    orbit: int
    subcategory: str
    target: str
    pd: Optional[str] = None
    ideal_dimension: Optional[int] = None
    premise: Optional[bool] = None
    conclusion: Optional[bool] = None
    vacuous: bool = False
    agreement: bool = True
    witness: Optional[str] = None
    detail: Optional[str] = None

    def sort_key(self) -> tuple:
        return (self.statement, self.rank, self.orbit, self.subcategory, self.target)


class SuiteParameters(BaseModel):
    ranks: List[int]
    orbits: List[int]
    field: str
    depth: Optional[int] = None
    seed: int = 0
    decomposable_sample: int = 0


class SuiteSummary(BaseModel):
    instances: int = 0
    agreements: int = 0
    disagreements: int = 0
    vacuous: int = 0
    indeterminate: int = 0
    counterexamples: int = 0
    by_statement: Dict[str, int] = Field(default_factory=dict)
    non_vacuous_by_statement: Dict[str, int] = Field(default_factory=dict)


class SuiteReport(BaseModel):
    """A finished suite run; records are kept sorted by instance key."""

    schema_version: int = SCHEMA_VERSION
    version: str = __version__
    suite: str
    statements: Dict[str, str] = Field(default_factory=dict)
    parameters: SuiteParameters
    status: str = PASS
    summary: SuiteSummary = Field(default_factory=SuiteSummary)
    records: List[InstanceRecord] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    elapsed_seconds: Optional[float] = None

    @property
    def exit_code(self) -> int:
        code = EXIT_CODES.get(self.status, 1)
        if code == 0 and self.summary.indeterminate:
            return EXIT_CODES[WARN]
        return code

    def failures(self) -> List[InstanceRecord]:
        return [record for record in self.records if not record.agreement]
