"""
Output records for the command-line front end

pydantic models describing what the CLI prints. Infinite parameters and
non-finite diagnostics are written as the strings "inf", "-inf" and "nan"
so the JSON stays strict.
"""

import math
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .operator import OperatorParams
from .results import EvalResult, IdentityReport

#: A float, or its text form when it is not finite.
JsonNumber = Union[float, str]

CSV_COLUMNS = ["x", "value", "abs_err", "method"]


def json_number(value: float) -> JsonNumber:
    """Keep finite floats, spell out infinities and NaN"""
    value = float(value)
    if math.isfinite(value):
        return value
    return str(value)


def params_record(params: OperatorParams) -> Dict[str, Any]:
    return {key: json_number(v) if isinstance(v, float) else v for key, v in params.to_dict().items()}


class OutputRecord(BaseModel):
    """One evaluation point"""
    model_config = ConfigDict(populate_by_name=True)

    x: float
    value: float
    abs_error_estimate: float = Field(alias="abs_err")
    method: str

    @classmethod
    def from_result(cls, x: float, result: EvalResult) -> "OutputRecord":
        return cls(x=x, value=result.value, abs_err=result.abs_error_estimate, method=result.method.value)


class EvalReport(BaseModel):
    params: Dict[str, Any]
    function: str
    results: List[OutputRecord]


class ClassifyReport(BaseModel):
    reduction: str
    params: Dict[str, Any]
    classical: Optional[Dict[str, Any]] = None


class CaseReport(BaseModel):
    """One verification case, field for field as its IdentityReport"""
    case: int
    lhs: JsonNumber
    rhs: JsonNumber
    abs_diff: JsonNumber
    rel_diff: JsonNumber
    tolerance_used: float
    passed: bool
    relation: str
    note: Optional[str] = None

    @classmethod
    def from_report(cls, case: int, report: IdentityReport) -> "CaseReport":
        return cls(
            case=case,
            lhs=json_number(report.lhs),
            rhs=json_number(report.rhs),
            abs_diff=json_number(report.abs_diff),
            rel_diff=json_number(report.rel_diff),
            tolerance_used=report.tolerance_used,
            passed=report.passed,
            relation=report.relation,
            note=report.note,
        )


class SuiteSummary(BaseModel):
    """Pass counts and the worst relative difference of one verification suite"""
    suite: str
    cases: int
    passed: int
    worst_rel_diff: JsonNumber
    reports: List[CaseReport] = Field(default_factory=list)

    @classmethod
    def from_reports(cls, suite: str, reports: List[IdentityReport]) -> "SuiteSummary":
        worst = max((r.rel_diff for r in reports), default=0.0)
        return cls(
            suite=suite,
            cases=len(reports),
            passed=sum(1 for r in reports if r.passed),
            worst_rel_diff=json_number(worst),
            reports=[CaseReport.from_report(i, r) for i, r in enumerate(reports)],
        )

    @property
    def failures(self) -> List[CaseReport]:
        return [r for r in self.reports if not r.passed]

    @property
    def all_passed(self) -> bool:
        return self.passed == self.cases

    def line(self) -> str:
        worst = self.worst_rel_diff
        worst_text = f"{worst:.2e}" if isinstance(worst, float) else worst
        return f"{self.suite}: {self.passed}/{self.cases} pass, worst rel_diff = {worst_text}"


class VerifyReport(BaseModel):
    seed: int
    suites: List[SuiteSummary]

    @property
    def all_passed(self) -> bool:
        return all(s.all_passed for s in self.suites)
