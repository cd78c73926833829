"""
Result records shared by the numerical modules
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import ArgsOutOfRange


class EvalMethod(Enum):
    """How an operator value was obtained"""
    JACOBI_SPECTRAL = "jacobi-spectral"
    GRADED_MESH = "graded-mesh"
    CLOSED_FORM = "closed-form"
    INFINITE_TRANSFORM = "infinite-transform"


@dataclass(frozen=True)
class QuadratureEstimate:
    value: float
    abs_error_estimate: float
    evaluations: int
    #: Set when an interval hit the bisection depth cap or the interval budget.
    depth_exceeded: bool = False


@dataclass(frozen=True)
class EvalResult:
    value: float
    abs_error_estimate: float
    method: EvalMethod


@dataclass(frozen=True)
class SpaceParams:
    r"""Weighted space :math:`X^p_c(a, b)`.

    Norm :math:`\left(\int_a^b |x^c f(x)|^p \,\mathrm{d}x / x\right)^{1/p}`,
    or the supremum of :math:`|x^c f(x)|` when ``p`` is infinite.
    """
    p: float
    c: float

    def __post_init__(self):
        if math.isnan(self.p) or self.p < 1.0:
            raise ArgsOutOfRange(f"p must be in [1, inf], got {self.p}")

    @classmethod
    def lebesgue(cls, p: float) -> "SpaceParams":
        """X^p_{1/p} coincides with the unweighted L^p"""
        return cls(p, 0.0 if math.isinf(p) else 1.0 / p)

    @property
    def is_sup(self) -> bool:
        return math.isinf(self.p)


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one numerical identity or inequality check.

    For equalities ``passed`` holds iff ``rel_diff <= tolerance_used``, or
    ``abs_diff <= tolerance_used`` when ``|rhs| < 1e-14``. For the
    inequality ``lhs <= rhs`` (relation ``"<="``), ``rel_diff`` is the
    relative excess ``max(0, lhs - rhs) / |rhs|``.
    """
    lhs: float
    rhs: float
    abs_diff: float
    rel_diff: float
    tolerance_used: float
    passed: bool
    relation: str = "=="
    note: Optional[str] = None


#: Below this magnitude the right-hand side is compared absolutely.
TINY_RHS = 1e-14


def compare_equal(lhs: float, rhs: float, tolerance: float, note: Optional[str] = None) -> IdentityReport:
    abs_diff = abs(lhs - rhs)
    if abs(rhs) < TINY_RHS:
        rel_diff = abs_diff
        passed = abs_diff <= tolerance
    else:
        rel_diff = abs_diff / abs(rhs)
        passed = rel_diff <= tolerance
    return IdentityReport(lhs, rhs, abs_diff, rel_diff, tolerance, bool(passed), "==", note)


def compare_at_most(lhs: float, rhs: float, tolerance: float, note: Optional[str] = None) -> IdentityReport:
    abs_diff = abs(lhs - rhs)
    excess = max(0.0, lhs - rhs)
    rel_diff = excess / abs(rhs) if rhs != 0.0 else excess
    return IdentityReport(lhs, rhs, abs_diff, rel_diff, tolerance, bool(rel_diff <= tolerance), "<=", note)


def failed_report(tolerance: float, reason: str, relation: str = "==") -> IdentityReport:
    """Report for a check that raised before both sides were available"""
    nan = float("nan")
    return IdentityReport(nan, nan, nan, math.inf, tolerance, False, relation, reason)


@dataclass(frozen=True)
class OracleConfig:
    n_panels: int = 64
    per_panel_points: int = 15
    refinement_levels: int = 3

    def __post_init__(self):
        if self.n_panels < 8:
            raise ArgsOutOfRange(f"oracle needs n_panels >= 8, got {self.n_panels}")
        if self.refinement_levels < 2:
            raise ArgsOutOfRange(f"oracle needs refinement_levels >= 2, got {self.refinement_levels}")
        if self.per_panel_points < 2:
            raise ArgsOutOfRange(f"oracle needs per_panel_points >= 2, got {self.per_panel_points}")
