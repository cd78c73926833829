"""
Seeded verification suites

Each suite draws random operators and integrands and runs one family of
identity checks from :mod:`src.core.analysis`, or compares the evaluator
against its classical reference formulas. Draws come from
``numpy.random.default_rng([seed, suite_index])``, so a suite's cases do
not depend on which other suites run. Cases run in order; a case that
raises is recorded as failed with the error text as its note.
"""

import logging
import math
from typing import Callable, Dict, List, Optional

import numpy as np

from ..config import config
from ..core.analysis import check_boundedness, check_product_integration, check_semigroup, check_shift
from ..core.evaluator import eval_classical, eval_hadamard, eval_left, evaluate
from ..core.operator_model import matching_inner, matching_outer
from ..models.errors import ArgsOutOfRange, FracIntError
from ..models.functions import Const, Exp, FunctionSpec, LogPower, Poly, Power, Sin
from ..models.operator import ClassicalReduction, Domain, OperatorParams, Side
from ..models.records import SuiteSummary, VerifyReport
from ..models.results import IdentityReport, SpaceParams, compare_equal, failed_report

logger = logging.getLogger(__name__)

SUITES = ("shift", "semigroup", "product", "bounded", "reductions", "hadamard-limit")

_HADAMARD_RHOS = (1e-1, 1e-2, 1e-3)
_MONOTONE_FLOOR = 1e-12


# Random draws

def _interval(rng: np.random.Generator):
    """(a, b, x) with 0 < a < x < b"""
    a = rng.uniform(0.1, 1.5)
    b = a + rng.uniform(0.3, 1.5)
    x = a + (b - a) * rng.uniform(0.2, 0.9)
    return a, b, x


def _function(rng: np.random.Generator, lower: float) -> FunctionSpec:
    """A catalog function, smooth on [lower, inf); lower = 0 rules out logpow"""
    kinds = ["const", "pow", "poly", "exp", "sin"]
    if lower > 0.0:
        kinds.append("logpow")
    kind = kinds[int(rng.integers(len(kinds)))]

    if kind == "const":
        return Const(rng.uniform(0.5, 2.0))
    if kind == "pow":
        return Power(rng.uniform(0.0, 3.0))
    if kind == "poly":
        return Poly(tuple(rng.uniform(-1.0, 1.0, size=3)))
    if kind == "exp":
        return Exp(rng.uniform(-1.0, 1.0))
    if kind == "sin":
        return Sin(rng.uniform(0.5, 3.0))
    return LogPower(float(rng.integers(1, 3)), 0.5 * lower)


def _positive_function(rng: np.random.Generator, lower: float) -> FunctionSpec:
    """A catalog function that stays positive on [lower, inf), lower > 0"""
    kind = int(rng.integers(4))
    if kind == 0:
        return Const(rng.uniform(0.5, 2.0))
    if kind == 1:
        return Power(rng.uniform(0.0, 3.0))
    if kind == 2:
        return Exp(rng.uniform(-1.0, 1.0))
    return LogPower(float(rng.integers(1, 3)), 0.5 * lower)


def _base_params(rng: np.random.Generator) -> Dict[str, float]:
    return {
        "alpha": rng.uniform(0.1, 2.0),
        "beta": rng.uniform(-1.0, 1.0),
        "rho": rng.uniform(0.2, 3.0),
        "eta": rng.uniform(0.0, 2.0),
        "kappa": rng.uniform(-2.0, 2.0),
    }


def _side(rng: np.random.Generator) -> Side:
    return Side.LEFT if rng.uniform() < 0.5 else Side.RIGHT


# Suites

def _shift_case(rng: np.random.Generator) -> IdentityReport:
    fields = _base_params(rng)
    side = _side(rng)
    if side is Side.LEFT and rng.uniform() < 0.25:
        x = rng.uniform(0.2, 2.0)
        params = OperatorParams(**fields, side=side)
        return check_shift(params, rng.uniform(0.0, 2.0), _function(rng, 0.0), x)

    a, b, x = _interval(rng)
    params = OperatorParams(**fields, side=side, domain=Domain(a, b))
    return check_shift(params, rng.uniform(-1.0, 2.0), _function(rng, a), x)


def _semigroup_case(rng: np.random.Generator) -> IdentityReport:
    first = _base_params(rng)
    second = _base_params(rng)
    side = _side(rng)

    if side is Side.LEFT and rng.uniform() < 0.25:
        a, b, x = 0.0, math.inf, rng.uniform(0.2, 2.0)
    else:
        a, b, x = _interval(rng)

    if side is Side.LEFT:
        outer = OperatorParams(**first, side=side, domain=Domain(a, b))
        inner = matching_inner(outer, second["alpha"], second["beta"], second["eta"])
    else:
        inner = OperatorParams(**second, side=side, domain=Domain(a, b))
        outer = matching_outer(inner, first["alpha"], first["beta"], first["eta"])
    return check_semigroup(outer, inner, _function(rng, a), x)


def _product_case(rng: np.random.Generator) -> IdentityReport:
    params = OperatorParams(**_base_params(rng))
    a, b, _ = _interval(rng)
    return check_product_integration(params, _positive_function(rng, a), _positive_function(rng, a), a, b)


def _bounded_case(rng: np.random.Generator) -> IdentityReport:
    fields = _base_params(rng)
    # the estimate uses b**(kappa + rho (alpha + eta)) >= x**(...) on [a, b]
    floor = -fields["rho"] * (fields["alpha"] + fields["eta"])
    fields["kappa"] = rng.uniform(max(-2.0, floor), 2.0)
    params = OperatorParams(**fields)

    p = (1.0, 2.0, 3.0, math.inf)[int(rng.integers(4))]
    space = SpaceParams(p, rng.uniform(-1.0, fields["rho"]))
    a, b, _ = _interval(rng)
    return check_boundedness(params, _function(rng, a), space, a, b)


def _reduction_case(rng: np.random.Generator) -> IdentityReport:
    R = ClassicalReduction
    reduction = (R.RIEMANN_LIOUVILLE, R.KATUGAMPOLA, R.ERDELYI_KOBER,
                 R.WEYL_TYPE, R.LIOUVILLE_TYPE)[int(rng.integers(5))]
    fields = _base_params(rng)
    alpha, rho = fields["alpha"], fields["rho"]

    if reduction is R.WEYL_TYPE:
        params = OperatorParams(alpha, fields["beta"], 1.0, side=Side.LEFT, domain=Domain(-math.inf, math.inf))
        f = Exp(rng.uniform(0.5, 2.0))
        x = rng.uniform(-1.0, 1.0)
    elif reduction is R.LIOUVILLE_TYPE:
        params = OperatorParams(**fields, side=Side.RIGHT, domain=Domain(0.0, math.inf))
        f = Exp(-rng.uniform(0.5, 2.0))
        x = rng.uniform(0.5, 2.0)
    else:
        if rng.uniform() < 0.5:
            a, x = 0.0, rng.uniform(0.2, 2.0)
            domain = Domain()
        else:
            a, b, x = _interval(rng)
            domain = Domain(a, b)
        f = _function(rng, a)
        if reduction is R.RIEMANN_LIOUVILLE:
            params = OperatorParams(alpha, fields["beta"], 1.0, domain=domain)
        elif reduction is R.KATUGAMPOLA:
            params = OperatorParams(alpha, alpha, rho, domain=domain)
        else:
            eta = fields["eta"]
            params = OperatorParams(alpha, 0.0, rho, eta, -rho * (alpha + eta), domain=domain)

    general = evaluate(params, f, x)
    classical = eval_classical(reduction, params, f, x)
    scale = max(abs(classical.value), 1e-300)
    tolerance = max(1e-8, 3.0 * (general.abs_error_estimate + classical.abs_error_estimate) / scale)
    return compare_equal(general.value, classical.value, tolerance, note=reduction.value)


def _hadamard_case(rng: np.random.Generator) -> IdentityReport:
    alpha = rng.uniform(0.3, 1.5)
    # a >= 1: the first-order error term keeps one sign
    a = rng.uniform(1.0, 1.5)
    x = a * rng.uniform(1.5, 2.5)
    f = _positive_function(rng, a)

    target = eval_hadamard(alpha, a, f, x)
    errors = []
    value = math.nan
    for rho in _HADAMARD_RHOS:
        params = OperatorParams(alpha, alpha, rho, domain=Domain(a, math.inf))
        value = eval_left(params, f, x).value
        errors.append(abs(value - target) / abs(target))

    monotone = all(later <= max(earlier, _MONOTONE_FLOOR) for earlier, later in zip(errors, errors[1:]))
    passed = monotone and errors[-1] <= config.HADAMARD_TOL
    note = "errors " + ", ".join(f"{e:.2e}" for e in errors)
    return IdentityReport(value, target, abs(value - target), errors[-1], config.HADAMARD_TOL,
                          passed, "==", note)


_CASES: Dict[str, Callable[[np.random.Generator], IdentityReport]] = {
    "shift": _shift_case,
    "semigroup": _semigroup_case,
    "product": _product_case,
    "bounded": _bounded_case,
    "reductions": _reduction_case,
    "hadamard-limit": _hadamard_case,
}

_TOLERANCES = {
    "shift": lambda: config.SHIFT_TOL,
    "semigroup": lambda: config.SEMIGROUP_TOL,
    "product": lambda: config.PRODUCT_TOL,
    "bounded": lambda: config.BOUNDED_SLACK,
    "reductions": lambda: 1e-8,
    "hadamard-limit": lambda: config.HADAMARD_TOL,
}


class VerificationRunner:
    """Runs verification suites for one seed"""

    def __init__(self, seed: int = 0, cases: Optional[int] = None):
        self.seed = int(seed)
        self.cases = config.VERIFY_CASES if cases is None else int(cases)
        if self.cases < 1:
            raise ArgsOutOfRange(f"cases must be >= 1, got {self.cases}")

    def run_suite(self, name: str) -> SuiteSummary:
        if name not in _CASES:
            raise ArgsOutOfRange(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")

        rng = np.random.default_rng([self.seed, SUITES.index(name)])
        case = _CASES[name]
        relation = "<=" if name == "bounded" else "=="
        reports: List[IdentityReport] = []

        for i in range(self.cases):
            try:
                report = case(rng)
            except FracIntError as e:
                logger.error(f"{name} case {i} raised {type(e).__name__}: {e}")
                report = failed_report(_TOLERANCES[name](), f"{type(e).__name__}: {e}", relation)
            if not report.passed:
                logger.warning(f"{name} case {i} failed: rel_diff={report.rel_diff:.3e} ({report.note})")
            reports.append(report)

        summary = SuiteSummary.from_reports(name, reports)
        logger.info(summary.line())
        return summary

    def run(self, suite: str = "all") -> VerifyReport:
        names = SUITES if suite == "all" else (suite,)
        return VerifyReport(seed=self.seed, suites=[self.run_suite(name) for name in names])
