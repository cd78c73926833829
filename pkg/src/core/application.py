"""
fracint application core

Facade the command line talks to: evaluation over a set of points,
classification, norms, the boundedness constant and the verification
suites, each returning a record ready for output.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Iterable, Optional

from ..config import Config
from ..models.functions import FunctionSpec
from ..models.operator import ClassicalReduction, OperatorParams
from ..models.records import ClassifyReport, EvalReport, OutputRecord, VerifyReport, json_number, params_record
from ..models.results import EvalMethod, SpaceParams
from ..services.verification import VerificationRunner
from .analysis import bound_constant_K, xpc_norm
from .evaluator import evaluate
from .operator_model import classify, validate

logger = logging.getLogger(__name__)


def classical_form(reduction: ClassicalReduction, params: OperatorParams) -> Optional[Dict[str, Any]]:
    """Parameters of the classical operator a tuple reduces to, None for the general case"""
    R = ClassicalReduction
    order = params.alpha
    if reduction is R.RIEMANN_LIOUVILLE:
        return {"operator": "riemann-liouville", "order": order, "terminal": json_number(params.a)}
    if reduction is R.KATUGAMPOLA:
        return {"operator": "katugampola", "order": order, "rho": params.rho, "terminal": json_number(params.a)}
    if reduction is R.ERDELYI_KOBER:
        return {"operator": "erdelyi-kober", "order": order, "rho": params.rho, "eta": params.eta,
                "terminal": json_number(params.a)}
    if reduction is R.WEYL_TYPE:
        return {"operator": "weyl", "order": order, "terminal": json_number(params.a)}
    if reduction is R.LIOUVILLE_TYPE:
        return {"operator": "liouville", "order": order, "rho": params.rho, "eta": params.eta,
                "kappa": params.kappa, "terminal": json_number(params.b)}
    return None


class FracIntApp:
    """
    Main application class for fracint.

    Holds the configuration and turns library results into the records the
    command line prints.
    """

    def __init__(self):
        """Initialize the application"""
        self.config = Config()
        if not self.config.validate():
            logger.warning("Continuing with unusable configuration values")
        logger.debug("FracIntApp initialized")

    def evaluate(
        self,
        params: OperatorParams,
        f: FunctionSpec,
        points: Iterable[float],
        *,
        tol: Optional[float] = None,
        method: Optional[EvalMethod] = None,
    ) -> EvalReport:
        """Evaluate the operator at every point, in order"""
        validate(params)
        records = []
        for x in points:
            result = evaluate(params, f, float(x), tol=tol, method=method)
            logger.debug(f"x={x}: {result}")
            records.append(OutputRecord.from_result(float(x), result))
        return EvalReport(params=params_record(params), function=f.to_text(), results=records)

    def classify(self, params: OperatorParams) -> ClassifyReport:
        reduction = classify(params)
        return ClassifyReport(
            reduction=reduction.value,
            params=params_record(params),
            classical=classical_form(reduction, params),
        )

    def norm(self, f: FunctionSpec, space: SpaceParams, a: float, b: float) -> float:
        return xpc_norm(f, space, a, b)

    def kconst(self, params: OperatorParams, space: SpaceParams, a: float, b: float) -> float:
        return bound_constant_K(params, space, a, b)

    def verify(self, suite: str = "all", seed: int = 0, cases: Optional[int] = None) -> VerifyReport:
        logger.info(f"Running verification suite {suite} with seed {seed}")
        return VerificationRunner(seed, cases).run(suite)
