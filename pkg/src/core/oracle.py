"""
Brute-force reference values

The oracle integrates the left operator in the original variable tau, on
graded meshes toward both endpoints, with Gauss-Legendre panels only. It
never builds a Gauss-Jacobi rule and never substitutes u = (tau/x)**rho, so
agreement with the evaluator is independent evidence.

Textbook antiderivative identities for power, logarithmic and exponential
integrands are collected in :func:`oracle_closed_forms`.
"""

import logging
import math
from enum import Enum
from typing import Optional

import numpy as np

from ..config import config
from ..models.errors import ArgsOutOfRange, BadDomain, MismatchedRhoOrSide, XOutOfDomain
from ..models.functions import FunctionSpec
from ..models.operator import OperatorParams, Side
from ..models.results import OracleConfig, QuadratureEstimate
from .operator_model import validate
from .quadrature import SingularEnd, graded_mesh_singular
from .special_functions import gamma

logger = logging.getLogger(__name__)


def default_oracle_config() -> OracleConfig:
    return OracleConfig(config.ORACLE_PANELS, config.ORACLE_PANEL_POINTS, config.ORACLE_REFINEMENT_LEVELS)


def oracle_eval_left(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    cfg: Optional[OracleConfig] = None,
) -> QuadratureEstimate:
    """Left operator by graded meshes in the original variable.

    [a, x] is split at its midpoint. The lower half is graded toward a (only
    singular when a = 0), the upper half toward x with strength alpha - 1,
    integrated in the distance x - tau so the kernel stays accurate next to
    the singularity. Each refinement level doubles the panel count; the
    error estimate is the difference of the last two levels.
    """
    validate(params)
    cfg = cfg or default_oracle_config()
    if params.side is not Side.LEFT:
        raise MismatchedRhoOrSide("the oracle evaluates left operators only")
    a = params.a
    if not math.isfinite(a):
        raise BadDomain("the oracle needs a finite lower terminal")
    if not params.domain.contains(x):
        raise XOutOfDomain(f"x = {x} is not strictly inside ({a}, {params.b})")

    alpha, rho, eta = params.alpha, params.rho, params.eta
    inner_exponent = rho * (eta + 1.0) - 1.0
    x_rho = x ** rho
    middle = a + 0.5 * (x - a)

    def lower(tau):
        return tau ** inner_exponent * (x_rho - tau ** rho) ** (alpha - 1.0) * f(tau)

    def upper(s):
        tau = x - s
        gap = -x_rho * np.expm1(rho * np.log1p(-s / x))
        return tau ** inner_exponent * gap ** (alpha - 1.0) * f(tau)

    lower_strength = inner_exponent + f.split_power()[0] if a == 0.0 else 0.0

    levels = []
    evaluations = 0
    for level in range(cfg.refinement_levels):
        panels = (cfg.n_panels // 2) * 2 ** level
        lo_part = graded_mesh_singular(
            lower, a, middle, SingularEnd.LO, lower_strength, panels, points=cfg.per_panel_points
        )
        hi_part = graded_mesh_singular(
            upper, 0.0, x - middle, SingularEnd.LO, alpha - 1.0, panels,
            points=cfg.per_panel_points, distance_form=True,
        )
        levels.append(lo_part.value + hi_part.value)
        evaluations += lo_part.evaluations + hi_part.evaluations

    prefactor = rho ** (1.0 - params.beta) * x ** params.kappa / gamma(alpha)
    error = abs(levels[-1] - levels[-2])
    logger.debug(f"Oracle levels for {f} at x={x}: {levels}")
    return QuadratureEstimate(prefactor * levels[-1], abs(prefactor) * error, evaluations)


class ClosedFormName(Enum):
    RL_POWER = "rl-power"
    HADAMARD_CONST = "hadamard-const"
    GEN_POWER = "gen-power"
    HADAMARD_LOG_POWER = "hadamard-log-power"
    WEYL_EXP = "weyl-exp"
    LIOUVILLE_EXP = "liouville-exp"


_REQUIRED_ARGS = {
    ClosedFormName.RL_POWER: ("alpha", "mu", "x"),
    ClosedFormName.HADAMARD_CONST: ("alpha", "a", "x"),
    ClosedFormName.GEN_POWER: ("alpha", "beta", "rho", "eta", "kappa", "mu", "x"),
    ClosedFormName.HADAMARD_LOG_POWER: ("alpha", "a", "k", "x"),
    ClosedFormName.WEYL_EXP: ("alpha", "lam", "x"),
    ClosedFormName.LIOUVILLE_EXP: ("alpha", "lam", "x"),
}


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ArgsOutOfRange(message)


def oracle_closed_forms(name: ClosedFormName, **args: float) -> float:
    r"""Exact operator values for integrands with known antiderivatives.

    - RL_POWER: :math:`I^\alpha_{0+} t^\mu = \Gamma(\mu+1) / \Gamma(\mu+1+\alpha) x^{\mu+\alpha}`
    - HADAMARD_CONST: :math:`(\log(x/a))^\alpha / \Gamma(\alpha+1)` for f = 1
    - GEN_POWER: generalized left operator from 0 applied to :math:`t^\mu`
    - HADAMARD_LOG_POWER: Hadamard integral of :math:`(\log(t/a))^k`
    - WEYL_EXP: Weyl integral of :math:`e^{\lambda t}`, :math:`\lambda^{-\alpha} e^{\lambda x}`
    - LIOUVILLE_EXP: Liouville integral of :math:`e^{-\lambda t}`, :math:`\lambda^{-\alpha} e^{-\lambda x}`

    Raises:
        ArgsOutOfRange: missing arguments or arguments outside the formula's range
    """
    name = ClosedFormName(name)
    missing = [key for key in _REQUIRED_ARGS[name] if key not in args]
    _check(not missing, f"{name.value} needs {', '.join(missing)}")

    alpha = float(args["alpha"])
    x = float(args["x"])
    _check(math.isfinite(alpha) and alpha > 0.0, f"alpha must be positive, got {alpha}")

    if name is ClosedFormName.RL_POWER:
        mu = float(args["mu"])
        _check(mu > -1.0 and x > 0.0, f"rl-power needs mu > -1 and x > 0, got mu={mu}, x={x}")
        return gamma(mu + 1.0) / gamma(mu + 1.0 + alpha) * x ** (mu + alpha)

    if name is ClosedFormName.HADAMARD_CONST:
        a = float(args["a"])
        _check(0.0 < a < x, f"hadamard-const needs 0 < a < x, got a={a}, x={x}")
        return math.log(x / a) ** alpha / gamma(alpha + 1.0)

    if name is ClosedFormName.GEN_POWER:
        rho, eta, mu = float(args["rho"]), float(args["eta"]), float(args["mu"])
        _check(rho > 0.0 and x > 0.0, f"gen-power needs rho > 0 and x > 0, got rho={rho}, x={x}")
        z = eta + mu / rho + 1.0
        _check(z > 0.0, f"gen-power needs eta + mu/rho > -1, got {z - 1.0}")
        exponent = float(args["kappa"]) + rho * (alpha + eta) + mu
        return rho ** (-float(args["beta"])) * x ** exponent * gamma(z) / gamma(z + alpha)

    if name is ClosedFormName.HADAMARD_LOG_POWER:
        a, k = float(args["a"]), float(args["k"])
        _check(0.0 < a < x and k >= 0.0, f"hadamard-log-power needs 0 < a < x and k >= 0, got a={a}, k={k}")
        return math.log(x / a) ** (k + alpha) * gamma(k + 1.0) / gamma(k + alpha + 1.0)

    lam = float(args["lam"])
    _check(lam > 0.0, f"{name.value} needs lam > 0, got {lam}")
    if name is ClosedFormName.WEYL_EXP:
        return lam ** (-alpha) * math.exp(lam * x)
    return lam ** (-alpha) * math.exp(-lam * x)
