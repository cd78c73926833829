"""
Parameter-level operations on generalized fractional integrals

Validation, classification into the classical operators, the shift rule
and the semigroup composition rule. Pure parameter arithmetic; no
quadrature happens here.
"""

import logging
import math

from ..models.errors import (
    BadDomain,
    EtaTooSmall,
    IncompatibleComposition,
    MismatchedRhoOrSide,
    NonFiniteParameter,
    NonPositiveAlpha,
    NonPositiveRho,
)
from ..models.operator import ClassicalReduction, OperatorParams, Side

logger = logging.getLogger(__name__)


def validate(params: OperatorParams) -> None:
    """Raise if the tuple does not describe a real-valued operator.

    Raises:
        NonPositiveAlpha: alpha <= 0 or not finite
        NonPositiveRho: rho <= 0 or not finite
        NonFiniteParameter: beta, eta, kappa or omega is NaN or infinite,
            or omega is missing for the general right operator
        BadDomain: a >= b, a finite and negative, or a = -inf with rho != 1
            or eta != 0
        EtaTooSmall: left operator from a = 0 with eta <= -1
    """
    if not (math.isfinite(params.alpha) and params.alpha > 0.0):
        raise NonPositiveAlpha(f"alpha must be positive, got {params.alpha}")
    if not (math.isfinite(params.rho) and params.rho > 0.0):
        raise NonPositiveRho(f"rho must be positive, got {params.rho}")

    for name in ("beta", "eta", "kappa"):
        if not math.isfinite(getattr(params, name)):
            raise NonFiniteParameter(f"{name} must be finite, got {getattr(params, name)}")
    if params.side is Side.RIGHT_GENERAL:
        if params.omega is None or not math.isfinite(params.omega):
            raise NonFiniteParameter(f"the general right operator needs a finite omega, got {params.omega}")

    a, b = params.a, params.b
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise BadDomain(f"need a < b, got [{a}, {b}]")
    if math.isfinite(a) and a < 0.0:
        raise BadDomain(f"a finite lower terminal must be >= 0, got {a}")
    if a == -math.inf and params.rho != 1.0:
        raise BadDomain(f"a = -inf is only defined for rho = 1, got rho = {params.rho}")
    if a == -math.inf and params.eta != 0.0:
        raise BadDomain(f"a = -inf needs eta = 0 (tau**eta is complex for tau < 0), got {params.eta}")

    if params.side is Side.LEFT and a == 0.0 and params.eta <= -1.0:
        raise EtaTooSmall(f"a = 0 needs eta > -1 for integrability at the origin, got {params.eta}")


def classify(params: OperatorParams) -> ClassicalReduction:
    """Name the classical operator the tuple reduces to.

    Exact comparisons, first match wins: Weyl type (a = -inf), Liouville
    type (right-sided, b = inf), Riemann-Liouville (rho = 1, eta = kappa =
    0, any beta), Erdelyi-Kober (beta = 0, kappa = -rho (alpha + eta)),
    Katugampola (beta = alpha, eta = kappa = 0, rho != 1), else general.
    The Hadamard operator is a limit rho -> 0+ and is never returned.
    """
    validate(params)

    if params.a == -math.inf:
        return ClassicalReduction.WEYL_TYPE
    if params.side.is_right and params.b == math.inf:
        return ClassicalReduction.LIOUVILLE_TYPE

    # the general right form only reduces when x^omega is the usual x^(rho eta)
    if params.side is Side.RIGHT_GENERAL and params.omega != params.rho * params.eta:
        return ClassicalReduction.GENERAL

    alpha, beta, rho, eta, kappa = params.alpha, params.beta, params.rho, params.eta, params.kappa
    if rho == 1.0 and eta == 0.0 and kappa == 0.0:
        return ClassicalReduction.RIEMANN_LIOUVILLE
    if beta == 0.0 and kappa == -rho * (alpha + eta):
        return ClassicalReduction.ERDELYI_KOBER
    if beta == alpha and eta == 0.0 and kappa == 0.0 and rho != 1.0:
        return ClassicalReduction.KATUGAMPOLA
    return ClassicalReduction.GENERAL


def shift_params(params: OperatorParams, gamma: float) -> OperatorParams:
    """Absorb a power of x multiplying the integrand into the parameters.

    Left: I(t^(rho gamma) f) = I' f with eta' = eta + gamma.
    Right: I(t^gamma f) = I' f with kappa' = kappa + gamma.
    """
    validate(params)
    if params.side is Side.LEFT:
        shifted = params.with_changes(eta=params.eta + gamma)
    else:
        shifted = params.with_changes(kappa=params.kappa + gamma)
    validate(shifted)
    return shifted


def compose_params(outer: OperatorParams, inner: OperatorParams) -> OperatorParams:
    """Parameters of outer o inner under the semigroup law.

    Left: needs inner.kappa == -rho * outer.eta; gives (a1 + a2, b1 + b2,
    inner.eta, outer.kappa). Right: needs outer.kappa == -rho * inner.eta
    (== -inner.omega for the general right form); gives (a1 + a2, b1 + b2,
    outer.eta, inner.kappa).

    Raises:
        MismatchedRhoOrSide: different rho, side or domain
        IncompatibleComposition: the matching condition fails
    """
    validate(outer)
    validate(inner)
    if outer.rho != inner.rho or outer.side is not inner.side or outer.domain != inner.domain:
        raise MismatchedRhoOrSide(
            f"cannot compose {outer.side.value} rho={outer.rho} on {outer.domain} "
            f"with {inner.side.value} rho={inner.rho} on {inner.domain}"
        )

    rho = outer.rho
    alpha = outer.alpha + inner.alpha
    beta = outer.beta + inner.beta

    if outer.side is Side.LEFT:
        required = -rho * outer.eta
        if inner.kappa != required:
            raise IncompatibleComposition(f"inner kappa must equal -rho*outer.eta = {required}, got {inner.kappa}")
        composed = outer.with_changes(alpha=alpha, beta=beta, eta=inner.eta, kappa=outer.kappa)
    else:
        if outer.side is Side.RIGHT_GENERAL:
            required = -inner.omega
            label = "-inner.omega"
        else:
            required = -rho * inner.eta
            label = "-rho*inner.eta"
        if outer.kappa != required:
            raise IncompatibleComposition(f"outer kappa must equal {label} = {required}, got {outer.kappa}")
        composed = outer.with_changes(alpha=alpha, beta=beta, eta=outer.eta, kappa=inner.kappa)

    logger.debug(f"Composed {outer} with {inner} into {composed}")
    return composed


def matching_inner(outer: OperatorParams, alpha: float, beta: float, eta: float) -> OperatorParams:
    """Left operator that composes with ``outer`` from the inside (kappa = -rho * outer.eta)"""
    return outer.with_changes(alpha=alpha, beta=beta, eta=eta, kappa=-outer.rho * outer.eta)


def matching_outer(inner: OperatorParams, alpha: float, beta: float, eta: float) -> OperatorParams:
    """Right operator that composes with ``inner`` from the outside"""
    if inner.side is Side.RIGHT_GENERAL:
        kappa = -inner.omega
    else:
        kappa = -inner.rho * inner.eta
    return inner.with_changes(alpha=alpha, beta=beta, eta=eta, kappa=kappa)
