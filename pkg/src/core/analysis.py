r"""
Weighted norms, the boundedness constant and identity checks

Everything here returns plain numbers or :class:`IdentityReport` records:

- :func:`xpc_norm` -- norm in :math:`X^p_c(a, b)`
- :func:`bound_constant_K` -- the constant K with
  :math:`\|I f\|_{X^p_c} \le K \|f\|_{X^p_c}`
- :func:`check_boundedness`, :func:`check_shift`, :func:`check_semigroup`,
  :func:`check_product_integration` -- both sides of an operator identity,
  each side computed on its own
"""

import logging
import math
from typing import Callable

import numpy as np

from ..config import config
from ..models.errors import (
    ArgsOutOfRange,
    BadDomain,
    DivergentConstant,
    MismatchedRhoOrSide,
    NonFiniteIntegrand,
    PreconditionViolated,
)
from ..models.functions import EdgeWeighted, FunctionSpec, Pointwise
from ..models.operator import OperatorParams, Side
from ..models.results import IdentityReport, SpaceParams, compare_at_most, compare_equal
from .evaluator import eval_left, eval_right, evaluate
from .operator_model import compose_params, shift_params, validate
from .quadrature import SingularEnd, graded_mesh_singular, integrate_adaptive, rule_cache
from .special_functions import gamma

logger = logging.getLogger(__name__)

_REFINE_POINTS = 257
_PRODUCT_REL_TOL = 1e-9
# inner values carry their own quadrature noise
_NESTED_REL_TOL = 1e-8


def _require_interval(a: float, b: float) -> None:
    if not (0.0 < a < b < math.inf):
        raise BadDomain(f"need 0 < a < b < inf, got [{a}, {b}]")


def xpc_norm(f: FunctionSpec, space: SpaceParams, a: float, b: float) -> float:
    r"""Norm of f in :math:`X^p_c(a, b)`.

    Finite p integrates :math:`|x^c f(x)|^p / x` adaptively. For p = inf the
    supremum of :math:`|x^c f(x)|` is taken on a geometric grid, then on a
    finer grid between the neighbours of the largest grid value.
    """
    _require_interval(a, b)
    c = space.c

    if space.is_sup:
        def weighted(x):
            values = np.abs(x ** c * f(x))
            if not np.all(np.isfinite(values)):
                raise NonFiniteIntegrand("function is NaN or infinite on the supremum grid")
            return values

        grid = np.geomspace(a, b, config.SUP_GRID_POINTS)
        values = weighted(grid)
        k = int(np.argmax(values))
        lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
        refined = weighted(np.linspace(lo, hi, _REFINE_POINTS))
        return float(max(values.max(), refined.max()))

    p = space.p

    def integrand(x):
        return np.abs(x ** c * f(x)) ** p / x

    estimate = integrate_adaptive(integrand, a, b)
    return estimate.value ** (1.0 / p)


def _jacobi_constant_integral(exponent: float, alpha: float, span: float) -> float:
    """int_0^1 t^(alpha-1) (1 + span t)^exponent dt.

    [0, min(1, 1/span)] goes to a Jacobi rule sized by doubling, where the
    factor (1 + span t)**exponent is analytic well past the interval; the
    remainder, away from both singular points, goes to adaptive quadrature.
    """
    cut = min(1.0, 1.0 / span)
    scaled = span * cut
    n = config.JACOBI_RULE_SIZE
    previous = None
    head = None
    while n <= 4 * config.JACOBI_MAX_RULE_SIZE:
        rule = rule_cache.get(n, 0.0, alpha - 1.0)
        value = float(np.dot(rule.weights, (1.0 + scaled * rule.nodes) ** exponent))
        if previous is not None and abs(value - previous) <= 1e-13 * abs(value):
            head = value
            break
        previous = value
        n *= 2
    if head is None:
        raise DivergentConstant(f"K integral did not settle, last value {previous}")

    head *= cut ** alpha
    if cut >= 1.0:
        return head

    tail = integrate_adaptive(lambda t: t ** (alpha - 1.0) * (1.0 + span * t) ** exponent, cut, 1.0, 1e-12)
    if tail.depth_exceeded:
        raise DivergentConstant(f"K integral tail did not settle (error {tail.abs_error_estimate:.3e})")
    return head + tail.value


def _graded_constant_integral(params: OperatorParams, c: float, upper: float) -> float:
    """The K integral in its original variable u on [1, b/a]"""
    alpha, rho, eta = params.alpha, params.rho, params.eta
    exponent = c - rho * (alpha + eta) - 1.0

    def h(d):
        # d = u - 1
        return (1.0 + d) ** exponent * np.expm1(rho * np.log1p(d)) ** (alpha - 1.0)

    estimate = graded_mesh_singular(h, 0.0, upper - 1.0, SingularEnd.LO, alpha - 1.0,
                                    2 * config.ORACLE_PANELS, distance_form=True)
    return estimate.value


def bound_constant_K(
    params: OperatorParams,
    space: SpaceParams,
    a: float,
    b: float,
    *,
    path: str = "jacobi",
) -> float:
    r"""Constant K of the boundedness estimate on :math:`X^p_c(a, b)`.

    .. math::

        K = \frac{\rho^{1-\beta} b^{\rho(\alpha+\eta)+\kappa}}{\Gamma(\alpha)}
            \int_1^{b/a} u^{c - \rho(\alpha+\eta) - 1} (u^\rho - 1)^{\alpha-1} \,\mathrm{d}u

    With s = u**rho - 1 the integral becomes a Jacobi-weighted integral over
    [0, 1] (``path="jacobi"``); ``path="graded"`` integrates in u directly.

    Raises:
        PreconditionViolated: a <= 0, b infinite, rho < c or eta < 0
        DivergentConstant: the integral does not settle
    """
    validate(params)
    if params.side is not Side.LEFT:
        raise MismatchedRhoOrSide("the boundedness constant is defined for the left operator")
    if not (0.0 < a < b < math.inf):
        raise PreconditionViolated(f"requires 0 < a < b < inf, got [{a}, {b}]")
    if params.rho < space.c:
        raise PreconditionViolated(f"requires rho >= c, got rho={params.rho}, c={space.c}")
    if params.eta < 0.0:
        raise PreconditionViolated(f"requires eta >= 0, got eta={params.eta}")

    alpha, rho, eta, c = params.alpha, params.rho, params.eta, space.c
    ratio = b / a

    if path == "graded":
        integral = _graded_constant_integral(params, c, ratio)
    elif path == "jacobi":
        span = math.expm1(rho * math.log(ratio))
        inner = _jacobi_constant_integral(c / rho - alpha - eta - 1.0, alpha, span)
        integral = span ** alpha / rho * inner
    else:
        raise ArgsOutOfRange(f"unknown path {path!r}, expected jacobi or graded")

    K = rho ** (1.0 - params.beta) * b ** (rho * (alpha + eta) + params.kappa) / gamma(alpha) * integral
    if not math.isfinite(K):
        raise DivergentConstant(f"K is not finite ({K})")
    logger.debug(f"K = {K} for {params} on [{a}, {b}], c = {c}")
    return K


def _operator_values(params: OperatorParams, f: FunctionSpec) -> FunctionSpec:
    """x -> (I f)(x), continued by 0 at the lower terminal"""
    def value(x: float) -> float:
        if x <= params.a:
            return 0.0
        return eval_left(params, f, x).value

    return Pointwise(value, label=f"I[{f}]")


def check_boundedness(
    params: OperatorParams,
    f: FunctionSpec,
    space: SpaceParams,
    a: float,
    b: float,
) -> IdentityReport:
    """Check ||I f|| <= K ||f|| in X^p_c(a, b), the operator running from a"""
    K = bound_constant_K(params, space, a, b)
    # values on [a, b] only need the interval [a, x]; an open upper end keeps x = b in range
    op = params.with_domain(a, math.inf)
    lhs = xpc_norm(_operator_values(op, f), space, a, b)
    rhs = K * xpc_norm(f, space, a, b)
    return compare_at_most(lhs, rhs, config.BOUNDED_SLACK, note=f"K = {K!r}")


def check_shift(params: OperatorParams, gamma_shift: float, f: FunctionSpec, x: float) -> IdentityReport:
    """Compare I(t^(rho gamma) f) with the shifted operator applied to f (t^gamma on the right)"""
    shifted = shift_params(params, gamma_shift)
    factor = params.rho * gamma_shift if params.side is Side.LEFT else gamma_shift
    lhs = evaluate(params, f.times_power(factor), x)
    rhs = evaluate(shifted, f, x)
    return compare_equal(lhs.value, rhs.value, config.SHIFT_TOL,
                         note=f"error estimates {lhs.abs_error_estimate:.2e}, {rhs.abs_error_estimate:.2e}")


def _nested(inner: OperatorParams, f: FunctionSpec) -> FunctionSpec:
    """The inner operator's values as an integrand, with its boundary behaviour factored out.

    From a = 0 the inner result is y**p times a smooth function; from a
    finite terminal it vanishes like |y**rho - terminal**rho|**alpha.
    """
    rho = inner.rho

    def apply(y: float) -> float:
        return evaluate(inner, f, y).value

    if inner.side is Side.LEFT and inner.a == 0.0:
        p = inner.kappa + rho * (inner.alpha + inner.eta) + f.split_power()[0]
        return Pointwise(lambda y: apply(y) / y ** p, label=f"I[{f}]/t^{p!r}").times_power(p)

    terminal = inner.a if inner.side is Side.LEFT else inner.b
    if not math.isfinite(terminal):
        return Pointwise(apply, label=f"I[{f}]")

    def smooth_part(y: float) -> float:
        log_ratio = math.log(terminal / y)
        gap = abs(y ** rho * math.expm1(rho * log_ratio))
        return apply(y) / gap ** inner.alpha

    return EdgeWeighted(Pointwise(smooth_part, label=f"I[{f}]/edge"), inner.alpha, terminal, rho,
                        upper=inner.side.is_right)


def check_semigroup(outer: OperatorParams, inner: OperatorParams, f: FunctionSpec, x: float) -> IdentityReport:
    """Compare outer(inner f) by nested quadrature with the composed operator applied to f"""
    composed = compose_params(outer, inner)
    rhs = evaluate(composed, f, x)
    lhs = evaluate(outer, _nested(inner, f), x, tol=_NESTED_REL_TOL)
    return compare_equal(lhs.value, rhs.value, config.SEMIGROUP_TOL,
                         note=f"error estimates {lhs.abs_error_estimate:.2e}, {rhs.abs_error_estimate:.2e}")


def _weighted_integral(rho: float, weight: FunctionSpec, values: Callable[[float], float],
                       a: float, b: float) -> float:
    def integrand(x):
        x = np.asarray(x, dtype=float)
        operator_values = np.array([values(float(v)) for v in x.ravel()]).reshape(x.shape)
        return x ** (rho - 1.0) * weight(x) * operator_values

    estimate = integrate_adaptive(integrand, a, b, _PRODUCT_REL_TOL)
    return estimate.value


def check_product_integration(
    params_left: OperatorParams,
    f: FunctionSpec,
    g: FunctionSpec,
    a: float,
    b: float,
) -> IdentityReport:
    r"""Compare :math:`\int_a^b x^{\rho-1} f \, I_{a+} g` with :math:`\int_a^b x^{\rho-1} g \, I_{b-} f`.

    The right operator shares (alpha, beta, rho, eta, kappa) with the left
    one; both run over [a, b].
    """
    validate(params_left)
    if params_left.side is not Side.LEFT:
        raise MismatchedRhoOrSide("product integration starts from a left operator")
    _require_interval(a, b)

    left = params_left.with_domain(a, b)
    right = left.with_changes(side=Side.RIGHT)
    rho = left.rho

    lhs = _weighted_integral(rho, f, lambda x: eval_left(left, g, x).value, a, b)
    rhs = _weighted_integral(rho, g, lambda x: eval_right(right, f, x).value, a, b)
    return compare_equal(lhs, rhs, config.PRODUCT_TOL)
