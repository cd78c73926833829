r"""
Operator evaluation

Applies the left and right generalized fractional integrals to a
FunctionSpec at one point.

Primary path (left, a = 0): with :math:`u = (\tau/x)^\rho`

.. math::

    I f(x) = \frac{x^{\kappa + \rho(\alpha+\eta)}}{\rho^\beta \Gamma(\alpha)}
        \int_0^1 (1-u)^{\alpha-1} u^\eta f(x u^{1/\rho}) \,\mathrm{d}u,

so the kernel singularity is the Gauss-Jacobi weight. Power sums get the
closed form, other integrands a Jacobi rule whose size doubles until two
sizes agree. For a > 0 the u-interval :math:`[(a/x)^\rho, 1]` is mapped
onto [0, 1]. Right operators use :math:`w = (\tau^\rho - x^\rho) /
(b^\rho - x^\rho)`, or :math:`v = (x/\tau)^\rho` when b is infinite.

A mapped rule cannot see an integrand that lives on a sliver of a very
wide interval, so past ``WIDE_INTERVAL_RATIO`` the finite cases go straight
to a graded mesh in tau, split at the midpoint and graded toward both ends.
The same mesh backs up any rule whose sizes do not agree; infinite
intervals fall back to a head and tail split instead. When both run, the
result with the smaller relative error estimate is kept.

The classical operators (Riemann-Liouville, Katugampola, Erdelyi-Kober,
Hadamard, Weyl, Liouville) have their own reference formulas in
:func:`eval_classical` for cross-checking.
"""

import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from ..config import config
from ..models.errors import (
    ArgsOutOfRange,
    BadDomain,
    DivergentTail,
    MismatchedRhoOrSide,
    MuOutOfRange,
    NonFiniteIntegrand,
    NonPositiveAlpha,
    UnsupportedReduction,
    XOutOfDomain,
)
from ..models.functions import EdgeWeighted, FunctionSpec
from ..models.operator import ClassicalReduction, OperatorParams, Side
from ..models.results import EvalMethod, EvalResult
from .operator_model import validate
from .quadrature import Integrand, SingularEnd, graded_mesh_singular, integrate_adaptive, rule_cache
from .special_functions import beta as beta_fn
from .special_functions import gamma, log_gamma

logger = logging.getLogger(__name__)

_EPS = float(np.finfo(float).eps)
_TINY = float(np.finfo(float).tiny)
_CLOSED_FORM_MAX_REL_ERROR = 1e-12
# halvings toward the regular terminal of a two-sided graded mesh
_FAR_END_LEVELS = 60

#: n -> (weighted sum, weighted sum of magnitudes)
RuleSum = Callable[[int], Tuple[float, float]]


def _reciprocal_gamma(alpha: float) -> float:
    if alpha < 170.0:
        return 1.0 / gamma(alpha)
    return math.exp(-log_gamma(alpha))


def _rule_sum(n: int, exp_right: float, exp_left: float, g: Callable[[np.ndarray], np.ndarray]) -> Tuple[float, float]:
    rule = rule_cache.get(n, exp_right, exp_left)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        values = np.asarray(g(rule.nodes), dtype=float)
    values = np.broadcast_to(values, rule.nodes.shape)
    if not np.all(np.isfinite(values)):
        raise NonFiniteIntegrand("integrand returned NaN or infinity at a Gauss-Jacobi node")
    return float(np.dot(rule.weights, values)), float(np.dot(rule.weights, np.abs(values)))


def _agree(current: float, previous: float, magnitude: float, tol: float) -> bool:
    return abs(current - previous) <= max(tol * abs(current), 50.0 * _EPS * magnitude)


def _converge(build: RuleSum, tol: float) -> Tuple[float, float, bool]:
    """Double the rule size until two successive sizes agree.

    A rule whose node values all vanish has not seen the integrand; it is
    reported as unconverged with an infinite error.
    """
    n = config.JACOBI_RULE_SIZE
    previous, _ = build(max(n // 2, 1))
    current, magnitude = build(n)
    while not _agree(current, previous, magnitude, tol) and n < config.JACOBI_MAX_RULE_SIZE:
        n *= 2
        logger.debug(f"Rule sizes disagree by {abs(current - previous):.3e}, doubling to {n}")
        previous, (current, magnitude) = current, build(n)
    if magnitude == 0.0:
        return current, math.inf, False
    return current, abs(current - previous), _agree(current, previous, magnitude, tol)


def _converge_tail(build: RuleSum, tol: float) -> Tuple[float, float, bool]:
    """Doubling for infinite intervals; stops early once the difference stops shrinking"""
    n = config.JACOBI_RULE_SIZE
    current, magnitude = build(n)
    last_gap = math.inf
    while n < config.INFINITE_MAX_RULE_SIZE:
        n *= 2
        previous = current
        current, magnitude = build(n)
        gap = abs(current - previous)
        if magnitude > 0.0 and _agree(current, previous, magnitude, tol):
            return current, gap, True
        if gap >= last_gap:
            logger.debug(f"Infinite-interval rule sizes stopped improving at n={n} (difference {gap:.3e})")
            return current, gap, False
        last_gap = gap
    return current, last_gap, False


def _relative_error(result: EvalResult) -> float:
    return result.abs_error_estimate / max(abs(result.value), _TINY)


def _with_fallback(result: EvalResult, converged: bool, fallback: Callable[[], EvalResult]) -> EvalResult:
    """Keep a converged result, else also run ``fallback`` and keep the tighter of the two"""
    if converged:
        return result
    logger.warning(
        f"{result.method.value} estimate still moving by {result.abs_error_estimate:.3e}; "
        "trying an independent method"
    )
    other = fallback()
    return other if _relative_error(other) < _relative_error(result) else result


def _is_wide(lo: float, hi: float, rho: float) -> bool:
    """(hi / lo)**rho is past what a mapped Gauss-Jacobi rule resolves"""
    return rho * _log_ratio(lo, hi) > math.log(config.WIDE_INTERVAL_RATIO)


def _edge_fold(f: FunctionSpec, terminal: float, rho: float, upper: bool) -> bool:
    """f vanishes like a power of |tau**rho - terminal**rho| at terminal"""
    return isinstance(f, EdgeWeighted) and f.upper == upper and f.terminal == terminal and f.rho == rho


def _graded_pair(
    near: Integrand,
    far: Integrand,
    length: float,
    near_strength: float,
    far_strength: float,
) -> Tuple[float, float]:
    """Integrate over an interval split at its midpoint, each half graded toward its own end.

    ``near`` receives the distance from the kernel singularity, ``far`` the
    distance from the other terminal. Both halves run at two panel counts
    and the difference joins the error estimate.
    """
    half = 0.5 * length
    panels = config.ORACLE_PANELS
    value, error = 0.0, 0.0
    for h, strength, levels in ((near, near_strength, 0), (far, far_strength, _FAR_END_LEVELS)):
        coarse = graded_mesh_singular(h, 0.0, half, SingularEnd.LO, strength, panels,
                                      distance_form=True, end_levels=levels)
        fine = graded_mesh_singular(h, 0.0, half, SingularEnd.LO, strength, 2 * panels,
                                    distance_form=True, end_levels=levels)
        value += fine.value
        error += max(abs(fine.value - coarse.value), fine.abs_error_estimate)
    return value, error


def _log_ratio(lo: float, hi: float) -> float:
    """log(hi / lo) for 0 < lo < hi, accurate when lo is close to hi"""
    return math.log1p((hi - lo) / lo)


def _terminal_value(params: OperatorParams, x: float) -> Optional[EvalResult]:
    """Zero at the starting terminal when alpha >= 1, else raise if x is outside"""
    start = params.a if params.side is Side.LEFT else params.b
    if x == start and params.alpha >= 1.0:
        return EvalResult(0.0, 0.0, EvalMethod.CLOSED_FORM)
    if not params.domain.contains(x):
        raise XOutOfDomain(f"x = {x} is not strictly inside ({params.a}, {params.b})")
    if x <= 0.0:
        if params.side.is_right:
            raise XOutOfDomain(f"right-sided evaluation needs x > 0, got {x}")
        if params.kappa != 0.0:
            raise XOutOfDomain(f"x**kappa with kappa = {params.kappa} needs x > 0, got {x}")
    return None


# Closed forms

def eval_power_closed_form(params: OperatorParams, mu: float, x: float) -> float:
    r"""Left operator from a = 0 applied to :math:`\tau^\mu`.

    .. math::

        \rho^{-\beta} x^{\kappa + \rho(\alpha+\eta) + \mu}
            \frac{\Gamma(\eta + \mu/\rho + 1)}{\Gamma(\alpha + \eta + \mu/\rho + 1)}

    Raises:
        MuOutOfRange: eta + mu / rho <= -1
    """
    validate(params)
    if params.side is not Side.LEFT or params.a != 0.0:
        raise BadDomain("the power closed form needs a left operator with a = 0")
    if not (0.0 < x < params.b):
        raise XOutOfDomain(f"x = {x} is not inside (0, {params.b})")

    alpha, rho, eta = params.alpha, params.rho, params.eta
    z = eta + mu / rho + 1.0
    if not z > 0.0:
        raise MuOutOfRange(f"eta + mu/rho = {z - 1.0} must exceed -1")

    exponent = params.kappa + rho * (alpha + eta) + mu
    return rho ** (-params.beta) * x ** exponent * beta_fn(z, alpha) * _reciprocal_gamma(alpha)


def _closed_form_sum(params: OperatorParams, f: FunctionSpec, x: float) -> EvalResult:
    terms = f.power_terms()
    values = [c * eval_power_closed_form(params, mu, x) for c, mu in terms if c != 0.0]
    value = math.fsum(values)
    magnitude = math.fsum(abs(v) for v in values)
    error = min(8.0 * _EPS * magnitude, _CLOSED_FORM_MAX_REL_ERROR * abs(value))
    return EvalResult(value, error, EvalMethod.CLOSED_FORM)


# Left operator

def _smoothness_u(eta_u: float, rho: float) -> float:
    if (1.0 / rho).is_integer():
        return math.inf
    return eta_u + 1.0 + 1.0 / rho


def _smoothness_v(eta_u: float, rho: float, alpha: float) -> float:
    if rho.is_integer() or alpha == 1.0:
        return math.inf
    return rho * (eta_u + 2.0)


def _left_from_origin(params: OperatorParams, f: FunctionSpec, x: float) -> Tuple[float, RuleSum]:
    """Prefactor and rule sum for a = 0, with f's origin power in the weight"""
    alpha, rho, eta, kappa = params.alpha, params.rho, params.eta, params.kappa
    p, smooth = f.split_power()
    eta_u = eta + p / rho
    if not eta_u > -1.0:
        raise MuOutOfRange(f"integrand behaves like t**{p} at 0; eta + p/rho = {eta_u} must exceed -1")

    scale = _reciprocal_gamma(alpha) * x ** (kappa + rho * (alpha + eta) + p)

    if _smoothness_v(eta_u, rho, alpha) > _smoothness_u(eta_u, rho):
        # tau = x v keeps f smooth; the kernel remainder is smooth away from v = 0
        exp_left = rho * (eta_u + 1.0) - 1.0

        def g(v):
            ratio = -np.expm1(rho * np.log(v)) / (1.0 - v)
            return ratio ** (alpha - 1.0) * smooth(x * v)

        return rho ** (1.0 - params.beta) * scale, lambda n: _rule_sum(n, alpha - 1.0, exp_left, g)

    def g(u):
        return smooth(x * u ** (1.0 / rho))

    return rho ** (-params.beta) * scale, lambda n: _rule_sum(n, alpha - 1.0, eta_u, g)


def _left_from_terminal(params: OperatorParams, f: FunctionSpec, x: float) -> Tuple[float, RuleSum]:
    """Prefactor and rule sum for 0 < a < x on the mapped interval"""
    alpha, rho, eta, kappa = params.alpha, params.rho, params.eta, params.kappa
    a = params.a
    u_a = (a / x) ** rho
    gap = -math.expm1(-rho * _log_ratio(a, x))  # 1 - u_a

    scale = rho ** (-params.beta) * _reciprocal_gamma(alpha) * x ** (kappa + rho * (alpha + eta)) * gap ** alpha
    exp_left = 0.0
    if _edge_fold(f, a, rho, upper=False):
        # f = (tau^rho - a^rho)^q g = (x^rho gap s)^q g
        exp_left = f.exponent
        scale *= (x ** rho * gap) ** f.exponent
        f = f.base

    def g(s):
        u = u_a + s * gap
        return u ** eta * f(x * u ** (1.0 / rho))

    return scale, lambda n: _rule_sum(n, alpha - 1.0, exp_left, g)


def _weyl(params: OperatorParams, f: FunctionSpec, x: float, tol: float) -> EvalResult:
    """Left operator from a = -inf (rho = 1, eta = 0) via v = 1 / (1 + x - tau)"""
    alpha = params.alpha
    scale = _reciprocal_gamma(alpha) * (x ** params.kappa if params.kappa != 0.0 else 1.0)

    def g(v):
        return v ** (-alpha - 1.0) * f(x - (1.0 - v) / v)

    value, error, converged = _converge_tail(lambda n: _rule_sum(n, alpha - 1.0, 0.0, g), tol)
    result = EvalResult(scale * value, abs(scale) * error, EvalMethod.INFINITE_TRANSFORM)
    return _with_fallback(result, converged, lambda: _weyl_classical(params, f, x, tol))


def _distance_kernel(params: OperatorParams, f: FunctionSpec, x: float) -> Callable[[np.ndarray], np.ndarray]:
    """Left integrand of the original tau-integral, as a function of s = x - tau"""
    rho, alpha, eta = params.rho, params.alpha, params.eta
    x_rho = x ** rho

    def h(s):
        tau = x - s
        gap = -x_rho * np.expm1(rho * np.log1p(-s / x))
        return tau ** (rho * (eta + 1.0) - 1.0) * gap ** (alpha - 1.0) * f(tau)

    return h


def _left_graded(params: OperatorParams, f: FunctionSpec, x: float) -> EvalResult:
    """Left operator in tau on a mesh graded toward both x and a"""
    alpha, rho, eta, a = params.alpha, params.rho, params.eta, params.a
    prefactor = rho ** (1.0 - params.beta) * x ** params.kappa * _reciprocal_gamma(alpha)
    inner_exponent = rho * (eta + 1.0) - 1.0
    x_rho = x ** rho

    def far(d):
        tau = a + d
        return tau ** inner_exponent * (x_rho - tau ** rho) ** (alpha - 1.0) * f(tau)

    if a == 0.0:
        far_strength = inner_exponent + f.split_power()[0]
        if not far_strength > -1.0:
            raise MuOutOfRange(f"integrand times tau**{inner_exponent} is not integrable at 0")
    elif _edge_fold(f, a, rho, upper=False):
        far_strength = f.exponent
    else:
        far_strength = 0.0

    near = _distance_kernel(params, f, x)
    value, error = _graded_pair(near, far, x - a, alpha - 1.0, far_strength)
    return EvalResult(prefactor * value, abs(prefactor) * error, EvalMethod.GRADED_MESH)


def eval_left(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    *,
    tol: Optional[float] = None,
    method: Optional[EvalMethod] = None,
) -> EvalResult:
    """Apply the left operator to f at x.

    When the Gauss-Jacobi sizes do not agree, or ``(x/a)**rho`` exceeds
    ``WIDE_INTERVAL_RATIO``, a graded mesh in the original variable takes
    over.

    Args:
        params: a left-sided parameter tuple
        f: integrand
        x: evaluation point, a < x < b (x = a gives 0 when alpha >= 1)
        tol: relative agreement required between successive rule sizes
        method: force CLOSED_FORM, JACOBI_SPECTRAL or GRADED_MESH

    Returns:
        EvalResult with value, error estimate and the method used
    """
    validate(params)
    if params.side is not Side.LEFT:
        raise MismatchedRhoOrSide("eval_left needs a left-sided operator")
    tol = config.EVAL_REL_TOL if tol is None else tol
    x = float(x)

    at_terminal = _terminal_value(params, x)
    if at_terminal is not None:
        return at_terminal

    if params.a == -math.inf:
        return _weyl(params, f, x, tol)

    closed_form_ready = params.a == 0.0 and f.power_terms() is not None
    if method is EvalMethod.CLOSED_FORM and not closed_form_ready:
        raise ArgsOutOfRange(f"no closed form for {f} with a = {params.a}")
    if method is EvalMethod.CLOSED_FORM or (method is None and closed_form_ready):
        logger.debug(f"Closed form for {f} at x={x}")
        return _closed_form_sum(params, f, x)
    if method is EvalMethod.GRADED_MESH:
        return _left_graded(params, f, x)

    if params.a == 0.0:
        scale, build = _left_from_origin(params, f, x)
    elif method is None and _is_wide(params.a, x, params.rho):
        logger.debug(f"(x/a)**rho is past {config.WIDE_INTERVAL_RATIO:g} at x={x}; using a graded mesh")
        return _left_graded(params, f, x)
    else:
        scale, build = _left_from_terminal(params, f, x)
    value, error, converged = _converge(build, tol)
    result = EvalResult(scale * value, abs(scale) * error, EvalMethod.JACOBI_SPECTRAL)
    return _with_fallback(result, converged, lambda: _left_graded(params, f, x))


# Right operator

def _right_graded(params: OperatorParams, f: FunctionSpec, x: float) -> EvalResult:
    """Right operator in tau on a mesh graded toward both x and b"""
    rho, alpha, b = params.rho, params.alpha, params.b
    prefactor = rho ** (1.0 - params.beta) * x ** params.outer_exponent * _reciprocal_gamma(alpha)
    inner_exponent = params.kappa + rho - 1.0
    x_rho = x ** rho

    def near(s):
        tau = x + s
        gap = x_rho * np.expm1(rho * np.log1p(s / x))
        return tau ** inner_exponent * gap ** (alpha - 1.0) * f(tau)

    def far(d):
        tau = b - d
        return tau ** inner_exponent * (tau ** rho - x_rho) ** (alpha - 1.0) * f(tau)

    far_strength = f.exponent if _edge_fold(f, b, rho, upper=True) else 0.0
    value, error = _graded_pair(near, far, b - x, alpha - 1.0, far_strength)
    return EvalResult(prefactor * value, abs(prefactor) * error, EvalMethod.GRADED_MESH)


def _right_finite(params: OperatorParams, f: FunctionSpec, x: float) -> Tuple[float, RuleSum]:
    alpha, rho, kappa, b = params.alpha, params.rho, params.kappa, params.b
    r = math.expm1(rho * _log_ratio(x, b))  # (b/x)^rho - 1
    span = x ** rho * r  # b^rho - x^rho

    scale = rho ** (-params.beta) * x ** params.outer_exponent * _reciprocal_gamma(alpha) * span ** alpha
    exp_right = 0.0
    if _edge_fold(f, b, rho, upper=True):
        # f = (b^rho - tau^rho)^q g = (span (1 - w))^q g
        exp_right = f.exponent
        scale *= span ** f.exponent
        f = f.base

    def g(w):
        tau = x * np.exp(np.log1p(w * r) / rho)
        return tau ** kappa * f(tau)

    return scale, lambda n: _rule_sum(n, exp_right, alpha - 1.0, g)


def _right_infinite(params: OperatorParams, f: FunctionSpec, x: float, tol: float) -> EvalResult:
    alpha, rho, kappa = params.alpha, params.rho, params.kappa
    p, smooth = f.split_power()
    exponent = -(kappa + p) / rho - alpha - 1.0

    scale = (rho ** (-params.beta) * x ** params.outer_exponent * _reciprocal_gamma(alpha)
             * x ** (kappa + rho * alpha + p))

    if exponent > -1.0:
        def g(v):
            return smooth(x * v ** (-1.0 / rho))
        exp_left = exponent
    else:
        def g(v):
            return v ** exponent * smooth(x * v ** (-1.0 / rho))
        exp_left = 0.0

    value, error, converged = _converge_tail(lambda n: _rule_sum(n, alpha - 1.0, exp_left, g), tol)
    result = EvalResult(scale * value, abs(scale) * error, EvalMethod.INFINITE_TRANSFORM)
    return _with_fallback(result, converged, lambda: _liouville_classical(params, f, x, tol))


def eval_right(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    *,
    tol: Optional[float] = None,
    method: Optional[EvalMethod] = None,
) -> EvalResult:
    """Apply the right (or general right) operator to f at x.

    Finite b falls back to a graded mesh like :func:`eval_left`. Infinite b
    falls back to a head and tail split at ``tau = x + 1``.

    Raises:
        DivergentTail: b is infinite and neither method settles
    """
    validate(params)
    if not params.side.is_right:
        raise MismatchedRhoOrSide("eval_right needs a right-sided operator")
    tol = config.EVAL_REL_TOL if tol is None else tol
    x = float(x)

    at_terminal = _terminal_value(params, x)
    if at_terminal is not None:
        return at_terminal

    if method is EvalMethod.CLOSED_FORM:
        raise ArgsOutOfRange("right-sided operators have no closed-form path")

    if params.b == math.inf:
        if method is EvalMethod.GRADED_MESH:
            raise ArgsOutOfRange("graded mesh needs a finite upper terminal")
        return _right_infinite(params, f, x, tol)
    if method is EvalMethod.GRADED_MESH:
        return _right_graded(params, f, x)
    if method is None and _is_wide(x, params.b, params.rho):
        logger.debug(f"(b/x)**rho is past {config.WIDE_INTERVAL_RATIO:g} at x={x}; using a graded mesh")
        return _right_graded(params, f, x)

    scale, build = _right_finite(params, f, x)
    value, error, converged = _converge(build, tol)
    result = EvalResult(scale * value, abs(scale) * error, EvalMethod.JACOBI_SPECTRAL)
    return _with_fallback(result, converged, lambda: _right_graded(params, f, x))


def evaluate(params: OperatorParams, f: FunctionSpec, x: float, **kwargs) -> EvalResult:
    """Dispatch on the side of ``params``"""
    if params.side is Side.LEFT:
        return eval_left(params, f, x, **kwargs)
    return eval_right(params, f, x, **kwargs)


# Hadamard

def _hadamard_graded(alpha: float, a: float, f: FunctionSpec, x: float) -> EvalResult:
    """Hadamard integral in sigma = log(x / tau) on a two-sided graded mesh"""
    span = _log_ratio(a, x)

    def near(sigma):
        return sigma ** (alpha - 1.0) * f(x * np.exp(-sigma))

    def far(d):
        return (span - d) ** (alpha - 1.0) * f(a * np.exp(d))

    value, error = _graded_pair(near, far, span, alpha - 1.0, 0.0)
    scale = _reciprocal_gamma(alpha)
    return EvalResult(scale * value, scale * error, EvalMethod.GRADED_MESH)


def _hadamard(alpha: float, a: float, f: FunctionSpec, x: float, tol: float) -> EvalResult:
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise NonPositiveAlpha(f"alpha must be positive, got {alpha}")
    if not (0.0 < a < x < math.inf):
        raise BadDomain(f"the Hadamard integral needs 0 < a < x, got a={a}, x={x}")

    span = _log_ratio(a, x)  # log(x / a)

    def g(s):
        return f(x * np.exp(-s * span))

    value, error, converged = _converge(lambda n: _rule_sum(n, 0.0, alpha - 1.0, g), tol)
    scale = span ** alpha * _reciprocal_gamma(alpha)
    result = EvalResult(scale * value, scale * error, EvalMethod.JACOBI_SPECTRAL)
    return _with_fallback(result, converged, lambda: _hadamard_graded(alpha, a, f, x))


def eval_hadamard(alpha: float, a: float, f: FunctionSpec, x: float, *, tol: Optional[float] = None) -> float:
    r"""Hadamard integral :math:`\frac{1}{\Gamma(\alpha)} \int_a^x (\log(x/\tau))^{\alpha-1} f(\tau) \,\mathrm{d}\tau/\tau`.

    Raises:
        BadDomain: unless 0 < a < x
    """
    tol = config.EVAL_REL_TOL if tol is None else tol
    return _hadamard(alpha, a, f, x, tol).value


# Classical reference formulas
#
# An unconverged rule falls back to the tau-space graded mesh of the general
# left operator, which the parameters of every finite-terminal reduction
# describe.

def _require(condition: bool, reduction: ClassicalReduction) -> None:
    if not condition:
        raise UnsupportedReduction(f"parameters do not describe the {reduction.value} operator")


def _classical_result(params: OperatorParams, f: FunctionSpec, x: float,
                      scale: float, value: float, error: float, converged: bool) -> EvalResult:
    result = EvalResult(scale * value, abs(scale) * error, EvalMethod.JACOBI_SPECTRAL)
    return _with_fallback(result, converged, lambda: _left_graded(params, f, x))


def _riemann_liouville(params: OperatorParams, f: FunctionSpec, x: float, tol: float) -> EvalResult:
    alpha, a = params.alpha, params.a
    length = x - a
    exp_right = 0.0
    smooth = f
    if a == 0.0:
        p, smooth = f.split_power()
        if not p > -1.0:
            raise MuOutOfRange(f"integrand behaves like t**{p} at 0")
        exp_right = p
        scale = x ** p
    else:
        scale = 1.0

    def g(s):
        return smooth(x - s * length)

    value, error, converged = _converge(lambda n: _rule_sum(n, exp_right, alpha - 1.0, g), tol)
    scale *= length ** alpha * _reciprocal_gamma(alpha)
    return _classical_result(params, f, x, scale, value, error, converged)


def _katugampola(params: OperatorParams, f: FunctionSpec, x: float, tol: float) -> EvalResult:
    alpha, rho, a = params.alpha, params.rho, params.a
    smooth = f
    if a == 0.0:
        gap = 1.0
        p, smooth = f.split_power()
        exp_right = p / rho
        if not exp_right > -1.0:
            raise MuOutOfRange(f"integrand behaves like t**{p} at 0")
        scale = x ** p
    elif _is_wide(a, x, rho):
        return _left_graded(params, f, x)
    else:
        gap = -math.expm1(-rho * _log_ratio(a, x))
        exp_right = 0.0
        scale = 1.0

    def g(w):
        return smooth(x * np.exp(np.log1p(-w * gap) / rho))

    value, error, converged = _converge(lambda n: _rule_sum(n, exp_right, alpha - 1.0, g), tol)
    # rho^(-alpha) (x^rho - a^rho)^alpha / Gamma(alpha)
    scale *= (x ** rho * gap / rho) ** alpha * _reciprocal_gamma(alpha)
    return _classical_result(params, f, x, scale, value, error, converged)


def _erdelyi_kober(params: OperatorParams, f: FunctionSpec, x: float, tol: float) -> EvalResult:
    alpha, rho, eta, a = params.alpha, params.rho, params.eta, params.a
    if a == 0.0:
        p, smooth = f.split_power()
        exp_right = eta + p / rho
        if not exp_right > -1.0:
            raise MuOutOfRange(f"integrand behaves like t**{p} at 0")
        scale = x ** p

        def g(y):
            return smooth(x * (1.0 - y) ** (1.0 / rho))
    elif _is_wide(a, x, rho):
        return _left_graded(params, f, x)
    else:
        gap = -math.expm1(-rho * _log_ratio(a, x))
        exp_right = 0.0
        scale = gap ** alpha

        def g(y):
            u = 1.0 - gap * y
            return u ** eta * f(x * u ** (1.0 / rho))

    value, error, converged = _converge(lambda n: _rule_sum(n, exp_right, alpha - 1.0, g), tol)
    scale *= _reciprocal_gamma(alpha)
    return _classical_result(params, f, x, scale, value, error, converged)


def _tail_split(kernel: Callable[[np.ndarray], np.ndarray], alpha: float, tol: float) -> Tuple[float, float]:
    """int_0^inf s^(alpha-1) kernel(s) ds split at s = 1.

    ``kernel`` must be smooth on [0, 1]; the tail runs through t = 1 / s.
    """
    head, head_error, _ = _converge(lambda n: _rule_sum(n, 0.0, alpha - 1.0, kernel), tol)
    if head == 0.0 and math.isinf(head_error):
        # kernel underflows on all of [0, 1]
        head_error = 0.0

    def tail(t):
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            s = 1.0 / t
            values = kernel(s)
            weighted = np.where(values == 0.0, 0.0, t ** (-alpha - 1.0) * values)
        return weighted

    estimate = integrate_adaptive(tail, 0.0, 1.0, max(tol, 1e-12))
    if estimate.depth_exceeded:
        raise DivergentTail(f"tail integral does not converge (error estimate {estimate.abs_error_estimate:.3e})")
    return head + estimate.value, head_error + estimate.abs_error_estimate


def _weyl_classical(params: OperatorParams, f: FunctionSpec, x: float, tol: float) -> EvalResult:
    alpha = params.alpha
    value, error = _tail_split(lambda s: f(x - s), alpha, tol)
    scale = _reciprocal_gamma(alpha) * (x ** params.kappa if params.kappa != 0.0 else 1.0)
    return EvalResult(scale * value, abs(scale) * error, EvalMethod.INFINITE_TRANSFORM)


def _liouville_classical(params: OperatorParams, f: FunctionSpec, x: float, tol: float) -> EvalResult:
    alpha, rho, kappa = params.alpha, params.rho, params.kappa
    x_rho = x ** rho

    def kernel(s):
        # tau^(kappa+rho-1) ((tau^rho - x^rho) / s)^(alpha-1) f(tau), smooth at s = 0
        tau = x + s
        ratio = x_rho * np.expm1(rho * np.log1p(s / x)) / s
        return tau ** (kappa + rho - 1.0) * ratio ** (alpha - 1.0) * f(tau)

    value, error = _tail_split(kernel, alpha, tol)
    scale = rho ** (1.0 - params.beta) * x ** params.outer_exponent * _reciprocal_gamma(alpha)
    return EvalResult(scale * value, abs(scale) * error, EvalMethod.INFINITE_TRANSFORM)


def eval_classical(
    reduction: ClassicalReduction,
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    *,
    tol: Optional[float] = None,
) -> EvalResult:
    """Evaluate a classical operator by its own textbook formula.

    Each reduction uses a substitution and rule of its own, independent of
    :func:`eval_left` / :func:`eval_right`, so the two can be compared.

    Raises:
        UnsupportedReduction: GENERAL, or params that do not match the reduction
    """
    validate(params)
    tol = config.EVAL_REL_TOL if tol is None else tol
    x = float(x)
    R = ClassicalReduction
    left = params.side is Side.LEFT

    if reduction is R.GENERAL:
        raise UnsupportedReduction("the general operator has no classical reference formula")

    if reduction is R.WEYL_TYPE:
        _require(left and params.a == -math.inf and params.eta == 0.0, reduction)
        _terminal_value(params, x)
        return _weyl_classical(params, f, x, tol)

    if reduction is R.LIOUVILLE_TYPE:
        _require(params.side.is_right and params.b == math.inf, reduction)
        _terminal_value(params, x)
        return _liouville_classical(params, f, x, tol)

    _require(left and math.isfinite(params.a), reduction)
    at_terminal = _terminal_value(params, x)
    if at_terminal is not None:
        return at_terminal

    alpha, beta, rho, eta, kappa = params.alpha, params.beta, params.rho, params.eta, params.kappa
    if reduction is R.RIEMANN_LIOUVILLE:
        _require(rho == 1.0 and eta == 0.0 and kappa == 0.0, reduction)
        return _riemann_liouville(params, f, x, tol)
    if reduction is R.KATUGAMPOLA:
        _require(beta == alpha and eta == 0.0 and kappa == 0.0, reduction)
        return _katugampola(params, f, x, tol)
    if reduction is R.ERDELYI_KOBER:
        _require(beta == 0.0 and kappa == -rho * (alpha + eta), reduction)
        return _erdelyi_kober(params, f, x, tol)

    # Hadamard: the rho -> 0+ limit of the Katugampola case
    _require(beta == alpha and eta == 0.0 and kappa == 0.0 and params.a > 0.0, reduction)
    return _hadamard(alpha, params.a, f, x, tol)
