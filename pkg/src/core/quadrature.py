r"""
Quadrature rules

- Gauss-Jacobi rules on [0, 1] for the weight :math:`(1-u)^{a} u^{b}`,
  built with the Golub-Welsch algorithm from the closed-form Jacobi
  recurrence, and cached per (n, a, b).
- A globally adaptive Gauss-Kronrod (7, 15) integrator.
- A graded-mesh integrator for one algebraic endpoint singularity.
"""

import heapq
import logging
import math
import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import LinAlgError, eigh_tridiagonal

from ..config import config
from ..models.errors import (
    ArgsOutOfRange,
    EigenFailure,
    ExponentOutOfRange,
    NonFiniteIntegrand,
    NonIntegrableSingularity,
)
from ..models.results import QuadratureEstimate
from .special_functions import beta

logger = logging.getLogger(__name__)

#: Vectorized integrand: numpy array in, array of the same shape out.
Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class JacobiRule:
    """n-point Gauss rule for the weight (1 - u)**exp_right * u**exp_left on [0, 1]"""
    n: int
    exp_right: float
    exp_left: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def zeroth_moment(self) -> float:
        return beta(self.exp_left + 1.0, self.exp_right + 1.0)


def _jacobi_recurrence(n: int, exp_right: float, exp_left: float) -> Tuple[np.ndarray, np.ndarray]:
    r"""Monic recurrence coefficients on [0, 1].

    On [-1, 1] the weight is :math:`(1-x)^a (1+x)^b`; with u = (1 + x) / 2
    the diagonal maps to (1 + alpha_k) / 2 and the squared off-diagonal to
    beta_k / 4. Returns (diagonal, off-diagonal) of the Jacobi matrix.
    """
    a, b = exp_right, exp_left
    k = np.arange(n, dtype=float)
    s = a + b

    diag = np.empty(n)
    diag[0] = (b - a) / (s + 2.0)
    if n > 1:
        kk = k[1:]
        diag[1:] = (b * b - a * a) / ((2.0 * kk + s) * (2.0 * kk + s + 2.0))

    off_sq = np.empty(max(n - 1, 0))
    if n > 1:
        # k = 1 separately: the general formula is 0/0 when a + b = -1
        off_sq[0] = 4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) ** 2 * (s + 3.0))
        kk = k[2:]
        two_k_s = 2.0 * kk + s
        off_sq[1:] = (4.0 * kk * (kk + a) * (kk + b) * (kk + s)
                      / (two_k_s ** 2 * (two_k_s + 1.0) * (two_k_s - 1.0)))

    return (1.0 + diag) / 2.0, np.sqrt(off_sq / 4.0)


def _christoffel_weights(nodes: np.ndarray, diag: np.ndarray, off: np.ndarray, mu0: float) -> np.ndarray:
    """w_i = mu0 / sum_k p_k(x_i)**2 with orthonormal p_k from the recurrence"""
    n = len(diag)
    p_prev = np.zeros_like(nodes)
    p_curr = np.ones_like(nodes)
    total = np.ones_like(nodes)
    for k in range(n - 1):
        p_next = ((nodes - diag[k]) * p_curr - (off[k - 1] * p_prev if k > 0 else 0.0)) / off[k]
        total += p_next * p_next
        p_prev, p_curr = p_curr, p_next
    return mu0 / total


def gauss_jacobi_rule(n: int, exp_right: float, exp_left: float) -> JacobiRule:
    """Build the n-point Gauss-Jacobi rule on [0, 1] (Golub-Welsch).

    Args:
        n: number of nodes, at least 1
        exp_right: exponent of (1 - u), > -1
        exp_left: exponent of u, > -1

    Returns:
        JacobiRule exact for polynomials of degree <= 2n - 1

    Raises:
        ExponentOutOfRange: an exponent is <= -1
        EigenFailure: the tridiagonal eigensolver failed
    """
    if n < 1:
        raise ArgsOutOfRange(f"rule size must be >= 1, got {n}")
    if not (exp_right > -1.0 and exp_left > -1.0):
        raise ExponentOutOfRange(
            f"Jacobi exponents must exceed -1, got exp_right={exp_right}, exp_left={exp_left}"
        )

    mu0 = beta(exp_left + 1.0, exp_right + 1.0)
    diag, off = _jacobi_recurrence(n, exp_right, exp_left)

    if n == 1:
        nodes = diag.copy()
        weights = np.array([mu0])
    else:
        try:
            nodes = eigh_tridiagonal(diag, off, eigvals_only=True, lapack_driver="stev")
        except (LinAlgError, ValueError) as e:
            raise EigenFailure(f"tridiagonal eigensolver failed for n={n}: {e}") from e
        nodes = np.sort(nodes)
        weights = _christoffel_weights(nodes, diag, off, mu0)

    if (not np.all(np.isfinite(nodes)) or nodes[0] <= 0.0 or nodes[-1] >= 1.0
            or np.any(np.diff(nodes) <= 0.0) or not np.all(weights > 0.0)):
        raise EigenFailure(f"degenerate Gauss-Jacobi rule for n={n}, exponents ({exp_right}, {exp_left})")

    nodes.setflags(write=False)
    weights.setflags(write=False)
    return JacobiRule(n, float(exp_right), float(exp_left), nodes, weights)


class JacobiRuleCache:
    """Thread-safe memo of Gauss-Jacobi rules keyed by (n, exp_right, exp_left).

    Concurrent misses on the same key may both build the rule; the first
    stored rule wins and both are identical.
    """

    def __init__(self, max_entries: int = 4096):
        self._rules: Dict[Tuple[int, float, float], JacobiRule] = {}
        self._lock = threading.Lock()
        self._max_entries = max_entries

    def get(self, n: int, exp_right: float, exp_left: float) -> JacobiRule:
        key = (int(n), float(exp_right), float(exp_left))
        rule = self._rules.get(key)
        if rule is not None:
            return rule

        rule = gauss_jacobi_rule(*key)
        with self._lock:
            if len(self._rules) >= self._max_entries:
                self._rules.clear()
            return self._rules.setdefault(key, rule)

    def __len__(self) -> int:
        return len(self._rules)

    def clear(self) -> None:
        with self._lock:
            self._rules.clear()


rule_cache = JacobiRuleCache()


def _checked(values, shape) -> np.ndarray:
    values = np.broadcast_to(np.asarray(values, dtype=float), shape)
    if not np.all(np.isfinite(values)):
        raise NonFiniteIntegrand("integrand returned NaN or infinity at a quadrature node")
    return values


def integrate_weighted(rule: JacobiRule, g: Integrand) -> float:
    """Return sum_i w_i g(u_i).

    Raises:
        NonFiniteIntegrand: g is NaN or infinite at a node
    """
    values = _checked(g(rule.nodes), rule.nodes.shape)
    return float(np.dot(rule.weights, values))


# Gauss-Kronrod (7, 15) on [-1, 1]; odd-indexed Kronrod nodes are the Gauss nodes
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_WEIGHTS = np.zeros(15)
_GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
_GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
_GAUSS_WEIGHTS[7] = _WG[3]

_EPS = float(np.finfo(float).eps)


def _kronrod_panel(f: Integrand, lo: float, hi: float) -> Tuple[float, float, float]:
    """Return (Kronrod value, |Kronrod - Gauss|, Kronrod integral of |f|)"""
    half = 0.5 * (hi - lo)
    center = 0.5 * (hi + lo)
    x = center + half * _KRONROD_NODES
    values = _checked(f(x), x.shape)
    kronrod = half * float(np.dot(_KRONROD_WEIGHTS, values))
    gauss = half * float(np.dot(_GAUSS_WEIGHTS, values))
    magnitude = abs(half) * float(np.dot(_KRONROD_WEIGHTS, np.abs(values)))
    return kronrod, abs(kronrod - gauss), magnitude


def integrate_adaptive(
    f: Integrand,
    lo: float,
    hi: float,
    rel_tol: Optional[float] = None,
    *,
    abs_tol: float = 0.0,
    max_depth: Optional[int] = None,
    max_intervals: Optional[int] = None,
) -> QuadratureEstimate:
    """Globally adaptive Gauss-Kronrod (7, 15) quadrature on [lo, hi].

    The subinterval with the largest local error estimate is bisected until
    the summed estimate drops below ``max(abs_tol, rel_tol * |total|)``.
    Subintervals at ``max_depth`` are frozen and the result is flagged with
    ``depth_exceeded`` instead of raising.

    Raises:
        ArgsOutOfRange: lo >= hi, an infinite bound, or rel_tol outside (0, 0.1]
        NonFiniteIntegrand: f is NaN or infinite at a node
    """
    rel_tol = config.ADAPTIVE_REL_TOL if rel_tol is None else rel_tol
    max_depth = config.ADAPTIVE_MAX_DEPTH if max_depth is None else max_depth
    max_intervals = config.ADAPTIVE_MAX_INTERVALS if max_intervals is None else max_intervals

    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ArgsOutOfRange(f"adaptive quadrature needs finite lo < hi, got [{lo}, {hi}]")
    if not 0.0 < rel_tol <= 0.1:
        raise ArgsOutOfRange(f"rel_tol must be in (0, 0.1], got {rel_tol}")

    value, error, magnitude = _kronrod_panel(f, lo, hi)
    evaluations = 15
    total, total_error, total_magnitude = value, error, magnitude

    def target() -> float:
        # rounding floor keeps integrals that cancel to zero from spinning
        return max(abs_tol, rel_tol * abs(total), 50.0 * _EPS * total_magnitude)

    # max-heap on the local error
    heap: List[Tuple[float, float, float, float, float, int]] = [(-error, lo, hi, value, magnitude, 0)]
    frozen: List[Tuple[float, float]] = []
    budget_spent = False

    while heap and total_error > target():
        if len(heap) + len(frozen) >= max_intervals:
            budget_spent = True
            break

        neg_error, a, b, v, m, depth = heapq.heappop(heap)
        if depth >= max_depth:
            frozen.append((v, -neg_error))
            continue

        mid = 0.5 * (a + b)
        v1, e1, m1 = _kronrod_panel(f, a, mid)
        v2, e2, m2 = _kronrod_panel(f, mid, b)
        evaluations += 30
        total += v1 + v2 - v
        total_error += e1 + e2 + neg_error
        total_magnitude += m1 + m2 - m
        heapq.heappush(heap, (-e1, a, mid, v1, m1, depth + 1))
        heapq.heappush(heap, (-e2, mid, b, v2, m2, depth + 1))

    total = math.fsum([item[3] for item in heap] + [v for v, _ in frozen])
    total_error = math.fsum([-item[0] for item in heap] + [e for _, e in frozen])
    depth_exceeded = total_error > target() and (budget_spent or bool(frozen))

    if depth_exceeded:
        reason = "interval budget" if budget_spent else "depth cap"
        logger.warning(
            f"Adaptive quadrature on [{lo}, {hi}] hit its {reason}, error estimate {total_error:.3e}"
        )

    return QuadratureEstimate(total, total_error, evaluations, depth_exceeded)


class SingularEnd(Enum):
    LO = "lo"
    HI = "hi"


# keeps the innermost graded breakpoint representable
_MAX_GRADING = 40.0
_SMALLEST_DISTANCE = 1e-290


@lru_cache(maxsize=32)
def _legendre_01(points: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(points)
    return 0.5 * (x + 1.0), 0.5 * w


def grading_exponent(strength: float) -> float:
    return min(max(2.0, 3.0 / (1.0 + strength)), _MAX_GRADING)


def graded_breakpoints(
    length: float, strength: float, n_panels: int, floor: float = 0.0, end_levels: int = 0
) -> np.ndarray:
    """Distances from the singular end at which panels start and stop.

    The base mesh is ``length * (j / n_panels)**q``. The innermost panel is
    then halved repeatedly toward the singularity, and every other panel
    wider than its distance to the singularity is split geometrically, so
    each panel away from the end sees the singularity at least one panel
    width away. ``end_levels`` sets a minimum number of halvings, which
    also applies when strength is 0.
    """
    q = grading_exponent(strength)
    base = length * (np.arange(n_panels + 1) / n_panels) ** q
    points = [base[1:]]

    levels = min(math.ceil(56.0 / (1.0 + strength)), 1000) if strength != 0.0 else 0
    levels = max(levels, end_levels)
    if levels > 0:
        inner = base[1] * 0.5 ** np.arange(1, levels + 1)
        points.append(inner[inner > max(floor, _SMALLEST_DISTANCE)])

    for near, far in zip(base[1:-1], base[2:]):
        if near > 0.0 and far > 2.0 * near:
            m = int(math.floor(math.log2(far / near)))
            extra = near * 2.0 ** np.arange(1, m + 1)
            points.append(extra[extra < far * (1.0 - 1e-12)])

    cuts = np.unique(np.concatenate(points))
    cuts = cuts[cuts > floor]
    return np.concatenate([[floor if floor > 0.0 else 0.0], cuts])


def graded_mesh_singular(
    f: Integrand,
    lo: float,
    hi: float,
    singular_end: SingularEnd,
    strength: float,
    n_panels: int,
    *,
    points: Optional[int] = None,
    distance_form: bool = False,
    end_levels: int = 0,
) -> QuadratureEstimate:
    """Integrate f over [lo, hi] with panels graded toward one endpoint.

    The integrand may behave like ``dist**strength`` at the singular end.
    Each panel uses a ``points``-point Gauss-Legendre rule; a rule of half
    the size on the same panels gives the error estimate.

    With ``distance_form`` the integrand receives the distance from the
    singular end instead of the abscissa, which keeps kernels like
    ``(x**rho - tau**rho)**(alpha - 1)`` accurate arbitrarily close to the
    singularity. Otherwise panels closer to the end than the floating-point
    resolution at that end are dropped, and the dropped piece, extrapolated
    from the innermost node as ``C * dist**strength``, is added to the
    error estimate.

    Raises:
        NonIntegrableSingularity: strength <= -1
        ArgsOutOfRange: n_panels < 2 or a bad interval
    """
    points = config.GRADED_PANEL_POINTS if points is None else points
    if not strength > -1.0:
        raise NonIntegrableSingularity(f"singularity strength {strength} is not integrable")
    if n_panels < 2:
        raise ArgsOutOfRange(f"graded mesh needs at least 2 panels, got {n_panels}")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ArgsOutOfRange(f"graded mesh needs finite lo < hi, got [{lo}, {hi}]")

    end_value = lo if singular_end is SingularEnd.LO else hi
    floor = 0.0 if distance_form else 64.0 * np.finfo(float).eps * abs(end_value)
    cuts = graded_breakpoints(hi - lo, strength, n_panels, floor, end_levels)

    left, right = cuts[:-1], cuts[1:]
    width = right - left
    x_hi, w_hi = _legendre_01(points)
    x_lo, w_lo = _legendre_01(max(points // 2, 1))

    def panel_sums(x: np.ndarray, w: np.ndarray) -> np.ndarray:
        dist = left[:, None] + width[:, None] * x[None, :]
        if distance_form:
            arg = dist
        elif singular_end is SingularEnd.LO:
            arg = lo + dist
        else:
            arg = hi - dist
        values = _checked(f(arg), arg.shape)
        return width * (values @ w)

    fine = panel_sums(x_hi, w_hi)
    coarse = panel_sums(x_lo, w_lo)
    value = math.fsum(fine)
    error = float(np.sum(np.abs(fine - coarse)))
    evaluations = len(width) * (len(x_hi) + len(x_lo))

    if floor > 0.0:
        d0 = left[0] + width[0] * x_hi[0]
        arg0 = lo + d0 if singular_end is SingularEnd.LO else hi - d0
        d0 = abs(arg0 - end_value) or d0
        near = abs(float(_checked(f(np.array([arg0])), (1,))[0]))
        error += near * d0 ** (-strength) * floor ** (1.0 + strength) / (1.0 + strength)
        evaluations += 1

    return QuadratureEstimate(value, error, evaluations)
