"""
Real gamma, log-gamma and beta functions

A single Lanczos approximation (g = 7, nine coefficients) backs all three,
so results do not depend on the platform's libm gamma. Reflection handles
arguments below 1/2 and exact factorials handle small positive integers.
Around the zeros of log-gamma at 1 and 2 a Taylor series in zeta(k) - 1
keeps the relative accuracy.
"""

import logging
import math

from ..models.errors import NonPositiveArgument, PoleArgument

logger = logging.getLogger(__name__)

_LANCZOS_G = 7.0
_LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
_LOG_SQRT_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# gamma overflows a double just above this
_GAMMA_MAX_ARG = 171.6
# log(gamma(x)) is used directly below this
_LOG_GAMMA_DIRECT_MAX = 100.0
# beta switches to log-gamma once p + q reaches this
_BETA_DIRECT_MAX = 170.0
_MAX_EXACT_FACTORIAL = 171

_EULER_GAMMA = 0.57721566490153286061
# log-gamma uses its Taylor series within this distance of 1 and of 2
_SERIES_RADIUS = 0.5
_SERIES_TERMS = 40
# B_2, B_4, ..., B_14
_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0)


def _zeta_minus_one(k: int, cutoff: int = 16) -> float:
    """zeta(k) - 1 for k >= 2 by Euler-Maclaurin summation from n = cutoff"""
    terms = [float(n) ** -k for n in range(2, cutoff)]
    n = float(cutoff)
    terms.append(n ** (1 - k) / (k - 1))
    terms.append(0.5 * n ** -k)
    rising = float(k)  # k (k+1) ... (k+2j-2)
    factorial = 2.0  # (2j)!
    for j, b in enumerate(_BERNOULLI, start=1):
        terms.append(b / factorial * rising * n ** (-k - 2 * j + 1))
        rising *= (k + 2 * j - 1) * (k + 2 * j)
        factorial *= (2 * j + 1) * (2 * j + 2)
    return math.fsum(terms)


# (-1)^k (zeta(k) - 1) / k for k = 2 .. _SERIES_TERMS + 1
_SERIES_COEFFICIENTS = tuple(
    (-1.0) ** k * _zeta_minus_one(k) / k for k in range(2, _SERIES_TERMS + 2)
)


def _log_gamma_1p_tail(z: float) -> float:
    """log(gamma(1 + z)) + log(1 + z), for |z| <= 1/2"""
    total = 0.0
    for c in reversed(_SERIES_COEFFICIENTS):
        total = total * z + c
    return z * (1.0 - _EULER_GAMMA) + total * z * z


def _lanczos_sum(z: float) -> float:
    total = _LANCZOS_COEFFICIENTS[0]
    for i, c in enumerate(_LANCZOS_COEFFICIENTS[1:], start=1):
        total += c / (z + i)
    return total


def _sinpi(x: float) -> float:
    """sin(pi x) with the argument reduced mod 2 first"""
    r = math.fmod(x, 2.0)
    if r < 0.0:
        r += 2.0
    if r <= 0.5:
        return math.sin(math.pi * r)
    if r <= 1.5:
        return math.sin(math.pi * (1.0 - r))
    return math.sin(math.pi * (r - 2.0))


def _is_pole(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Gamma function for real, non-pole arguments.

    Returns ``inf`` past the overflow threshold (about 171.6).

    Raises:
        PoleArgument: x is zero or a negative integer
    """
    x = float(x)
    if math.isnan(x):
        raise PoleArgument("gamma of NaN")
    if _is_pole(x):
        raise PoleArgument(f"gamma has a pole at {x}")

    if x < 0.5:
        return math.pi / (_sinpi(x) * gamma(1.0 - x))

    if x == math.floor(x) and x <= _MAX_EXACT_FACTORIAL:
        return float(math.factorial(int(x) - 1))

    if x > _GAMMA_MAX_ARG:
        logger.debug(f"gamma({x}) overflows")
        return math.inf

    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    # split the power so t**(z+0.5) cannot overflow before exp(-t) is applied
    half_power = t ** ((z + 0.5) / 2.0)
    return _SQRT_TWO_PI * half_power * (half_power * math.exp(-t)) * _lanczos_sum(z)


def log_gamma(x: float) -> float:
    """Natural log of gamma for x > 0.

    Raises:
        NonPositiveArgument: x <= 0
    """
    x = float(x)
    if not x > 0.0:
        raise NonPositiveArgument(f"log_gamma needs x > 0, got {x}")

    if abs(x - 1.0) <= _SERIES_RADIUS:
        z = x - 1.0
        return _log_gamma_1p_tail(z) - math.log1p(z)
    if abs(x - 2.0) < _SERIES_RADIUS:
        # log gamma(2 + z) = log(1 + z) + log gamma(1 + z)
        return _log_gamma_1p_tail(x - 2.0)

    if x < _LOG_GAMMA_DIRECT_MAX:
        return math.log(gamma(x))

    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def beta(p: float, q: float) -> float:
    """Beta function B(p, q) = gamma(p) gamma(q) / gamma(p + q) for p, q > 0.

    Both paths are symmetric in (p, q) operation by operation, so
    ``beta(p, q) == beta(q, p)`` holds exactly.

    Raises:
        NonPositiveArgument: p <= 0 or q <= 0
    """
    p = float(p)
    q = float(q)
    if not (p > 0.0 and q > 0.0):
        raise NonPositiveArgument(f"beta needs p, q > 0, got ({p}, {q})")

    s = p + q
    if s < _BETA_DIRECT_MAX:
        numerator = gamma(p) * gamma(q)
        if math.isfinite(numerator):
            return numerator / gamma(s)

    return math.exp((log_gamma(p) + log_gamma(q)) - log_gamma(s))
