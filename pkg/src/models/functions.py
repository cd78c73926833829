"""
Integrand catalog

A closed set of elementary functions the operators are applied to, plus
the text grammar ``name:real(,real)*`` used on the command line:

    const:c        f(t) = c
    pow:mu         f(t) = t**mu
    poly:c0,...,cd f(t) = c0 + c1 t + ... + cd t**d
    exp:lam        f(t) = exp(lam t)
    logpow:k[,t0]  f(t) = log(t / t0)**k     (t0 defaults to 1)
    sin:w          f(t) = sin(w t)

The wrappers at the bottom (PowerWeighted, EdgeWeighted, Pointwise) are
built by the analysis code and never parsed from text.
"""

import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import ArgsOutOfRange, FunctionSpecSyntaxError

#: (coefficient, exponent) pairs of a finite power sum.
PowerTerms = List[Tuple[float, float]]


class FunctionSpec(ABC):
    """An integrand evaluated elementwise on numpy arrays"""

    @abstractmethod
    def __call__(self, t: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def to_text(self) -> str:
        ...

    def power_terms(self) -> Optional[PowerTerms]:
        """Return the function as a sum of c * t**mu, or None if it is not one"""
        return None

    def split_power(self) -> Tuple[float, "FunctionSpec"]:
        """Factor f(t) = t**p * g(t) with g smooth at the origin"""
        return 0.0, self

    def times_power(self, exponent: float) -> "FunctionSpec":
        """Return t**exponent * f(t)"""
        if exponent == 0.0:
            return self
        return PowerWeighted(self, exponent)

    def __str__(self) -> str:
        return self.to_text()


def _as_array(t) -> np.ndarray:
    return np.asarray(t, dtype=float)


def _store_floats(spec: FunctionSpec, *names: str) -> None:
    """Replace the named fields of a frozen spec by plain Python floats"""
    for name in names:
        object.__setattr__(spec, name, float(getattr(spec, name)))


@dataclass(frozen=True)
class Const(FunctionSpec):
    value: float = 1.0

    def __post_init__(self):
        _store_floats(self, "value")

    def __call__(self, t):
        return np.full_like(_as_array(t), self.value)

    def to_text(self) -> str:
        return f"const:{self.value!r}"

    def power_terms(self):
        return [(self.value, 0.0)]


@dataclass(frozen=True)
class Power(FunctionSpec):
    mu: float
    scale: float = 1.0

    def __post_init__(self):
        _store_floats(self, "mu", "scale")

    def __call__(self, t):
        with np.errstate(invalid="ignore", divide="ignore"):
            return self.scale * np.power(_as_array(t), self.mu)

    def to_text(self) -> str:
        if self.scale == 1.0:
            return f"pow:{self.mu!r}"
        return f"{self.scale!r}*pow:{self.mu!r}"

    def power_terms(self):
        return [(self.scale, self.mu)]

    def split_power(self):
        return self.mu, Const(self.scale)

    def times_power(self, exponent):
        return Power(self.mu + exponent, self.scale)


@dataclass(frozen=True)
class Poly(FunctionSpec):
    """Polynomial with coefficients in increasing degree"""
    coeffs: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise ArgsOutOfRange("poly needs at least one coefficient")

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(_as_array(t), self.coeffs)

    def to_text(self) -> str:
        return "poly:" + ",".join(repr(c) for c in self.coeffs)

    def power_terms(self):
        terms = [(c, float(k)) for k, c in enumerate(self.coeffs) if c != 0.0]
        return terms or [(0.0, 0.0)]


@dataclass(frozen=True)
class Exp(FunctionSpec):
    lam: float

    def __post_init__(self):
        _store_floats(self, "lam")

    def __call__(self, t):
        return np.exp(self.lam * _as_array(t))

    def to_text(self) -> str:
        return f"exp:{self.lam!r}"


@dataclass(frozen=True)
class LogPower(FunctionSpec):
    """(log(t / base_point))**k, defined for t > 0"""
    k: float
    base_point: float = 1.0

    def __post_init__(self):
        _store_floats(self, "k", "base_point")
        if self.k < 0.0:
            raise ArgsOutOfRange(f"logpow exponent must be >= 0, got {self.k}")
        if not self.base_point > 0.0:
            raise ArgsOutOfRange(f"logpow base point must be > 0, got {self.base_point}")

    def __call__(self, t):
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.power(np.log(_as_array(t) / self.base_point), self.k)

    def to_text(self) -> str:
        if self.base_point == 1.0:
            return f"logpow:{self.k!r}"
        return f"logpow:{self.k!r},{self.base_point!r}"


@dataclass(frozen=True)
class Sin(FunctionSpec):
    freq: float

    def __post_init__(self):
        _store_floats(self, "freq")

    def __call__(self, t):
        return np.sin(self.freq * _as_array(t))

    def to_text(self) -> str:
        return f"sin:{self.freq!r}"


@dataclass(frozen=True)
class PowerWeighted(FunctionSpec):
    """t**exponent * base(t)"""
    base: FunctionSpec
    exponent: float

    def __post_init__(self):
        _store_floats(self, "exponent")

    def __call__(self, t):
        t = _as_array(t)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.power(t, self.exponent) * self.base(t)

    def to_text(self) -> str:
        return f"pow:{self.exponent!r}*({self.base.to_text()})"

    def power_terms(self):
        terms = self.base.power_terms()
        if terms is None:
            return None
        return [(c, mu + self.exponent) for c, mu in terms]

    def split_power(self):
        inner, smooth = self.base.split_power()
        return inner + self.exponent, smooth

    def times_power(self, exponent):
        return self.base.times_power(self.exponent + exponent)


@dataclass(frozen=True)
class EdgeWeighted(FunctionSpec):
    """|t**rho - terminal**rho|**exponent * base(t).

    Describes a function that vanishes like a power at one terminal of the
    interval, as a left integral does at ``a`` and a right one at ``b``.
    """
    base: FunctionSpec
    exponent: float
    terminal: float
    rho: float
    upper: bool = False

    def __post_init__(self):
        _store_floats(self, "exponent", "terminal", "rho")
        object.__setattr__(self, "upper", bool(self.upper))

    def __call__(self, t):
        t = _as_array(t)
        gap = np.abs(np.power(t, self.rho) - self.terminal ** self.rho)
        return np.power(gap, self.exponent) * self.base(t)

    def to_text(self) -> str:
        side = "upper" if self.upper else "lower"
        return f"edge[{side},{self.exponent!r}]*({self.base.to_text()})"


@dataclass(frozen=True, eq=False)
class Pointwise(FunctionSpec):
    """Wrap a scalar Python callable"""
    fn: Callable[[float], float]
    label: str = "callable"

    def __call__(self, t):
        t = _as_array(t)
        values = [self.fn(float(v)) for v in t.ravel()]
        return np.asarray(values, dtype=float).reshape(t.shape)

    def to_text(self) -> str:
        return self.label


# Text grammar

_NAME = re.compile(r"\s*([A-Za-z_]+)\s*")

#: name -> (min args, max args)
_ARITY = {
    "const": (1, 1),
    "pow": (1, 1),
    "poly": (1, None),
    "exp": (1, 1),
    "logpow": (1, 2),
    "sin": (1, 1),
}


def parse_function_spec(text: str) -> FunctionSpec:
    """Parse ``name:real(,real)*`` into a FunctionSpec"""
    match = _NAME.match(text)
    if not match:
        raise FunctionSpecSyntaxError("expected a function name", text, 0)

    name = match.group(1).lower()
    if name not in _ARITY:
        raise FunctionSpecSyntaxError(f"unknown function {name!r}", text, match.start(1))

    pos = match.end()
    if pos >= len(text) or text[pos] != ":":
        raise FunctionSpecSyntaxError("expected ':'", text, pos)
    pos += 1

    args: List[float] = []
    for token in text[pos:].split(","):
        stripped = token.strip()
        try:
            value = float(stripped)
        except ValueError:
            raise FunctionSpecSyntaxError(f"bad number {stripped!r}", text, pos) from None
        if math.isnan(value):
            raise FunctionSpecSyntaxError("NaN is not allowed", text, pos)
        args.append(value)
        pos += len(token) + 1

    lo, hi = _ARITY[name]
    if len(args) < lo or (hi is not None and len(args) > hi):
        expected = f"{lo}" if lo == hi else f"{lo}..{hi if hi is not None else 'n'}"
        raise FunctionSpecSyntaxError(
            f"{name} takes {expected} argument(s), got {len(args)}", text, len(text)
        )

    if name == "const":
        return Const(args[0])
    if name == "pow":
        return Power(args[0])
    if name == "poly":
        return Poly(tuple(args))
    if name == "exp":
        return Exp(args[0])
    if name == "logpow":
        try:
            return LogPower(*args)
        except ArgsOutOfRange as e:
            raise FunctionSpecSyntaxError(str(e), text, match.end() + 1) from None
    return Sin(args[0])
