r"""
Operator parameter types

The generalized fractional integral is fixed by five real numbers
:math:`(\alpha, \beta, \rho, \eta, \kappa)`, a side and an interval. The left
operator is

.. math::

    I f(x) = \frac{\rho^{1-\beta} x^\kappa}{\Gamma(\alpha)}
        \int_a^x \frac{\tau^{\rho(\eta+1)-1}}{(x^\rho - \tau^\rho)^{1-\alpha}}
        f(\tau) \,\mathrm{d}\tau,

and the right one integrates over :math:`[x, b]` with outer factor
:math:`x^{\rho\eta}` (or :math:`x^\omega` for the general right form) and
inner weight :math:`\tau^{\kappa+\rho-1}`.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Optional


class Side(Enum):
    """Which terminal the integral runs from"""
    #: Integrates over :math:`[a, x]`.
    LEFT = "left"
    #: Integrates over :math:`[x, b]` with outer factor :math:`x^{\rho\eta}`.
    RIGHT = "right"
    #: Integrates over :math:`[x, b]` with outer factor :math:`x^\omega`.
    RIGHT_GENERAL = "right-general"

    @property
    def is_right(self) -> bool:
        return self is not Side.LEFT


class ClassicalReduction(Enum):
    """Classical operators recovered from special parameter tuples"""
    RIEMANN_LIOUVILLE = "riemann-liouville"
    KATUGAMPOLA = "katugampola"
    HADAMARD_LIMIT = "hadamard-limit"
    ERDELYI_KOBER = "erdelyi-kober"
    WEYL_TYPE = "weyl-type"
    LIOUVILLE_TYPE = "liouville-type"
    GENERAL = "general"


@dataclass(frozen=True)
class Domain:
    """Integration interval; either end may be infinite"""

    #: Lower terminal, ``-inf`` allowed only for :math:`\rho = 1`.
    a: float = 0.0
    #: Upper terminal, ``inf`` allowed.
    b: float = math.inf

    def contains(self, x: float) -> bool:
        return self.a < x < self.b


@dataclass(frozen=True)
class OperatorParams:
    """Full parameter tuple of one generalized fractional integral.

    Instances are immutable; use :meth:`with_changes` to derive variants.
    Range checks live in :func:`src.core.operator_model.validate`.
    """

    #: Order, must be positive.
    alpha: float
    #: Exponent of the :math:`\rho^{1-\beta}` prefactor.
    beta: float
    #: Power-law exponent, must be positive.
    rho: float
    #: Inner weight exponent.
    eta: float = 0.0
    #: Outer power exponent.
    kappa: float = 0.0
    side: Side = Side.LEFT
    domain: Domain = Domain()
    #: Outer exponent of the general right operator, ``None`` otherwise.
    omega: Optional[float] = None

    @property
    def a(self) -> float:
        return self.domain.a

    @property
    def b(self) -> float:
        return self.domain.b

    @property
    def outer_exponent(self) -> float:
        """Exponent of the x-power in front of the integral"""
        if self.side is Side.LEFT:
            return self.kappa
        if self.side is Side.RIGHT_GENERAL:
            return self.omega
        return self.rho * self.eta

    def with_changes(self, **changes: Any) -> "OperatorParams":
        return replace(self, **changes)

    def with_domain(self, a: float, b: float) -> "OperatorParams":
        return replace(self, domain=Domain(a, b))

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "alpha": self.alpha,
            "beta": self.beta,
            "rho": self.rho,
            "eta": self.eta,
            "kappa": self.kappa,
            "side": self.side.value,
            "a": self.a,
            "b": self.b,
        }
        if self.omega is not None:
            data["omega"] = self.omega
        return data
