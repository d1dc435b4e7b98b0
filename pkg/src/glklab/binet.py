"""The Binet function mu(x) and its companion nu(x).

mu(x) = log Gamma(x+1) - (x + 1/2) log x + x - log sqrt(2 pi) is available
from its definition and from four improper-integral representations, so each
can be checked against the others. nu(x) = mu'(x) + 1/(2x) has two Poisson
integral forms.
"""

from __future__ import annotations

import enum
import math
from typing import Optional

from .quadrature import (IntegralEstimate, Integrand, QuadratureConfig,
                         QuadratureError, Status, integrate_semi_infinite)
from .specialfn import LOG_2PI, binet_kernel, log_gamma

__all__ = [
    "MuMethod",
    "NuVariant",
    "mu",
    "nu",
    "inner_arctan_integral",
    "mu_derivative_identity_residual",
]

_TWO_PI = 2.0 * math.pi
_EPS = 2.220446049250313e-16


class MuMethod(str, enum.Enum):
    DEFINITION = "definition"
    SCHAAR = "schaar"
    SCHAAR_SCALED = "schaar_scaled"
    LOSCH_SCHOBLIK = "losch_schoblik"
    BINET_FIRST = "binet_first"

    def __str__(self) -> str:
        return self.value


class NuVariant(str, enum.Enum):
    POISSON_EXP = "poisson_exp"
    POISSON_RATIONAL = "poisson_rational"

    def __str__(self) -> str:
        return self.value


def _bose(s: float) -> float:
    """1 / (e^s - 1) without overflow for large s."""
    return math.exp(-s) / -math.expm1(-s)


def _log_one_minus_exp(s: float) -> float:
    """log(1 - e^-s) for s > 0."""
    if s > math.log(2.0):
        return math.log1p(-math.exp(-s))
    return math.log(-math.expm1(-s))


def _check_x(x: float) -> float:
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"x must be a positive finite number, got {x!r}")
    return x


def _mu_definition(x: float) -> IntegralEstimate:
    parts = [log_gamma(x + 1.0), -(x + 0.5) * math.log(x), x, -0.5 * LOG_2PI]
    value = math.fsum(parts)
    bound = 1e-13 + 4 * _EPS * math.fsum(abs(p) for p in parts)
    return IntegralEstimate(value, bound, 0, Status.CONVERGED)


def _mu_integrand(x: float, method: MuMethod) -> tuple[Integrand, float]:
    """Integrand and the constant factor in front of its integral."""
    if method is MuMethod.SCHAAR:
        a = _TWO_PI * x
        # arctan(t)/(e^{a t} - 1) -> 1/a as t -> 0
        f = lambda t: math.atan(t) * _bose(a * t) if t >= 1e-15 else 1.0 / a
        return Integrand(f, f"schaar mu({x})"), 2.0 * x
    if method is MuMethod.SCHAAR_SCALED:
        s = 1.0 / (_TWO_PI * x)
        f = lambda u: math.atan(u * s) * _bose(u)
        return Integrand(f, f"schaar_scaled mu({x})"), 1.0 / math.pi
    if method is MuMethod.LOSCH_SCHOBLIK:
        x2 = x * x
        f = lambda t: _log_one_minus_exp(_TWO_PI * t) / (t * t + x2)
        return Integrand(f, f"losch_schoblik mu({x})"), -x / math.pi
    if method is MuMethod.BINET_FIRST:
        f = lambda t: math.exp(-x * t) * binet_kernel(t) / t
        return Integrand(f, f"binet_first mu({x})"), 1.0
    raise ValueError(f"no integral form for method {method!r}")


def _scaled(est: IntegralEstimate, c: float, shift: float = 0.0) -> IntegralEstimate:
    return IntegralEstimate(c * est.value + shift, abs(c) * est.error_bound,
                            est.evals, est.status)


def mu(x: float, method: MuMethod | str = MuMethod.DEFINITION,
       cfg: Optional[QuadratureConfig] = None) -> IntegralEstimate:
    """Binet function mu(x) by the selected representation.

    ``definition`` uses :func:`log_gamma` directly and costs no quadrature;
    the other methods integrate over (0, inf).
    """
    x = _check_x(x)
    method = MuMethod(method)
    if method is MuMethod.DEFINITION:
        return _mu_definition(x)
    f, c = _mu_integrand(x, method)
    return _scaled(integrate_semi_infinite(f, cfg), c)


def nu(x: float, variant: NuVariant | str = NuVariant.POISSON_EXP,
       cfg: Optional[QuadratureConfig] = None) -> IntegralEstimate:
    """nu(x) = mu'(x) + 1/(2x) = psi(x+1) - log x by a Poisson integral.

    ``poisson_exp`` integrates e^{-xt} (1/t - 1/(e^t - 1)); the sign is chosen
    so that the result is the positive nu(x). ``poisson_rational`` computes
    1/(2x) + 2 int t / ((1+t^2)(1 - e^{2 pi x t})) dt.
    """
    x = _check_x(x)
    variant = NuVariant(variant)
    if variant is NuVariant.POISSON_EXP:
        # 1/t - 1/(e^t - 1) = 1/2 - binet_kernel(t)
        f = lambda t: math.exp(-x * t) * (0.5 - binet_kernel(t))
        return integrate_semi_infinite(Integrand(f, f"poisson_exp nu({x})"), cfg)
    a = _TWO_PI * x
    f = lambda t: t / (1.0 + t * t) * _bose(a * t)
    est = integrate_semi_infinite(Integrand(f, f"poisson_rational nu({x})"), cfg)
    return _scaled(est, -2.0, 0.5 / x)


def inner_arctan_integral(u: float) -> float:
    """Closed form of int_0^{1/2} arctan(u / (2 pi x)) dx.

    pi/4 - arctan(pi/u)/2 + u/(4 pi) log(1 + pi^2/u^2); the first two terms
    are combined as arctan(u/pi)/2 so nothing cancels for small u.
    """
    u = float(u)
    if not (u > 0 and math.isfinite(u)):
        raise ValueError(f"u must be a positive finite number, got {u!r}")
    return 0.5 * math.atan(u / math.pi) + u / (4.0 * math.pi) * math.log1p(math.pi ** 2 / u ** 2)


def mu_derivative_identity_residual(x: float, h: float = 1e-4,
                                    cfg: Optional[QuadratureConfig] = None) -> float:
    """|(mu(x+h) - mu(x-h)) / 2h + 1/(2x) - nu(x)|, nu taken from poisson_exp."""
    x = _check_x(x)
    if not 1e-6 <= h <= 1e-3:
        raise ValueError("h must lie in [1e-6, 1e-3]")
    if h >= x:
        raise ValueError("h must be smaller than x")
    est = nu(x, NuVariant.POISSON_EXP, cfg)
    if not est.converged:
        raise QuadratureError(f"nu({x})", est)
    slope = (_mu_definition(x + h).value - _mu_definition(x - h).value) / (2.0 * h)
    return abs(slope + 0.5 / x - est.value)
