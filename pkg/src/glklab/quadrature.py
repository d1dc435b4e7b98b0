"""Double-exponential quadrature on finite and half-infinite intervals.

Finite intervals use the tanh-sinh map, ``[0, inf)`` uses the exp-sinh map.
Both refine by halving the step (every level reuses the previous nodes), so
endpoint singularities of logarithmic or algebraic type converge without any
integrand-specific splitting.

Half-infinite integrals are additionally screened by a dyadic tail test: the
contributions of ``[2**k, 2**(k+1)]`` must eventually contract, otherwise the
run is reported as diverged instead of returning a meaningless number.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

__all__ = [
    "Status",
    "QuadratureConfig",
    "IntegralEstimate",
    "Integrand",
    "QuadratureError",
    "integrate_finite",
    "integrate_semi_infinite",
]

_HALF_PI = 0.5 * math.pi
_EPS = 2.220446049250313e-16

# Half-infinite abscissae stop here so that x**2 stays finite in integrands.
_X_MAX = 1e150
_LOG_X_MAX = math.log(_X_MAX)

# The range scan runs on the level-3 grid.
_SCAN_LEVEL = 3
_NEGLIGIBLE = 1e-18

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_GL_NODES = tuple(float(v) for v in _GL_NODES)
_GL_WEIGHTS = tuple(float(v) for v in _GL_WEIGHTS)
_DYADIC_MAX_K = 64


class Status(str, enum.Enum):
    CONVERGED = "converged"
    BUDGET_EXHAUSTED = "budget_exhausted"
    DIVERGED = "diverged"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budget for one quadrature run.

    ``lower_clip`` is the smallest distance from a finite endpoint (or from
    the origin, for half-infinite runs) at which the integrand is sampled.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_evals: int = 200_000
    max_level: int = 12
    lower_clip: float = 1e-15

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if int(self.max_evals) != self.max_evals or self.max_evals < 100:
            raise ValueError("max_evals must be an integer >= 100")
        if int(self.max_level) != self.max_level or self.max_level < 3:
            raise ValueError("max_level must be an integer >= 3")
        if not (0 < self.lower_clip < 1e-6):
            raise ValueError("lower_clip must lie in (0, 1e-6)")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    error_bound: float
    evals: int
    status: Status

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


@dataclass(frozen=True)
class Integrand:
    func: Callable[[float], float]
    label: str = "f"

    def __call__(self, x: float) -> float:
        return self.func(x)


class QuadratureError(ArithmeticError):
    """Raised by callers that need a converged integral and did not get one."""

    def __init__(self, label: str, estimate: IntegralEstimate):
        super().__init__(f"{label}: quadrature {estimate.status.value} "
                         f"(value={estimate.value!r}, "
                         f"error_bound={estimate.error_bound!r})")
        self.estimate = estimate


IntegrandLike = Union[Integrand, Callable[[float], float]]


def _as_integrand(f: IntegrandLike) -> Integrand:
    if isinstance(f, Integrand):
        return f
    return Integrand(f, getattr(f, "__name__", "f"))


class _BudgetExhausted(Exception):
    pass


class _Sampler:
    """Evaluates an integrand, counting calls against the budget."""

    def __init__(self, f: Integrand, max_evals: int):
        self.f = f
        self.max_evals = max_evals
        self.evals = 0

    def reserve(self, n: int) -> None:
        if self.evals + n > self.max_evals:
            raise _BudgetExhausted
        self.evals += n

    def __call__(self, x: float) -> float:
        self.reserve(1)
        return self.raw(x)

    def raw(self, x: float) -> float:
        y = float(self.f(x))
        if not math.isfinite(y):
            raise ValueError(f"integrand {self.f.label!r} is not finite at x={x!r}")
        return y


# A node map returns (x, weight, edge distance) or None when t lies outside
# the usable range (too close to an endpoint, or past _X_MAX).
NodeMap = Callable[[float], Optional[tuple]]


def _finite_map(a: float, b: float, clip: float) -> NodeMap:
    r = 0.5 * (b - a)
    c = 0.5 * (a + b)

    def node(t: float):
        if t == 0.0:
            return c, r * _HALF_PI, r
        u = _HALF_PI * math.sinh(abs(t))
        e = math.exp(-2.0 * u)
        d = 2.0 * r * e / (1.0 + e)
        if d < clip:
            return None
        x = b - d if t > 0 else a + d
        if not a < x < b:
            return None
        w = r * _HALF_PI * math.cosh(t) * 4.0 * e / (1.0 + e) ** 2
        return x, w, d

    return node


def _half_line_map(clip: float) -> NodeMap:
    def node(t: float):
        s = _HALF_PI * math.sinh(t)
        if s > _LOG_X_MAX:
            return None
        x = math.exp(s)
        if x < clip:
            return None
        return x, _HALF_PI * math.cosh(t) * x, x

    return node


@dataclass
class _Edge:
    t: float = 0.0
    x: float = 0.0
    dist: float = 0.0
    fx: float = 0.0
    clipped: bool = False
    gap: float = 0.0
    gap_err: Optional[float] = None

    @property
    def tail(self) -> float:
        # Mass beyond the last node, for power-law behaviour at the edge.
        return self.dist * abs(self.fx) if self.clipped else 0.0

    @property
    def error(self) -> float:
        return self.tail if self.gap_err is None else self.gap_err


def _power_log_roots(f1: float, f2: float, f3: float) -> list:
    """Ratios q = e^(-2 alpha) for which f1, f2/q, f3/q^2 are in arithmetic progression."""
    if f1 == 0.0:
        return []
    disc = f2 * f2 - f1 * f3
    if disc < 0.0:
        if disc < -1e-12 * f2 * f2:
            return []
        disc = 0.0
    root = math.sqrt(disc)
    return [q for q in ((f2 + root) / f1, (f2 - root) / f1) if q > 0.0]


class _DoubleExponential:
    """Level-doubling trapezoidal sum of a transformed integrand."""

    def __init__(self, sample: _Sampler, node: NodeMap, cfg: QuadratureConfig):
        self.sample = sample
        self.node = node
        self.cfg = cfg
        self.terms: dict[float, float] = {}
        self.peak = 0.0
        self.edges = {1: _Edge(), -1: _Edge()}

    def _term(self, t: float):
        nd = self.node(t)
        if nd is None:
            return None
        x, w, d = nd
        fx = self.sample(x)
        self.terms[t] = w * fx
        return x, d, fx, w * fx

    def scan(self) -> None:
        h = 2.0 ** -_SCAN_LEVEL
        centre = self._term(0.0)
        if centre is not None:
            self.peak = abs(centre[3])
        for side in (1, -1):
            quiet = 0
            k = 1
            edge = self.edges[side]
            while True:
                t = side * k * h
                got = self._term(t)
                if got is None:
                    edge.clipped = True
                    break
                x, d, fx, term = got
                edge.t, edge.x, edge.dist, edge.fx = t, x, d, fx
                self.peak = max(self.peak, abs(term))
                quiet = quiet + 1 if abs(term) <= _NEGLIGIBLE * self.peak else 0
                if quiet >= 2:
                    break
                k += 1

    def edge_diverges(self, side: int, end: float, tol: float) -> bool:
        """True when the integrand looks non-integrable at a clipped edge.

        Compares dist*|f| at the edge with the same quantity 1e6 times further
        in; for an integrable x**-p singularity (p < 0.95) it shrinks.
        """
        edge = self.edges[side]
        if not edge.clipped or edge.tail <= tol:
            return False
        if end == math.inf:
            d_in = x_in = edge.x / 1e6
        else:
            d_in = edge.dist * 1e6
            x_in = end - side * d_in
            if abs(x_in - end) >= abs(edge.x - end) + abs(self.edges[-side].x - edge.x):
                return False
        inner = d_in * abs(self.sample(x_in))
        return edge.tail >= 0.5 * inner

    def close_gap(self, side: int, end: float, half_width: float) -> None:
        """Estimate the integral over the clipped gap between ``end`` and the edge.

        f is sampled at distances s = d, d e^2, d e^4, d e^6 from ``end`` and
        two models of f on (0, d) are fitted to the first three samples:

        * a quadratic in log s, integrating to d (2 f1 - 3/2 f2 + 1/2 f3);
        * s^-alpha (c0 + c1 log s), which covers pure powers and
          power-times-log singularities.

        The model that best predicts the fourth sample supplies the gap
        integral; its misfit there, scaled by d, is the error.
        """
        edge = self.edges[side]
        if not edge.clipped or edge.tail <= 1e-3 * self.cfg.abs_tol:
            return
        d = edge.dist
        if d * math.exp(6.0) >= half_width:
            return
        f1 = edge.fx
        f2, f3, f4 = (self.sample(end - side * d * math.exp(2.0 * j)) for j in (1, 2, 3))
        gap = d * (2.0 * f1 - 1.5 * f2 + 0.5 * f3)
        err = d * abs(f4 - (3.0 * f3 - 3.0 * f2 + f1))
        for q in _power_log_roots(f1, f2, f3):
            alpha = -0.5 * math.log(q)
            if alpha >= 1.0:
                continue
            beta = 1.0 - alpha
            slope = 0.5 * (f2 / q - f1)      # c1 d^-alpha
            misfit = abs(f4 - (3.0 * q * q * f2 - 2.0 * q ** 3 * f1))
            if d * misfit / beta < err:
                gap = d * (f1 / beta - slope / beta ** 2)
                err = d * misfit / beta
        edge.gap = gap
        # abscissae near a nonzero end are rounded to its ulp
        edge.gap_err = err + 8 * _EPS * abs(gap) + math.ulp(end) * abs(f1)

    def edge_terms(self, level: int) -> tuple[float, float]:
        """Gap integrals, joined to the trapezoid sum at the edge node.

        Near a clipped edge the transformed integrand g is not negligible and
        falls off roughly like exp(-mu t). For such g the trapezoid sum up to
        the edge exceeds the integral up to it by g_K/mu - h g_K/(e^(mu h) - 1),
        which is removed. mu is estimated from the last two and the two
        before; the spread between the two corrections is the error.
        """
        h = 2.0 ** -level
        corr, err = 0.0, 0.0
        for side, edge in self.edges.items():
            if edge.gap_err is None:
                continue
            g = [self.terms.get(edge.t - side * j * h, 0.0) for j in range(3)]
            excess = [self._excess(g[j], g[j + 1], h) for j in range(2)]
            if excess[0] is None:
                excess[0] = 0.5 * h * g[0]
                err += 0.5 * h * abs(g[0])
            elif excess[1] is not None:
                # the second estimate belongs to node K-1; rescale to node K
                err += abs(excess[0] - excess[1] * g[0] / g[1])
            else:
                err += abs(excess[0])
            corr += edge.gap - excess[0]
        return corr, err

    @staticmethod
    def _excess(g_k: float, g_in: float, h: float) -> Optional[float]:
        if g_k == 0.0 or g_k * g_in <= 0.0 or abs(g_in) <= abs(g_k):
            return None
        mu = math.log(g_in / g_k) / h
        return g_k / mu - h * g_k / math.expm1(mu * h)

    def level_sum(self, level: int) -> tuple[float, float]:
        h = 2.0 ** -level
        tmin, tmax = self.edges[-1].t, self.edges[1].t
        if level > _SCAN_LEVEL:
            kmin = math.ceil(tmin / h)
            kmax = math.floor(tmax / h)
            fresh = [k * h for k in range(kmin, kmax + 1) if k % 2]
            for t in fresh:
                nd = self.node(t)
                if nd is None:
                    continue
                self.terms[t] = nd[1] * self.sample(nd[0])
        vals = [v for t, v in self.terms.items()
                if tmin <= t <= tmax and (t / h).is_integer()]
        total = math.fsum(vals)
        mass = math.fsum(abs(v) for v in vals)
        return h * total, h * mass

    def run(self) -> IntegralEstimate:
        cfg = self.cfg
        prev = None
        growth = 0
        value, err = 0.0, math.inf
        try:
            for level in range(cfg.max_level + 1):
                if level > _SCAN_LEVEL:
                    n_new = self._count_new(level)
                    if self.sample.evals + n_new > cfg.max_evals:
                        raise _BudgetExhausted
                value, mass = self.level_sum(level)
                extra = 0.0
                if level >= _SCAN_LEVEL:
                    corr, extra = self.edge_terms(level)
                    value += corr
                if prev is None:
                    prev = value
                    continue
                tails = self.edges[1].error + self.edges[-1].error + extra
                err = abs(value - prev) + 16.0 * _EPS * mass + tails
                if abs(value) > 2.0 * abs(prev) + cfg.abs_tol:
                    growth += 1
                    if growth >= 3:
                        return IntegralEstimate(value, math.inf, self.sample.evals,
                                                Status.DIVERGED)
                else:
                    growth = 0
                if level >= _SCAN_LEVEL and err <= cfg.tolerance(value):
                    return IntegralEstimate(value, err, self.sample.evals,
                                            Status.CONVERGED)
                prev = value
        except _BudgetExhausted:
            pass
        return IntegralEstimate(value, err, self.sample.evals,
                                Status.BUDGET_EXHAUSTED)

    def _count_new(self, level: int) -> int:
        h = 2.0 ** -level
        kmin = math.ceil(self.edges[-1].t / h)
        kmax = math.floor(self.edges[1].t / h)
        odd_lo = kmin if kmin % 2 else kmin + 1
        if odd_lo > kmax:
            return 0
        return (kmax - odd_lo) // 2 + 1


def integrate_finite(f: IntegrandLike, a: float, b: float,
                     cfg: Optional[QuadratureConfig] = None) -> IntegralEstimate:
    """Integrate ``f`` over ``(a, b)`` with tanh-sinh nodes.

    The integrand is never evaluated at ``a`` or ``b`` themselves, nor closer
    than ``cfg.lower_clip`` to them.
    """
    cfg = cfg or QuadratureConfig()
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise ValueError(f"need finite a < b, got a={a!r}, b={b!r}")
    f = _as_integrand(f)
    sample = _Sampler(f, cfg.max_evals)
    de = _DoubleExponential(sample, _finite_map(a, b, cfg.lower_clip), cfg)
    try:
        de.scan()
        tol = cfg.abs_tol
        if de.edge_diverges(1, b, tol) or de.edge_diverges(-1, a, tol):
            value, _ = de.level_sum(_SCAN_LEVEL)
            return IntegralEstimate(value, math.inf, sample.evals, Status.DIVERGED)
        de.close_gap(1, b, 0.5 * (b - a))
        de.close_gap(-1, a, 0.5 * (b - a))
    except _BudgetExhausted:
        return IntegralEstimate(math.nan, math.inf, sample.evals,
                                Status.BUDGET_EXHAUSTED)
    return de.run()


def _dyadic_tail(sample: _Sampler, cfg: QuadratureConfig) -> tuple[bool, float]:
    """Cauchy test on contributions of ``[2**k, 2**(k+1)]``.

    Returns ``(diverged, partial)`` where ``partial`` is the integral over
    ``[1, 2**k]`` accumulated up to the point the test stopped. Divergence is
    declared when the scan reaches the far tail without the contributions
    becoming negligible and the last three segments each contributed at least
    as much as their predecessor (within ``abs_tol``).
    """
    small = 0.01 * cfg.abs_tol
    quiet = 0
    run = 0
    prev = None
    partial = []
    for k in range(_DYADIC_MAX_K):
        lo = 2.0 ** k
        half = 0.5 * lo
        mid = lo + half
        sample.reserve(len(_GL_NODES))
        seg = half * math.fsum(w * sample.raw(mid + half * z)
                               for z, w in zip(_GL_NODES, _GL_WEIGHTS))
        partial.append(seg)
        mag = abs(seg)
        if prev is not None and mag > cfg.abs_tol and mag >= prev - cfg.abs_tol:
            run += 1
        else:
            run = 0
        quiet = quiet + 1 if mag <= small else 0
        if quiet >= 3:
            return False, math.fsum(partial)
        prev = mag
    return run >= 3, math.fsum(partial)


def integrate_semi_infinite(f: IntegrandLike,
                            cfg: Optional[QuadratureConfig] = None) -> IntegralEstimate:
    """Integrate ``f`` over ``(0, inf)`` with exp-sinh nodes.

    A diverging tail yields ``Status.DIVERGED``; its ``value`` is then the
    partial integral over ``[1, 2**k]`` reached by the tail test and
    ``error_bound`` is infinite.
    """
    cfg = cfg or QuadratureConfig()
    f = _as_integrand(f)
    sample = _Sampler(f, cfg.max_evals)
    try:
        diverged, partial = _dyadic_tail(sample, cfg)
        if diverged:
            return IntegralEstimate(partial, math.inf, sample.evals, Status.DIVERGED)
        de = _DoubleExponential(sample, _half_line_map(cfg.lower_clip), cfg)
        de.scan()
        tol = cfg.abs_tol
        if de.edge_diverges(-1, 0.0, tol) or de.edge_diverges(1, math.inf, tol):
            value, _ = de.level_sum(_SCAN_LEVEL)
            return IntegralEstimate(value, math.inf, sample.evals, Status.DIVERGED)
        de.close_gap(-1, 0.0, 1.0)
    except _BudgetExhausted:
        return IntegralEstimate(math.nan, math.inf, sample.evals,
                                Status.BUDGET_EXHAUSTED)
    return de.run()
