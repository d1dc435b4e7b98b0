"""Representations of log A, the logarithm of the Glaisher-Kinkelin constant.

Each representation is evaluated numerically and solved for log A, so that
all of them can be compared against one pinned reference value.
"""

from __future__ import annotations

import datetime as _dt
import enum
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .binet import inner_arctan_integral
from .quadrature import (IntegralEstimate, Integrand, QuadratureConfig,
                         integrate_finite, integrate_semi_infinite)
from .specialfn import CONSTANTS, LOG_2PI, binet_kernel, log_gamma

__all__ = [
    "RepresentationId",
    "RepresentationResult",
    "ComparisonReport",
    "NOT_APPLICABLE",
    "REFERENCE_LOG_A",
    "reference_log_a",
    "sieve_primes",
    "eval_representation",
    "prime_product_log_a",
    "barnes_limit_log_a",
    "barnes_g_special",
    "elementary_integral_closed_form",
    "representation_integrand",
    "representation_integral",
    "verify_all",
]

REFERENCE_LOG_A = CONSTANTS.log_A
NOT_APPLICABLE = "not_applicable"
BARNES_N_MAX = 2000

_LOG2 = math.log(2.0)
_LOGPI = math.log(math.pi)
_TWO_PI = 2.0 * math.pi


class RepresentationId(str, enum.Enum):
    """One representation of log A; the value is the registry tag."""

    EQ1_PRIME_PRODUCT = "eq1_prime_product"
    EQ2_BARNES_LIMIT = "eq2_barnes_limit"
    EQ8_LOGGAMMA_INTEGRAL = "eq8_loggamma_integral"
    EQ9_XLOGX = "eq9_xlogx"
    EQ10_COTH = "eq10_coth"
    EQ11_EXP_BRACKET = "eq11_exp_bracket"
    EQ12_LOG_BRACKET = "eq12_log_bracket"
    EQ13_TANH = "eq13_tanh"
    EQ28_SCHAAR_NEW = "eq28_schaar_new"
    EQ33_LOSCH_NEW = "eq33_losch_new"

    def __str__(self) -> str:
        return self.value

    @property
    def short(self) -> str:
        return self.value.split("_", 1)[0]

    @property
    def equation(self) -> int:
        return int(self.short[2:])

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self]

    @classmethod
    def parse(cls, text: str) -> "RepresentationId":
        """Accept the full tag (``eq28_schaar_new``) or its prefix (``eq28``)."""
        for rid in cls:
            if text in (rid.value, rid.short):
                return rid
        raise ValueError(f"unknown representation {text!r}")


_DESCRIPTIONS = {
    RepresentationId.EQ1_PRIME_PRODUCT:
        "prod over primes p^(1/(p^2-1)) = A^12 / (2 pi e^gamma)",
    RepresentationId.EQ2_BARNES_LIMIT:
        "limit of (2pi)^(n/2) n^(n^2/2-1/12) e^(-3n^2/4+1/12) / G(n+1)",
    RepresentationId.EQ8_LOGGAMMA_INTEGRAL:
        "int_0^(1/2) log Gamma(x+1) dx = -1/2 - 7/24 log 2 + 1/4 log pi + 3/2 log A",
    RepresentationId.EQ9_XLOGX:
        "log A = 1/12 - 2 int_0^inf x log x / (e^(2 pi x) - 1) dx",
    RepresentationId.EQ10_COTH:
        "(1 - e^(-t/2)) (t coth(t/2) - 2) / t^3 integral",
    RepresentationId.EQ11_EXP_BRACKET:
        "e^(-t) [(8-3t) e^t - 8 e^(t/2) - t] / (t^2 (e^t - 1)) integral",
    RepresentationId.EQ12_LOG_BRACKET:
        "[e^(-t)/8 - (1+t)^(-3/2)/log^2(1+t) - ...] / t integral",
    RepresentationId.EQ13_TANH:
        "tanh(t/4)/t - e^(-t)/4 integral as printed (expected to diverge)",
    RepresentationId.EQ28_SCHAAR_NEW:
        "Schaar-based: [pi/4 - arctan(pi/t)/2 + t/(4pi) log(1+pi^2/t^2)] / (e^t - 1)",
    RepresentationId.EQ33_LOSCH_NEW:
        "Losch-Schoblik-based: log(1 - e^(-2 pi t)) log(1 + 1/(4t^2))",
}


def reference_log_a() -> float:
    return REFERENCE_LOG_A


@dataclass(frozen=True)
class RepresentationResult:
    id: RepresentationId
    log_a_estimate: float
    error_bound: float
    evals: int
    status: str
    elapsed: float

    @property
    def deviation(self) -> float:
        return abs(self.log_a_estimate - REFERENCE_LOG_A)


@dataclass(frozen=True)
class ComparisonReport:
    reference_log_a: float
    results: tuple
    max_abs_deviation: float
    verdict: str
    generated_at: str
    tolerances: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        """JSON-ready mapping; non-finite numbers become ``None``."""
        return {
            "reference_log_a": _finite_or_none(self.reference_log_a),
            "results": [
                {
                    "id": r.id.value,
                    "log_a_estimate": _finite_or_none(r.log_a_estimate),
                    "error_bound": _finite_or_none(r.error_bound),
                    "evals": r.evals,
                    "status": r.status,
                    "deviation": _finite_or_none(r.deviation),
                }
                for r in self.results
            ],
            "max_abs_deviation": _finite_or_none(self.max_abs_deviation),
            "verdict": self.verdict,
        }


def _finite_or_none(v: float) -> Optional[float]:
    return v if math.isfinite(v) else None


# --- integrands -----------------------------------------------------------

def _bose(s: float) -> float:
    return math.exp(-s) / -math.expm1(-s)


def _eq9(t: float) -> float:
    return t * math.log(t) * _bose(_TWO_PI * t)


def _eq10(t: float) -> float:
    # t coth(t/2) - 2 = 2 t binet_kernel(t); the integrand tends to 1/12.
    return -2.0 * math.expm1(-0.5 * t) * binet_kernel(t) / (t * t)


_EQ11_SMALL = 1.0
# Taylor coefficients of 8 - 3t - 8e^{-t/2} - t e^{-t}, starting at t^3.
_EQ11_COEFFS = tuple(
    -8.0 * (-0.5) ** n / math.factorial(n) - (-1.0) ** (n - 1) / math.factorial(n - 1)
    for n in range(3, 26)
)


def _eq11(t: float) -> float:
    if t < _EQ11_SMALL:
        acc = 0.0
        for c in reversed(_EQ11_COEFFS):
            acc = acc * t + c
        num_over_t3 = acc
        # N / (t^2 (e^t - 1)) = (N/t^3) * t / (e^t - 1)
        return num_over_t3 * t / math.expm1(t)
    num = 8.0 - 3.0 * t - 8.0 * math.exp(-0.5 * t) - t * math.exp(-t)
    return num * _bose(t) / (t * t)


def _phi(y: float) -> float:
    """(e^-y - 1 + y) / y^2."""
    if y < 0.5:
        # sum_{k>=0} (-y)^k / (k+2)!
        s = 0.0
        term = 0.5
        k = 0
        while True:
            s += term
            k += 1
            term *= -y / (k + 2)
            if abs(term) < 1e-18 * abs(s):
                break
        return s
    return (math.expm1(-y) + y) / (y * y)


_EQ12_SMALL = 0.05
# Taylor coefficients of the eq12 integrand at t = 0 (exact rationals).
_EQ12_COEFFS = (
    1 / 48, -37 / 384, 1703 / 11520, -7901 / 46080, 117713 / 645120,
    -5863147 / 30965760, 181035437 / 928972800, -742423489 / 3715891200,
    50105536583 / 245248819200, -409047321013 / 1961990553600,
    126403100135341 / 595137134592000, -4629216762074491 / 21424936845312000,
    28221487055196907 / 128549621071872000, -6410037356207741 / 28766348771328000,
    43096726280813882903 / 190720892353904640000,
    -1921400854839215177677 / 8391719263571804160000,
)


def _eq12(t: float) -> float:
    if t < _EQ12_SMALL:
        # the bracket is t/48 + O(t^2); direct evaluation cancels two 1/8's
        acc = 0.0
        for c in reversed(_EQ12_COEFFS):
            acc = acc * t + c
        return acc
    # The two log terms combine to -phi(L/2) / (4 (1+t)) with L = log(1+t).
    lg = math.log1p(t)
    bracket = math.exp(-t) / 8.0 - _phi(0.5 * lg) / (4.0 * (1.0 + t))
    return bracket / t


def _eq12_printed(t: float) -> float:
    lg = math.log1p(t)
    return (math.exp(-t) / 8.0 - 1.0 / ((1.0 + t) ** 1.5 * lg * lg)
            - 0.5 * (lg - 2.0) / ((1.0 + t) * lg * lg)) / t


def _eq13(t: float) -> float:
    return math.tanh(0.25 * t) / t - 0.25 * math.exp(-t)


def _eq28(t: float) -> float:
    return inner_arctan_integral(t) * _bose(t)


def _eq33(t: float) -> float:
    s = _TWO_PI * t
    lo = math.log1p(-math.exp(-s)) if s > _LOG2 else math.log(-math.expm1(-s))
    return lo * math.log1p(0.25 / (t * t))


def _eq8(x: float) -> float:
    return log_gamma(x + 1.0)


# id -> (integrand, finite upper limit or None, scale, offset):
# log A = offset + scale * integral
_INTEGRALS: dict = {
    RepresentationId.EQ8_LOGGAMMA_INTEGRAL:
        (_eq8, 0.5, 2.0 / 3.0, (2.0 / 3.0) * (0.5 + 7.0 / 24.0 * _LOG2 - 0.25 * _LOGPI)),
    RepresentationId.EQ9_XLOGX: (_eq9, None, -2.0, 1.0 / 12.0),
    RepresentationId.EQ10_COTH: (_eq10, None, 1.0 / 3.0, _LOG2 / 9.0 + 1.0 / 24.0),
    RepresentationId.EQ11_EXP_BRACKET:
        (_eq11, None, 1.0 / 12.0, 1.0 / 3.0 + 7.0 / 36.0 * _LOG2 - _LOGPI / 6.0),
    RepresentationId.EQ12_LOG_BRACKET:
        (_eq12, None, 2.0 / 3.0, 1.0 / 3.0 + 7.0 / 36.0 * _LOG2 - _LOGPI / 6.0),
    RepresentationId.EQ13_TANH: (_eq13, None, 1.0 / 3.0, _LOG2 / 36.0),
    RepresentationId.EQ28_SCHAAR_NEW:
        (_eq28, None, 2.0 / (3.0 * math.pi), _LOG2 / 9.0 + 1.0 / 24.0),
    RepresentationId.EQ33_LOSCH_NEW:
        (_eq33, None, -1.0 / (3.0 * math.pi), 1.0 / 24.0 + _LOG2 / 9.0),
}


def representation_integrand(rid: RepresentationId) -> Integrand:
    """The integrand behind an integral representation."""
    rid = RepresentationId(rid)
    if rid not in _INTEGRALS:
        raise ValueError(f"{rid.value} is not an integral representation")
    return Integrand(_INTEGRALS[rid][0], rid.value)


def representation_integral(rid: RepresentationId,
                            cfg: Optional[QuadratureConfig] = None) -> IntegralEstimate:
    """Raw integral of a representation, before solving for log A."""
    rid = RepresentationId(rid)
    f = representation_integrand(rid)
    upper = _INTEGRALS[rid][1]
    if upper is None:
        return integrate_semi_infinite(f, cfg)
    return integrate_finite(f, 0.0, upper, cfg)


# --- non-integral representations ----------------------------------------

def sieve_primes(limit: int) -> list:
    """Primes p <= limit by the sieve of Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, v in enumerate(flags) if v]


def prime_product_log_a(prime_limit: int = 100_000) -> RepresentationResult:
    """log A from the Euler product over primes, truncated at ``prime_limit``.

    12 log A = sum_p log p / (p^2 - 1) + log(2 pi) + gamma. The error bound
    is the tail bound 2 (log N + 1) / N divided by 12.
    """
    if int(prime_limit) != prime_limit or prime_limit < 100:
        raise ValueError("prime_limit must be an integer >= 100")
    start = time.perf_counter()
    n = int(prime_limit)
    s = math.fsum(math.log(p) / (p * p - 1.0) for p in sieve_primes(n))
    estimate = (s + LOG_2PI + CONSTANTS.gamma_euler) / 12.0
    bound = 2.0 * (math.log(n) + 1.0) / n / 12.0
    return RepresentationResult(RepresentationId.EQ1_PRIME_PRODUCT, estimate, bound,
                                0, NOT_APPLICABLE, time.perf_counter() - start)


def barnes_limit_log_a(n: int = 50) -> RepresentationResult:
    """n-th term of the Barnes G limit sequence for A, in log space.

    log G(n+1) = sum_{k=1}^{n-1} log k!, summed with :func:`math.fsum`.
    The error bound is twice the leading asymptotic correction 1/(240 n^2).
    """
    if int(n) != n or n < 2:
        raise ValueError("n must be an integer >= 2")
    if n > BARNES_N_MAX:
        raise OverflowError(f"n={n} exceeds the supported limit {BARNES_N_MAX}")
    start = time.perf_counter()
    n = int(n)
    log_g = math.fsum(log_gamma(k + 1.0) for k in range(1, n))
    ln = math.log(n)
    estimate = math.fsum([0.5 * n * LOG_2PI, (0.5 * n * n - 1.0 / 12.0) * ln,
                          -0.75 * n * n, 1.0 / 12.0, -log_g])
    bound = 2.0 / (240.0 * n * n)
    return RepresentationResult(RepresentationId.EQ2_BARNES_LIMIT, estimate, bound,
                                0, NOT_APPLICABLE, time.perf_counter() - start)


def barnes_g_special(which: str) -> float:
    """G(1/2) or G(1/4) composed from A, pi, Catalan's constant and the lemniscate constant."""
    log_a = CONSTANTS.log_A
    if which == "half":
        return math.exp(_LOG2 / 24.0 + 0.125 - 1.5 * log_a - 0.25 * _LOGPI)
    if which == "quarter":
        return math.exp(3.0 / 32.0 - CONSTANTS.catalan / (4.0 * math.pi)
                        - 9.0 / 16.0 * _LOG2 - 9.0 / 8.0 * log_a
                        - 3.0 / 16.0 * _LOGPI - 3.0 / 8.0 * math.log(CONSTANTS.lemniscate))
    raise ValueError(f"which must be 'half' or 'quarter', got {which!r}")


def elementary_integral_closed_form() -> float:
    """int_0^{1/2} [(x + 1/2) log x - x + log sqrt(2 pi)] dx in closed form."""
    return (-7.0 - 2.0 * _LOG2 + 4.0 * _LOGPI) / 16.0


# --- evaluation -----------------------------------------------------------

def eval_representation(rid: RepresentationId | str,
                        cfg: Optional[QuadratureConfig] = None, *,
                        prime_limit: int = 100_000,
                        barnes_n: int = 50) -> RepresentationResult:
    """Evaluate one representation and solve it for log A.

    Quadrature failures are reported through ``status``; the divergent
    ``eq13_tanh`` case is expected to come back as ``diverged``.
    """
    rid = RepresentationId(rid)
    if rid is RepresentationId.EQ1_PRIME_PRODUCT:
        return prime_product_log_a(prime_limit)
    if rid is RepresentationId.EQ2_BARNES_LIMIT:
        return barnes_limit_log_a(barnes_n)
    start = time.perf_counter()
    est = representation_integral(rid, cfg)
    _, _, scale, offset = _INTEGRALS[rid]
    return RepresentationResult(rid, offset + scale * est.value,
                                abs(scale) * est.error_bound, est.evals,
                                est.status.value, time.perf_counter() - start)


def tolerance_for(rid: RepresentationId, result: RepresentationResult,
                  cfg: QuadratureConfig, barnes_n: int) -> float:
    """Pass threshold on |log A estimate - reference| for one representation."""
    if rid is RepresentationId.EQ1_PRIME_PRODUCT:
        return result.error_bound
    if rid is RepresentationId.EQ2_BARNES_LIMIT:
        return 1e-3 if barnes_n >= 20 else max(1e-3, 2.0 * result.error_bound)
    return max(1e-9, 10.0 * cfg.tolerance(REFERENCE_LOG_A))


def _passes(r: RepresentationResult, tol: float) -> bool:
    if r.id is RepresentationId.EQ13_TANH:
        return r.status == "diverged"
    if r.status not in ("converged", NOT_APPLICABLE):
        return False
    return r.deviation <= tol


def verify_all(cfg: Optional[QuadratureConfig] = None, prime_limit: int = 100_000,
               barnes_n: int = 50, *,
               ids: Sequence[RepresentationId] = tuple(RepresentationId),
               executor: Optional[Callable] = None) -> ComparisonReport:
    """Evaluate every representation and compare each with the reference.

    ``executor`` may be a ``map``-like callable (e.g. ``ThreadPoolExecutor.map``)
    used to fan out the evaluations; results are always ordered by id.
    """
    cfg = cfg or QuadratureConfig()
    order = {rid: i for i, rid in enumerate(RepresentationId)}
    ids = sorted(ids, key=order.__getitem__)
    run = lambda rid: eval_representation(rid, cfg, prime_limit=prime_limit,
                                          barnes_n=barnes_n)
    results = tuple(sorted((executor or map)(run, ids), key=lambda r: order[r.id]))
    tolerances = {r.id: tolerance_for(r.id, r, cfg, barnes_n) for r in results}
    converged = [r.deviation for r in results if r.status == "converged"]
    verdict = all(_passes(r, tolerances[r.id]) for r in results)
    return ComparisonReport(
        reference_log_a=REFERENCE_LOG_A,
        results=results,
        max_abs_deviation=max(converged) if converged else math.nan,
        verdict="pass" if verdict else "fail",
        generated_at=_dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        tolerances=tolerances,
    )
