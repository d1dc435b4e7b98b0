import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from glklab.quadrature import (IntegralEstimate, Integrand, QuadratureConfig,
                               QuadratureError, Status, integrate_finite,
                               integrate_semi_infinite)

CFG = QuadratureConfig()


def summed_oracle_one_24th(terms: int = 200_000) -> float:
    # int_0^inf t / (e^{2 pi t} - 1) dt = sum_k 1/(2 pi k)^2
    s = math.fsum(1.0 / (2 * math.pi * k) ** 2 for k in range(1, terms + 1))
    n = terms
    tail = 1.0 / n - 1.0 / (2 * n * n) + 1.0 / (6 * n ** 3)  # sum_{k>n} 1/k^2
    return s + tail / (4 * math.pi ** 2)


# --- config and types ------------------------------------------------------

@pytest.mark.parametrize("kw", [
    {"abs_tol": 0.0}, {"rel_tol": -1.0}, {"max_evals": 99}, {"max_level": 2},
    {"lower_clip": 0.0}, {"lower_clip": 1e-6},
])
def test_config_rejects_bad_values(kw):
    with pytest.raises(ValueError):
        QuadratureConfig(**kw)


def test_config_defaults():
    assert (CFG.abs_tol, CFG.rel_tol, CFG.max_evals, CFG.max_level, CFG.lower_clip) == \
        (1e-12, 1e-12, 200_000, 12, 1e-15)


def test_integrand_is_callable_with_label():
    f = Integrand(math.exp, "exp")
    assert f(0.0) == 1.0 and f.label == "exp"


def test_bad_interval():
    with pytest.raises(ValueError):
        integrate_finite(math.exp, 1.0, 0.0)
    with pytest.raises(ValueError):
        integrate_finite(math.exp, 0.0, math.inf)


def test_nonfinite_integrand_value_is_an_error():
    with pytest.raises(ValueError):
        integrate_finite(lambda x: math.nan, 0.0, 1.0)


# --- examples -------------------------------------------------------------

def test_polynomial():
    est = integrate_finite(lambda x: x * x, 0.0, 1.0)
    assert est.status is Status.CONVERGED
    assert abs(est.value - 1 / 3) <= CFG.abs_tol


def test_log_endpoint_singularity():
    est = integrate_finite(math.log, 0.0, 1.0)
    assert est.converged
    assert abs(est.value + 1.0) <= CFG.abs_tol


def test_inverse_sqrt_singularity():
    est = integrate_finite(lambda x: x ** -0.5, 0.0, 1.0)
    assert est.converged
    assert abs(est.value - 2.0) <= 10 * est.error_bound


def test_arctan_inner_integral_at_pi():
    est = integrate_finite(lambda x: math.atan(math.pi / (2 * math.pi * x)), 0.0, 0.5)
    exact = math.pi / 8 + math.log(2) / 4
    assert abs(est.value - exact) <= CFG.abs_tol
    assert abs(exact - 0.5659859) < 1e-7


def test_unit_exponential():
    est = integrate_semi_infinite(lambda t: math.exp(-t))
    assert est.converged
    assert abs(est.value - 1.0) <= CFG.abs_tol


def test_bose_weighted_moment_against_summed_oracle():
    f = lambda t: t * math.exp(-2 * math.pi * t) / -math.expm1(-2 * math.pi * t)
    est = integrate_semi_infinite(f)
    oracle = summed_oracle_one_24th()
    assert abs(oracle - 1 / 24) < 1e-13
    assert abs(est.value - oracle) <= CFG.abs_tol


def test_harmonic_tail_diverges():
    est = integrate_semi_infinite(lambda t: 1.0 / (1.0 + t))
    assert est.status is Status.DIVERGED
    assert est.error_bound == math.inf


def test_nonintegrable_endpoint_diverges():
    est = integrate_finite(lambda x: 1.0 / x, 0.0, 1.0)
    assert est.status is Status.DIVERGED


def test_budget_exhaustion_is_reported():
    est = integrate_finite(lambda x: x ** -0.9, 0.0, 1.0, QuadratureConfig(max_evals=100))
    assert est.status is Status.BUDGET_EXHAUSTED
    assert est.evals <= 100


def test_quadrature_error_carries_estimate():
    est = IntegralEstimate(1.0, math.inf, 5, Status.DIVERGED)
    err = QuadratureError("thing", est)
    assert err.estimate is est and "thing" in str(err)


# --- honesty corpus against mpmath -----------------------------------------

def _mp(f, a, b):
    mpmath.mp.dps = 40
    return float(mpmath.quad(f, [a, b]))


CORPUS = [
    ("x^3 - x", lambda x: x ** 3 - x, 0.0, 1.0, -0.25),
    ("log x", math.log, 0.0, 1.0, -1.0),
    ("x^-0.25", lambda x: x ** -0.25, 0.0, 1.0, 4 / 3),
    ("log^2 x", lambda x: math.log(x) ** 2, 0.0, 1.0, 2.0),
    ("log x log(1-x)", lambda x: math.log(x) * math.log1p(-x), 0.0, 1.0, 2 - math.pi ** 2 / 6),
    ("cos 10x", lambda x: math.cos(10 * x), 0.0, 1.0, math.sin(10.0) / 10),
    ("1/(1+100x^2)", lambda x: 1 / (1 + 100 * x * x), -1.0, 1.0, 0.2 * math.atan(10.0)),
    ("x^0.5 log x", lambda x: math.sqrt(x) * math.log(x), 0.0, 1.0, -4 / 9),
    ("e^-t", lambda t: math.exp(-t), 0.0, None, 1.0),
    ("log t e^-t", lambda t: math.log(t) * math.exp(-t), 0.0, None, -0.5772156649015329),
    ("t^3 e^-t", lambda t: t ** 3 * math.exp(-t), 0.0, None, 6.0),
    ("1/(1+t)^2", lambda t: 1 / (1 + t) ** 2, 0.0, None, 1.0),
    ("log t/(1+t^2)", lambda t: math.log(t) / (1 + t * t), 0.0, None, 0.0),
    ("t^-0.5 e^-t", lambda t: math.exp(-t) / math.sqrt(t), 0.0, None, math.sqrt(math.pi)),
]


@pytest.mark.parametrize("name,f,a,b,exact", CORPUS, ids=[c[0] for c in CORPUS])
def test_error_bound_honesty(name, f, a, b, exact):
    est = integrate_semi_infinite(f) if b is None else integrate_finite(f, a, b)
    assert est.converged
    assert est.error_bound <= max(CFG.abs_tol, CFG.rel_tol * abs(est.value))
    assert abs(est.value - exact) <= 10 * est.error_bound + 1e-16


def test_corpus_closed_forms_match_mpmath():
    mpmath.mp.dps = 30
    for name, f, a, b, exact in CORPUS[:8]:
        mpf = {"x^3 - x": lambda x: x ** 3 - x, "log x": mpmath.log,
               "x^-0.25": lambda x: x ** -0.25, "log^2 x": lambda x: mpmath.log(x) ** 2,
               "log x log(1-x)": lambda x: mpmath.log(x) * mpmath.log(1 - x),
               "cos 10x": lambda x: mpmath.cos(10 * x),
               "1/(1+100x^2)": lambda x: 1 / (1 + 100 * x * x),
               "x^0.5 log x": lambda x: mpmath.sqrt(x) * mpmath.log(x)}[name]
        assert abs(_mp(mpf, a, b) - exact) < 1e-14, name


@pytest.mark.parametrize("a", [0.1, 0.5, 0.9])
def test_nonconverged_bounds_stay_honest(a):
    # hard singularities may not converge, but the bound must still cover the error
    est = integrate_finite(lambda x: x ** -a, 0.0, 1.0)
    assert abs(est.value - 1 / (1 - a)) <= 10 * est.error_bound


# --- properties --------------------------------------------------------------

smooth = st.sampled_from([math.sin, math.cos, math.exp, lambda x: 1 / (1 + x * x),
                          lambda x: x ** 3 - 2 * x, lambda x: math.log1p(x * x)])
coef = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(f=smooth, g=smooth, alpha=coef, beta=coef)
def test_linearity(f, g, alpha, beta):
    a, b = 0.0, 1.0
    h = lambda x: alpha * f(x) + beta * g(x)
    ih, i_f, ig = (integrate_finite(k, a, b) for k in (h, f, g))
    assert ih.converged and i_f.converged and ig.converged
    tol = 3 * CFG.abs_tol
    assert abs(ih.value - alpha * i_f.value - beta * ig.value) <= tol


@settings(max_examples=40, deadline=None)
@given(f=smooth, a=st.floats(-2, 0), width=st.floats(0.1, 3), frac=st.floats(0.05, 0.95))
def test_interval_additivity(f, a, width, frac):
    b = a + width
    c = a + frac * width
    whole, left, right = (integrate_finite(f, *ab) for ab in ((a, b), (a, c), (c, b)))
    assert abs(whole.value - left.value - right.value) <= 3 * CFG.abs_tol


@settings(max_examples=20, deadline=None)
@given(p=st.floats(-0.7, 3.0))
def test_determinism(p):
    f = lambda x: x ** p * math.exp(-x)
    assert integrate_semi_infinite(f) == integrate_semi_infinite(f)
    g = lambda x: x ** p
    assert integrate_finite(g, 0.0, 2.0) == integrate_finite(g, 0.0, 2.0)


@settings(max_examples=30, deadline=None)
@given(p=st.floats(-0.6, 4.0))
def test_converged_implies_bound_within_tolerance(p):
    est = integrate_semi_infinite(lambda x: x ** p * math.exp(-x))
    if est.converged:
        assert est.error_bound <= max(CFG.abs_tol, CFG.rel_tol * abs(est.value))
        assert abs(est.value - math.gamma(p + 1)) <= 10 * est.error_bound + 1e-15
    assert est.evals <= CFG.max_evals
