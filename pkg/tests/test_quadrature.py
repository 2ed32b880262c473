import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import midpoint_rule
from diskmetric.exceptions import DomainError, InvalidInterval, NonConvergence, WindowCoversInterval
from diskmetric.quadrature import (
    IntegrandSpec,
    integrate,
    integrate_excluding,
    integrate_truncated_singular,
    retained_intervals,
)


def test_constant_is_exact():
    res = integrate(IntegrandSpec(lambda t: 1.0), 0.0, math.pi)
    assert res.value == pytest.approx(math.pi, abs=1e-15)
    assert res.abs_error_estimate < 1e-14
    assert res.converged


def test_abs_cos_with_breakpoint():
    res = integrate(IntegrandSpec(lambda t: np.abs(np.cos(t)), [math.pi / 2]), 0.0, math.pi)
    assert res.value == pytest.approx(2.0, abs=1e-12)


def test_secant_integrand_matches_arctan_identity():
    res = integrate(IntegrandSpec(lambda t: 1.0 / (1.0 - 0.5 * np.cos(t))), 0.0, math.pi)
    exact = 2.0 * math.pi / math.sqrt(3.0)
    assert res.value == pytest.approx(exact, abs=1e-10)
    # Riemann cross-check (midpoint rule, 10^6 panels): 3.627598728468435
    assert res.value == pytest.approx(3.627598728468435, abs=1e-10)


def test_scalar_only_integrand():
    spec = IntegrandSpec(lambda t: math.sin(t) ** 2, vectorized=False)
    assert integrate(spec, 0.0, math.pi).value == pytest.approx(math.pi / 2, abs=1e-12)


def test_invalid_interval():
    with pytest.raises(InvalidInterval):
        integrate(IntegrandSpec(lambda t: t), 1.0, 1.0)
    with pytest.raises(InvalidInterval):
        integrate(IntegrandSpec(lambda t: t), 2.0, 1.0)


def test_breakpoints_must_increase():
    with pytest.raises(DomainError):
        IntegrandSpec(lambda t: t, [1.0, 0.5])


def test_non_convergence_is_signalled():
    spec = IntegrandSpec(lambda t: 1.0 / np.sqrt(np.abs(t - 0.3)))
    with pytest.raises(NonConvergence) as info:
        integrate(spec, 0.0, 1.0, 1e-14, 1e-14, max_depth=5)
    assert info.value.result is not None
    assert not info.value.result.converged
    res = integrate(spec, 0.0, 1.0, 1e-14, 1e-14, max_depth=5, strict=False)
    assert not res.converged


def test_truncated_singular_example():
    spec = IntegrandSpec(lambda t: 1.0 / (1.0 - np.cos(t)) - 1.0)
    res = integrate_truncated_singular(spec, 0.0, math.pi / 2, 0.0, 0.1)
    exact = 1.0 / math.tan(0.05) - 1.0 - (math.pi / 2 - 0.1)
    assert res.value == pytest.approx(exact, abs=1e-9)
    assert res.value == pytest.approx(17.5125, abs=5e-5)
    # midpoint rule on [0.1, pi/2]
    assert res.value == pytest.approx(17.51253422773867, abs=1e-6)


def test_window_covering_interval():
    spec = IntegrandSpec(lambda t: 1.0)
    with pytest.raises(WindowCoversInterval):
        integrate_truncated_singular(spec, 0.0, math.pi / 2, 0.0, math.pi / 2)


@pytest.mark.parametrize("eps", [0.01, 0.3, 0.9])
def test_zero_integrand_truncated(eps):
    res = integrate_truncated_singular(IntegrandSpec(lambda t: 0.0), 0.0, 2.0, 1.0, eps)
    assert res.value == 0.0


def test_retained_intervals():
    assert retained_intervals(0.0, 3.0, [(-1.0, 0.5), (1.0, 1.5), (2.9, 4.0)]) == [(0.5, 1.0), (1.5, 2.9)]
    assert retained_intervals(0.0, 1.0, [(-1.0, 2.0)]) == []


def test_excluding_matches_pieces():
    spec = IntegrandSpec(lambda t: np.exp(np.sin(t)))
    whole = integrate_excluding(spec, 0.0, 3.0, [(1.0, 1.2)]).value
    parts = integrate(spec, 0.0, 1.0).value + integrate(spec, 1.2, 3.0).value
    assert whole == pytest.approx(parts, abs=1e-12)


def _random_smooth(rng):
    c = rng.normal(size=4)
    k = rng.integers(1, 6, size=2)
    s = rng.uniform(0.1, 1.0)

    def f(t):
        return c[0] + c[1] * np.sin(k[0] * t) + c[2] * np.cos(k[1] * t) + c[3] * np.exp(s * np.cos(t))

    return f


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), a=st.floats(-3, 0), width=st.floats(0.5, 4), frac=st.floats(0.05, 0.95))
def test_additivity(seed, a, width, frac):
    f = _random_smooth(np.random.default_rng(seed))
    spec = IntegrandSpec(f)
    c = a + width
    b = a + frac * width
    whole = integrate(spec, a, c)
    left, right = integrate(spec, a, b), integrate(spec, b, c)
    slack = whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate
    assert abs(whole.value - left.value - right.value) <= slack + 1e-13


def test_breakpoint_never_hurts_error_estimate():
    f = lambda t: np.abs(np.cos(t))
    for b in (1.0, 2.0, 2.5, 3.0, 4.0):
        with_bp = integrate(IntegrandSpec(f, [math.pi / 2]), 0.0, b)
        without = integrate(IntegrandSpec(f), 0.0, b)
        assert with_bp.abs_error_estimate <= without.abs_error_estimate


def test_oracle_equivalence_random_smooth(rng):
    for _ in range(100):
        f = _random_smooth(rng)
        a = rng.uniform(-2, 0)
        b = a + rng.uniform(0.5, 4.0)
        got = integrate(IntegrandSpec(f), a, b).value
        assert got == pytest.approx(midpoint_rule(f, a, b), abs=1e-6)


def test_converged_implies_within_tolerance(rng):
    for _ in range(20):
        f = _random_smooth(rng)
        res = integrate(IntegrandSpec(f), 0.0, 3.0, 1e-9, 1e-9)
        assert res.converged and res.abs_error_estimate <= max(1e-9, 1e-9 * abs(res.value))
