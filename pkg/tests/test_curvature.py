import math
from decimal import Decimal

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from renyi_convexity.curvature import (
    cumulants_at_one,
    curvature_report,
    f_derivatives,
    find_inflections,
    first_derivative,
    g_beta,
    g_beta_derivative,
    h0_spike_family,
    second_derivative,
    second_derivative_at_zero,
    second_derivative_slope_form,
)
from renyi_convexity.distribution import make_distribution, uniform
from renyi_convexity.entropy import renyi_entropy
from renyi_convexity.errors import InvalidRange, ValidationError, ZeroProbability
from renyi_convexity.oracle import DiffScheme, finite_difference, highprec_entropy

from corpus import ORACLE_ALPHAS, named_distribution

CONVEX = named_distribution("convex")
LOG2_SQ = math.log(2) ** 2

probs = st.lists(st.floats(1e-3, 1.0), min_size=2, max_size=25).map(lambda v: make_distribution(np.array(v) / math.fsum(v)))


def test_f_derivatives_degenerate():
    f = f_derivatives(make_distribution([0.5, 0.5]), 1)
    assert f.f == 0 and f.f1 == pytest.approx(-math.log(2)) and abs(f.f2) < 1e-16 and abs(f.f3) < 1e-16
    f = f_derivatives(uniform(7), 3.0)
    assert abs(f.f2) < 1e-15 and abs(f.f3) < 1e-15


def test_f_derivatives_convex_example_at_one():
    # xi takes log 0.4 w.p. 0.8 and log 0.2 w.p. 0.2; the gap is log 2
    f = f_derivatives(CONVEX, 1)
    assert f.f2 == pytest.approx(0.16 * LOG2_SQ, rel=1e-14)
    assert f.f3 == pytest.approx(0.8 * 0.2 * (1 - 2 * 0.8) * math.log(2) ** 3, rel=1e-13)


def test_cumulants():
    c = cumulants_at_one(uniform(5))
    assert c.m1 == pytest.approx(-math.log(5)) and c.m2 == pytest.approx(math.log(5) ** 2)
    assert c.m3 == pytest.approx(-math.log(5) ** 3) and abs(c.variance) < 1e-15
    assert cumulants_at_one(make_distribution([1.0])).m1 == 0
    c = cumulants_at_one(CONVEX)
    assert c.m1 == pytest.approx(0.8 * math.log(0.4) + 0.2 * math.log(0.2), rel=1e-15)
    assert c.third_cumulant == pytest.approx(c.m3 - 3 * c.m2 * c.m1 + 2 * c.m1**3, rel=1e-9)


def test_first_derivative_values():
    assert first_derivative(CONVEX, 1) == pytest.approx(-0.08 * LOG2_SQ, rel=1e-14)
    assert abs(first_derivative(uniform(6), 2.0)) < 1e-15


@pytest.mark.parametrize("a", ORACLE_ALPHAS + (1.0,))
def test_convex_example_matches_decimal_differences(a):
    fn = lambda x: highprec_entropy(CONVEX, x, exact=True)
    x = Decimal(a)
    assert first_derivative(CONVEX, a) == pytest.approx(float(finite_difference(fn, x, DiffScheme(1, 1e-4), 0.0)), rel=1e-10, abs=0)
    assert second_derivative(CONVEX, a) == pytest.approx(float(finite_difference(fn, x, DiffScheme(2, 1e-4), 0.0)), rel=1e-8, abs=0)


def test_second_derivative_at_one_is_minus_third_cumulant_over_three():
    assert second_derivative(CONVEX, 1) == pytest.approx(-cumulants_at_one(CONVEX).third_cumulant / 3, rel=1e-15, abs=0)


def test_second_derivative_float_fd_example():
    d = make_distribution([0.25, 0.75])
    h = 1e-4
    fd = (renyi_entropy(d, 2 + h) - 2 * renyi_entropy(d, 2) + renyi_entropy(d, 2 - h)) / h**2
    assert second_derivative(d, 2) == pytest.approx(fd, abs=1e-6)


def test_uniform_has_zero_curvature():
    for a in (0.1, 0.999, 1.0, 1.5, 9.0):
        assert abs(second_derivative(uniform(9), a)) < 1e-12
        assert abs(first_derivative(uniform(9), a)) < 1e-12
    assert second_derivative_at_zero(uniform(9)) == pytest.approx(0, abs=1e-14)


def test_series_crossover_is_smooth():
    # both sides of the series radius agree with each other
    d = make_distribution([0.1, 0.2, 0.3, 0.4])
    inside, outside = second_derivative(d, 1 + 0.99e-4), second_derivative(d, 1 + 1.01e-4)
    assert inside == pytest.approx(outside, rel=1e-5)


def test_slope_form_singular_at_one():
    with pytest.raises(ValidationError):
        second_derivative_slope_form(CONVEX, 1.0)


def test_full_support_required():
    d = make_distribution([0, 0.5, 0.5])
    for fn in (first_derivative, second_derivative):
        with pytest.raises(ZeroProbability):
            fn(d, 2)


def test_h2_at_zero_matches_one_sided_difference_of_h1():
    # one-sided second-order difference of H' starting at 0
    h = 1e-5
    fd = (-3 * first_derivative(CONVEX, 1e-12 + 0) + 4 * first_derivative(CONVEX, h) - first_derivative(CONVEX, 2 * h)) / (2 * h)
    assert second_derivative_at_zero(CONVEX) == pytest.approx(fd, rel=1e-6)


def test_curvature_report():
    r = curvature_report(CONVEX, 2)
    assert r.h == renyi_entropy(CONVEX, 2) and r.h2 == second_derivative(CONVEX, 2)


def test_no_inflection_for_convex_example():
    assert find_inflections(CONVEX) == []


def test_inflection_range_validation():
    with pytest.raises(InvalidRange):
        find_inflections(CONVEX, 1.0, 0.5)


def test_g_beta():
    assert g_beta(uniform(5), 0.7) == pytest.approx(-math.log(5), rel=1e-14)
    assert g_beta(make_distribution([0.5, 0.5]), 1) == pytest.approx(-math.log(2), rel=1e-15)
    assert g_beta(CONVEX, 1) == pytest.approx(math.log(0.36), rel=1e-15)
    assert abs(g_beta_derivative(uniform(5), 2.0)) < 1e-15


def test_g_beta_derivative_matches_difference():
    fd = finite_difference(lambda b: g_beta(CONVEX, b), 1.0, DiffScheme(1, 1e-3))
    assert g_beta_derivative(CONVEX, 1.0) == pytest.approx(fd, abs=1e-6)


def test_spike_family():
    assert h0_spike_family(10, 0.1) == pytest.approx(0, abs=1e-13)
    # n = 2: the (1/N - 1/N^2)(log eps)^2 term dominates
    assert h0_spike_family(2, 1e-6) > 0.5 * 0.25 * math.log(1e-6) ** 2
    # frozen from an independent numpy evaluation
    for eps, want in ((1e-2, 0.22853246158676543), (1e-4, 3.2343330053031876), (1e-8, 20.6540774499006)):
        assert h0_spike_family(10, eps) == pytest.approx(want, rel=1e-10)
    with pytest.raises(InvalidRange):
        h0_spike_family(10, 0.2)


@settings(max_examples=60, deadline=None)
@given(probs, st.sampled_from(ORACLE_ALPHAS))
def test_two_h2_forms_agree(d, a):
    e, s = second_derivative(d, a), second_derivative_slope_form(d, a)
    assert abs(e - s) <= 1e-8 * max(abs(e), 1e-2)


@settings(max_examples=60, deadline=None)
@given(probs, st.floats(0.05, 20))
def test_first_derivative_never_positive(d, a):
    assert first_derivative(d, a) <= 1e-15
