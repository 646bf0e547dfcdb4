"""Rényi entropy as a function of its order: values, derivatives, curvature and robustness."""
from .curvature import (
    curvature_report,
    cumulants_at_one,
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
from .discrete import BinomialSpec, PoissonSpec, TruncationPolicy, binomial_renyi, convergence_table, poisson_renyi
from .distribution import DEFAULT_POLICY, Distribution, TolerancePolicy, make_distribution, read_distribution, uniform
from .entropy import (
    entropy_gradient,
    entropy_limit_infinity,
    entropy_limit_zero,
    power_sums,
    renyi_divergence,
    renyi_entropy,
    shannon_entropy,
)
from .errors import NumericalFailure, RenyiError, ValidationError
from .negative import build_two_level, curvature_certificate, r_of_x, solve_for_ratio, y_of_x
from .robustness import PerturbationSpec, classify, empirical_rate, entropy_drop, uniform_stability_scan

__version__ = "0.1.0"
