"""Derivatives of H_alpha in alpha and the search for its inflection points.

Write f(alpha) = log S0(alpha). Then H_alpha = f(alpha) / (1 - alpha), with
f(1) = 0, and f is the cumulant generating function of xi = log p_K,
K ~ p. Around alpha = 1 every derivative of H is a power series in the
cumulants of xi; away from 1 the closed forms in f, f', f'' and the escort
weights are used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .distribution import DEFAULT_POLICY, Distribution, TolerancePolicy, make_distribution
from .entropy import Alpha, as_alpha, log_power_sum, renyi_entropy
from .errors import InvalidRange, ValidationError, ZeroProbability

__all__ = [
    "CumulantTriple",
    "CurvatureReport",
    "EscortWeights",
    "FDerivatives",
    "escort_weights",
    "f_derivatives",
    "cumulants_at_one",
    "first_derivative",
    "second_derivative",
    "second_derivative_slope_form",
    "second_derivative_at_zero",
    "curvature_report",
    "find_inflections",
    "g_beta",
    "g_beta_derivative",
    "h0_spike_family",
]

# inside this distance from alpha = 1 the cumulant series replaces the closed forms
SERIES_RADIUS = 1e-4


class FDerivatives(NamedTuple):
    f: float
    f1: float
    f2: float
    f3: float


@dataclass(frozen=True)
class CumulantTriple:
    """Raw moments of xi = log p_K under K ~ p.

    ``variance`` and ``third_cumulant`` are computed from centred sums, not
    from the raw moments, so they stay accurate when m1**2 dominates m2.
    """

    m1: float
    m2: float
    m3: float
    variance: float
    third_cumulant: float

    @property
    def f1(self) -> float:
        return self.m1

    @property
    def f2(self) -> float:
        return self.variance

    @property
    def f3(self) -> float:
        return self.third_cumulant


@dataclass(frozen=True)
class CurvatureReport:
    alpha: Alpha
    h: float
    h1: float
    h2: float


@dataclass(frozen=True)
class EscortWeights:
    q: np.ndarray
    qprime: np.ndarray


def _require_full(d: Distribution) -> None:
    if not d.full_support:
        raise ZeroProbability("this formula needs every p_k > 0")


def _xi_cumulants(d: Distribution) -> tuple[float, ...]:
    """Mean and cumulants kappa_2..kappa_6 of xi."""
    p = d.support_probs
    lp = np.log(p)
    mean = math.fsum(p * lp)
    c = lp - mean
    mu = [0.0, 0.0] + [math.fsum(p * c**k) for k in range(2, 7)]
    k2 = mu[2]
    k3 = mu[3]
    k4 = mu[4] - 3 * mu[2] ** 2
    k5 = mu[5] - 10 * mu[3] * mu[2]
    k6 = mu[6] - 15 * mu[4] * mu[2] - 10 * mu[3] ** 2 + 30 * mu[2] ** 3
    return mean, k2, k3, k4, k5, k6


def escort_weights(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> EscortWeights:
    """q_k = p_k**alpha / S0 and its alpha-derivative, on the support."""
    a = as_alpha(a, policy)
    lp = np.log(d.support_probs)
    w = a.value * lp
    q = np.exp(w - w.max())
    q /= math.fsum(q)
    mean = math.fsum(q * lp)
    return EscortWeights(q, q * (lp - mean))


def f_derivatives(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> FDerivatives:
    """f = log S0 and its first three derivatives.

    f' = S1/S0, f'' = (S2 S0 - S1^2)/S0^2, f''' = (S3 S0^2 - 3 S2 S1 S0 + 2 S1^3)/S0^3;
    evaluated as the mean, variance and third central moment of log p under
    the escort weights, which is the same quantity without the cancellation.
    """
    a = as_alpha(a, policy)
    lp = np.log(d.support_probs)
    q = escort_weights(d, a).q
    f1 = math.fsum(q * lp)
    c = lp - f1
    return FDerivatives(log_power_sum(d, a.value), f1, math.fsum(q * c**2), math.fsum(q * c**3))


def cumulants_at_one(d: Distribution) -> CumulantTriple:
    p = d.support_probs
    lp = np.log(p)
    m1, k2, k3 = _xi_cumulants(d)[:3]
    return CumulantTriple(
        m1=m1,
        m2=math.fsum(p * lp**2),
        m3=math.fsum(p * lp**3),
        variance=k2,
        third_cumulant=k3,
    )


def _psi(s: np.ndarray) -> np.ndarray:
    """s*exp(s) - expm1(s) = sum_{k>=2} (k-1) s**k / k!, always >= 0."""
    out = s * np.exp(s) - np.expm1(s)
    small = np.abs(s) < 0.05
    if np.any(small):
        x = s[small]
        acc = np.zeros_like(x)
        for k in range(9, 1, -1):
            acc = (acc + (k - 1) / math.factorial(k)) * x
        out[small] = acc * x
    return out


def _escort_kl(d: Distribution, alpha: float) -> float:
    """KL(q_alpha || p) as a sum of nonnegative terms."""
    p = d.support_probs
    lp = np.log(p)
    s = (alpha - 1.0) * lp - log_power_sum(d, alpha)
    return math.fsum(p * _psi(s))


def first_derivative(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """dH/dalpha.

    Away from 1 this is (f'(1-alpha) + f)/(1-alpha)^2, evaluated in the equal
    form -KL(q_alpha || p)/(1-alpha)^2 so that the sign is exact. At and near
    alpha = 1 the cumulant series -k2/2 - k3 t/3 - ... is used.
    """
    _require_full(d)
    a = as_alpha(a, policy)
    t = a.value - 1.0
    if a.is_one or abs(t) < SERIES_RADIUS:
        _, k2, k3, k4, k5, _ = _xi_cumulants(d)
        return -(k2 / 2 + k3 * t / 3 + k4 * t**2 / 8 + k5 * t**3 / 30)
    return -_escort_kl(d, a.value) / (t * t)


def second_derivative(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """d^2 H / dalpha^2 from the escort-weight formula.

    -(1/(1-alpha)^3) * sum ((1-alpha) q'_k + 2 q_k) log(q_k / p_k), with the
    value -f'''(1)/3 at alpha = 1 and its series continuation nearby.
    """
    _require_full(d)
    a = as_alpha(a, policy)
    t = a.value - 1.0
    if a.is_one or abs(t) < SERIES_RADIUS:
        _, _, k3, k4, k5, k6 = _xi_cumulants(d)
        return -(k3 / 3 + k4 * t / 4 + k5 * t**2 / 10 + k6 * t**3 / 36)
    lp = np.log(d.probs)
    esc = escort_weights(d, a)
    log_q_over_p = t * lp - log_power_sum(d, a.value)
    u = -t
    return -math.fsum((u * esc.qprime + 2 * esc.q) * log_q_over_p) / u**3


def second_derivative_slope_form(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """(f''(1-alpha)^2 + 2 f'(1-alpha) + 2 f) / (1-alpha)^3, for alpha != 1.

    Obtained by differentiating H = (f(alpha) - f(1)) / (1 - alpha) twice.
    """
    _require_full(d)
    a = as_alpha(a, policy)
    if a.is_one:
        raise ValidationError("the slope form is singular at alpha = 1")
    f, f1, f2, _ = f_derivatives(d, a)
    u = 1.0 - a.value
    return (f2 * u * u + 2 * f1 * u + 2 * f) / u**3


def second_derivative_at_zero(d: Distribution) -> float:
    """H'' at alpha = 0: 2 log N + var(log p) + 2 mean(log p), N = len(d)."""
    _require_full(d)
    lp = np.log(d.probs)
    n = d.n
    mean = math.fsum(lp) / n
    var = math.fsum((lp - mean) ** 2) / n
    return 2 * (math.log(n) + mean) + var


def curvature_report(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> CurvatureReport:
    a = as_alpha(a, policy)
    return CurvatureReport(a, renyi_entropy(d, a), first_derivative(d, a), second_derivative(d, a))


def find_inflections(
    d: Distribution,
    alpha_min: float = 0.01,
    alpha_max: float = 10.0,
    grid_points: int = 2000,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> list[float]:
    """Sign changes of H'' on a log-spaced grid, refined by bisection.

    Roots closer together than one grid cell can be missed; raise
    ``grid_points`` if that matters.
    """
    _require_full(d)
    if not 0 < alpha_min < alpha_max:
        raise InvalidRange(f"need 0 < alpha_min < alpha_max, got ({alpha_min}, {alpha_max})")
    if grid_points < 2:
        raise InvalidRange("grid_points must be at least 2")
    grid = np.geomspace(alpha_min, alpha_max, int(grid_points))
    values = np.array([second_derivative(d, x, policy) for x in grid])
    signs = np.sign(values)
    roots: list[float] = []
    for i in range(grid.size - 1):
        if signs[i] == 0:
            roots.append(float(grid[i]))
            continue
        if signs[i + 1] == 0 or signs[i] == signs[i + 1]:
            continue
        lo, hi, s_lo = float(grid[i]), float(grid[i + 1]), signs[i]
        while hi - lo > policy.root_tol:
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            s_mid = np.sign(second_derivative(d, mid, policy))
            if s_mid == 0:
                lo = hi = mid
            elif s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    if signs[-1] == 0:
        roots.append(float(grid[-1]))
    return roots


def g_beta(d: Distribution, beta: float) -> float:
    """beta * log sum p**(1 + 1/beta), i.e. -H_{1+1/beta}. Zero entries allowed."""
    if not beta > 0:
        raise InvalidRange("beta must be positive")
    return beta * log_power_sum(d, 1.0 + 1.0 / beta)


def g_beta_derivative(d: Distribution, beta: float) -> float:
    """d/dbeta of :func:`g_beta`.

    Closed form: -sum w_k log(p_k**(1/beta) / sum_i p_i**(1+1/beta)), with w
    the escort weights at 1 + 1/beta. That expression is KL(w || p), summed
    here as nonnegative terms, so the result is never positive.
    """
    _require_full(d)
    if not beta > 0:
        raise InvalidRange("beta must be positive")
    return -_escort_kl(d, 1.0 + 1.0 / beta)


def h0_spike_family(n: int, eps: float) -> float:
    """H''(0) of (eps, (1-eps)/(n-1), ..., (1-eps)/(n-1)); grows without bound as eps -> 0."""
    if n < 2:
        raise InvalidRange("n must be at least 2")
    if not 0 < eps <= 1.0 / n:
        raise InvalidRange(f"eps must lie in (0, 1/n], got {eps!r}")
    rest = (1.0 - eps) / (n - 1)
    return second_derivative_at_zero(make_distribution([eps] + [rest] * (n - 1)))
