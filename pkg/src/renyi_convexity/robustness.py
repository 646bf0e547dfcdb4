"""Linear perturbations p(eps) = p + c*eps and the asymptotics of the entropy drop.

The drop is H(p) - H(p(eps)), same sign convention throughout; constants
may be negative when the perturbation raises the entropy.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .distribution import DEFAULT_POLICY, Distribution, TolerancePolicy, make_distribution, uniform
from .entropy import Alpha, as_alpha
from .errors import EpsilonTooLarge, InvalidSpec

__all__ = [
    "PerturbationSpec",
    "AsymptoticLaw",
    "RateFitReport",
    "NearBoundaryWarning",
    "CASE_IDS",
    "perturb",
    "entropy_drop",
    "classify",
    "empirical_rate",
    "uniform_stability_scan",
]

CASE_IDS = (
    "A1.i", "A1.ii", "A1.iii",
    "L1.i", "L1.ii", "L1.iii",
    "G1.i", "G1.ii", "G1.iii", "G1.iv", "G1.v",
)


class NearBoundaryWarning(UserWarning):
    """A regime-selecting sum is close to zero; the classification is fragile."""


@dataclass(frozen=True, eq=False)
class PerturbationSpec:
    """Zero-sum coefficient vector aligned index-wise with a distribution."""

    c: np.ndarray

    def __init__(self, c: Sequence[float]):
        arr = np.array(c, dtype=float).ravel()
        arr.setflags(write=False)
        object.__setattr__(self, "c", arr)

    def validate(self, d: Distribution, policy: TolerancePolicy = DEFAULT_POLICY) -> None:
        c = self.c
        if c.size != d.n:
            raise InvalidSpec(f"{c.size} coefficients for a distribution of length {d.n}")
        if not np.all(np.isfinite(c)):
            raise InvalidSpec("coefficients must be finite")
        if abs(math.fsum(c)) > policy.eq_tol:
            raise InvalidSpec(f"coefficients sum to {math.fsum(c)!r}, not 0")
        if not np.any(c != 0):
            raise InvalidSpec("all coefficients are zero")
        zero = d.probs == 0
        if np.any(c[zero] < 0) or np.any(c[zero] > 1):
            raise InvalidSpec("coefficients on zero coordinates must lie in [0, 1]")
        if np.any(np.abs(c[~zero]) > 1):
            raise InvalidSpec("coefficients on the support must lie in [-1, 1]")


_RATES = {
    "eps_log_eps": lambda e, a: e * math.log(e),
    "eps": lambda e, a: e,
    "eps2": lambda e, a: e * e,
    "eps_alpha": lambda e, a: e**a,
}


@dataclass(frozen=True)
class AsymptoticLaw:
    """H(p) - H(p(eps)) ~ constant * rate(eps) as eps -> 0."""

    case_id: str
    rate: str
    constant: float
    alpha: float
    notes: tuple[str, ...] = ()

    @property
    def exponent(self) -> float:
        return {"eps_log_eps": 1.0, "eps": 1.0, "eps2": 2.0, "eps_alpha": self.alpha}[self.rate]

    def rho(self, eps: float) -> float:
        return _RATES[self.rate](eps, self.alpha)


@dataclass(frozen=True)
class RateFitReport:
    law: AsymptoticLaw
    eps_grid: np.ndarray
    deltas: np.ndarray
    ratios: np.ndarray
    fitted_exponent: float
    predicted_constant: float
    terminal_ratio: float

    def as_dict(self) -> dict:
        return {
            "case_id": self.law.case_id,
            "rate": self.law.rate,
            "alpha": self.law.alpha,
            "predicted_exponent": self.law.exponent,
            "fitted_exponent": self.fitted_exponent,
            "predicted_constant": self.predicted_constant,
            "terminal_ratio": self.terminal_ratio,
            "eps": self.eps_grid.tolist(),
            "delta": self.deltas.tolist(),
            "ratio": self.ratios.tolist(),
            "notes": list(self.law.notes),
        }


def _check_eps(d: Distribution, eps: float) -> None:
    if not eps > 0:
        raise EpsilonTooLarge(f"eps must be positive, got {eps!r}")
    cap = float(d.support_probs.min())
    if eps > cap:
        raise EpsilonTooLarge(f"eps = {eps!r} exceeds the smallest nonzero probability {cap!r}")


def perturb(d: Distribution, spec: PerturbationSpec, eps: float, policy: TolerancePolicy = DEFAULT_POLICY) -> Distribution:
    spec.validate(d, policy)
    _check_eps(d, eps)
    moved = d.probs + spec.c * eps
    # p_k + c_k eps can round a hair below zero when eps equals p_k
    return make_distribution(np.maximum(moved, 0.0), policy)


_SERIES_R = 0.25
_SERIES_TERMS = 40


def _pow_remainder(r: np.ndarray, alpha: float) -> np.ndarray:
    """(1 + r)**alpha - 1 - alpha*r, free of cancellation for small r."""
    with np.errstate(divide="ignore"):
        out = np.expm1(alpha * np.log1p(r)) - alpha * r
    small = np.abs(r) <= _SERIES_R
    if np.any(small):
        x = r[small]
        coef = alpha * (alpha - 1.0) / 2.0
        term = coef * x * x
        acc = term.copy()
        for k in range(3, _SERIES_TERMS):
            term = term * x * (alpha - k + 1) / k
            acc += term
        out[small] = acc
    return out


def _xlog_remainder(r: np.ndarray) -> np.ndarray:
    """(1 + r) log(1 + r) - r, free of cancellation for small r."""
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r > -1.0, (1.0 + r) * np.log1p(r), 0.0) - r
    small = np.abs(r) <= _SERIES_R
    if np.any(small):
        # sum_{k>=2} (-1)**k r**k / (k (k-1))
        x = r[small]
        acc = np.zeros_like(x)
        power = x * x
        for k in range(2, _SERIES_TERMS):
            acc += (-1) ** k * power / (k * (k - 1))
            power = power * x
        out[small] = acc
    return out


def entropy_drop(d: Distribution, spec: PerturbationSpec, a, eps: float, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """H(p) - H(p + c*eps) without forming the two entropies separately.

    The first-order part (eps * sum c log p, or alpha * eps * sum c p**(alpha-1))
    is split off and summed exactly-rounded; the remainder of each coordinate
    is evaluated by a series for small c eps / p. The result keeps its
    relative accuracy when the first-order part cancels and the drop is of
    order eps**2, up to the rounding already present in c * p**(alpha-1).
    """
    spec.validate(d, policy)
    _check_eps(d, eps)
    a = as_alpha(a, policy)
    sup = d.support
    p = d.probs[sup]
    c_sup = spec.c[sup]
    c_zero = spec.c[d.probs == 0]
    c_zero = c_zero[c_zero > 0]
    rel = c_sup * eps / p
    lp = np.log(p)
    if a.is_one:
        # sum (p + c eps) log(p + c eps) - p log p over the support
        first = eps * math.fsum(np.concatenate([c_sup * lp, c_sup]))
        second = p * _xlog_remainder(rel)
        born = c_zero * eps * np.log(c_zero * eps)
        return math.fsum(np.concatenate([[first], second, born]))
    al = a.value
    shift = float((al * lp).max())
    base = np.exp(al * lp - shift)
    first = al * eps * math.fsum(c_sup * np.exp((al - 1.0) * lp - shift))
    second = base * _pow_remainder(rel, al)
    born = np.exp(al * np.log(c_zero * eps) - shift)
    growth = math.fsum(np.concatenate([[first], second, born])) / math.fsum(base)
    return math.log1p(growth) / (al - 1.0)


def _vanishes(value: float, name: str, policy: TolerancePolicy, notes: list[str]) -> bool:
    if abs(value) <= policy.eq_tol:
        return True
    if abs(value) <= 100 * policy.eq_tol:
        msg = f"{name} = {value:.3g} is within 100*eq_tol of zero"
        notes.append(msg)
        warnings.warn(msg, NearBoundaryWarning, stacklevel=3)
    return False


def classify(d: Distribution, spec: PerturbationSpec, a, policy: TolerancePolicy = DEFAULT_POLICY) -> AsymptoticLaw:
    """Select the asymptotic regime of the entropy drop and its constant.

    Regime-selecting quantities, with N1 the number of zero coordinates:
    zero part (any c_k != 0 where p_k = 0), L = sum c_k log p_k and
    M = sum c_k p_k**(alpha-1) over the support, S = sum p_k**alpha.
    """
    spec.validate(d, policy)
    a = as_alpha(a, policy)
    al = a.value
    notes: list[str] = []
    sup = d.support
    p = d.probs[sup]
    c = spec.c[sup]
    c_zero = spec.c[d.probs == 0]
    zero_active = bool(np.any(c_zero != 0))

    def law(case, rate, const):
        return AsymptoticLaw(case, rate, float(const), al, tuple(notes))

    if a.is_one:
        if zero_active:
            return law("A1.i", "eps_log_eps", math.fsum(c_zero))
        big_l = math.fsum(c * np.log(p))
        if not _vanishes(big_l, "L", policy, notes):
            return law("A1.ii", "eps", big_l)
        return law("A1.iii", "eps2", 0.5 * math.fsum(c * c / p))

    s = math.fsum(p**al)
    m = math.fsum(c * p ** (al - 1.0))
    quad = math.fsum(c * c * p ** (al - 2.0))
    zero_pow = math.fsum(c_zero[c_zero > 0] ** al)
    m_zero = _vanishes(m, "M", policy, notes)
    if al < 1.0:
        if zero_active:
            return law("L1.i", "eps_alpha", zero_pow / ((al - 1.0) * s))
        if not m_zero:
            return law("L1.ii", "eps", al / (al - 1.0) * m / s)
        return law("L1.iii", "eps2", al / 2.0 * quad / s)
    if not m_zero:
        return law("G1.i", "eps", al / (al - 1.0) * m / s)
    if abs(al - 2.0) <= policy.eq_tol:
        return law("G1.iv", "eps2", math.fsum(spec.c**2) / s)
    if al < 2.0:
        if zero_active:
            return law("G1.ii", "eps_alpha", zero_pow / ((al - 1.0) * s))
        return law("G1.iii", "eps2", al / 2.0 * quad / s)
    return law("G1.v", "eps2", al / 2.0 * quad / s)


def empirical_rate(
    d: Distribution,
    spec: PerturbationSpec,
    a,
    eps_start: float = 1e-3,
    eps_factor: float = 0.1,
    steps: int = 4,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> RateFitReport:
    """Evaluate the drop on a geometric eps grid and compare with :func:`classify`.

    The exponent is the least-squares slope of log|drop| against log eps
    (against log|eps log eps| for the eps*log(eps) regime).
    """
    if not 0 < eps_factor < 1:
        raise InvalidSpec("eps_factor must lie in (0, 1)")
    if steps < 3:
        raise InvalidSpec("need at least 3 steps")
    a = as_alpha(a, policy)
    law = classify(d, spec, a, policy)
    grid = eps_start * eps_factor ** np.arange(steps)
    deltas = np.array([entropy_drop(d, spec, a, e, policy) for e in grid])
    rhos = np.array([law.rho(e) for e in grid])
    ratios = deltas / rhos
    if law.rate == "eps_log_eps":
        x = np.log(np.abs(grid * np.log(grid)))
    else:
        x = np.log(grid)
    with np.errstate(divide="ignore"):
        y = np.log(np.abs(deltas))
    slope = float(np.polyfit(x, y, 1)[0]) if np.all(np.isfinite(y)) else math.nan
    return RateFitReport(law, grid, deltas, ratios, slope, law.constant, float(ratios[-1]))


def uniform_stability_scan(
    c_family: Callable[[int], Sequence[float]],
    eps_rule: Callable[[int], float],
    a,
    n_values: Sequence[int],
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> list[tuple[int, float]]:
    """Entropy drop from uniform(N) under p_k = 1/N + c_kN * eps(N), for each N."""
    a = as_alpha(a, policy)
    out = []
    for n in n_values:
        n = int(n)
        c = np.asarray(c_family(n), dtype=float)
        if not np.any(c > 0):
            raise InvalidSpec(f"c-vector for N={n} has no strictly positive entry")
        eps = float(eps_rule(n))
        if eps < 0 or eps > 1.0 / n:
            raise InvalidSpec(f"eps({n}) = {eps!r} is outside [0, 1/N]")
        d = uniform(n)
        spec = PerturbationSpec(c)
        if eps == 0:
            spec.validate(d, policy)
            out.append((n, 0.0))
            continue
        out.append((n, entropy_drop(d, spec, a, eps, policy)))
    return out
