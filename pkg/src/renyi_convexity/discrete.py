"""Rényi entropy of binomial and Poisson laws, and the binomial -> Poisson limit."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .distribution import DEFAULT_POLICY, TolerancePolicy
from .entropy import as_alpha
from .errors import TruncationFailure, ValidationError

__all__ = [
    "BinomialSpec",
    "PoissonSpec",
    "TruncationPolicy",
    "ConvergenceRow",
    "binomial_log_pmf",
    "poisson_log_pmf",
    "binomial_renyi",
    "poisson_renyi",
    "convergence_table",
]

_BLOCK = 512


@dataclass(frozen=True)
class BinomialSpec:
    n: int
    p: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValidationError("n must be a nonnegative integer")
        if not 0.0 <= self.p <= 1.0:
            raise ValidationError("p must lie in [0, 1]")


@dataclass(frozen=True)
class PoissonSpec:
    lam: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValidationError("lambda must be a finite positive number")


@dataclass(frozen=True)
class TruncationPolicy:
    rel_tol: float = 1e-14
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not self.rel_tol > 0 or self.max_terms < 1:
            raise ValidationError("need rel_tol > 0 and max_terms >= 1")


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    h_binomial: float
    h_poisson: float
    difference: float
    tail_bound: float


def binomial_log_pmf(spec: BinomialSpec) -> np.ndarray:
    """log C(n,k) + k log p + (n-k) log(1-p), k = 0..n, via log-gamma."""
    n, p = int(spec.n), float(spec.p)
    k = np.arange(n + 1, dtype=float)
    log_binom = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)
    return log_binom + k * math.log(p) + (n - k) * math.log1p(-p)


def poisson_log_pmf(lam: float, k: np.ndarray) -> np.ndarray:
    return -lam + k * math.log(lam) - gammaln(k + 1.0)


def _renyi_from_logs(logs: np.ndarray, alpha: float, is_one: bool) -> float:
    if is_one:
        return -math.fsum(np.exp(logs) * logs)
    w = alpha * logs
    shift = float(w.max())
    return (shift + math.log(math.fsum(np.exp(w - shift)))) / (1.0 - alpha)


def binomial_renyi(spec: BinomialSpec, a, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    a = as_alpha(a, policy)
    if spec.p in (0.0, 1.0) or spec.n == 0:
        return 0.0
    return _renyi_from_logs(binomial_log_pmf(spec), a.value, a.is_one)


def poisson_renyi(
    spec: PoissonSpec,
    a,
    trunc: TruncationPolicy = TruncationPolicy(),
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> tuple[float, float]:
    """Truncated Rényi entropy of Poi(lambda) and a rigorous bound on the truncation error.

    Past k + 1 > lambda the terms pi_k**alpha fall geometrically with ratio
    rho_K = (lambda/(K+1))**alpha, so everything beyond K is at most
    term_K * rho_K/(1 - rho_K). For alpha = 1 the same argument is applied to
    -x log x <= (2/e) sqrt(x).

    Returns
    -------
    value, tail_bound
        The entropy and an upper bound on |exact - value|.

    Raises
    ------
    TruncationFailure
        If ``trunc.max_terms`` terms are not enough to meet ``trunc.rel_tol``.
    """
    a = as_alpha(a, policy)
    lam = float(spec.lam)
    alpha = a.value
    # bound exponent: alpha itself, or 1/2 for the entropy terms
    s = 0.5 if a.is_one else alpha
    mode = math.floor(lam)
    shift = 0.0 if a.is_one else alpha * float(poisson_log_pmf(lam, np.array([float(mode)]))[0])
    parts: list[float] = []
    running = 0.0
    start = 0
    while start < trunc.max_terms:
        stop = min(start + _BLOCK, trunc.max_terms)
        k = np.arange(start, stop, dtype=float)
        logs = poisson_log_pmf(lam, k)
        if a.is_one:
            terms = -np.exp(logs) * logs
        else:
            terms = np.exp(alpha * logs - shift)
        partial = running + np.cumsum(terms)
        ratio = np.where(k + 1 > lam, (lam / (k + 1)) ** s, np.inf)
        with np.errstate(over="ignore", invalid="ignore"):
            if a.is_one:
                bound_terms = (2 / math.e) * np.exp(0.5 * logs) * ratio / (1 - ratio)
            else:
                bound_terms = terms * ratio / (1 - ratio)
        ok = np.flatnonzero((ratio < 1) & (bound_terms <= trunc.rel_tol * partial))
        if ok.size:
            j = int(ok[0])
            total = math.fsum(parts + list(terms[: j + 1]))
            tail = float(bound_terms[j])
            if a.is_one:
                return total, tail
            value = (shift + math.log(total)) / (1.0 - alpha)
            # |log(1 + tail/total)| / |1 - alpha|
            return value, math.log1p(tail / total) / abs(1.0 - alpha)
        parts.extend(terms.tolist())
        running = float(partial[-1])
        start = stop
    raise TruncationFailure(f"tail bound not reached within {trunc.max_terms} terms")


def convergence_table(
    lam: float,
    a,
    n_values: Sequence[int],
    trunc: TruncationPolicy = TruncationPolicy(),
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> list[ConvergenceRow]:
    """H_alpha(B(n, lambda/n)) against H_alpha(Poi(lambda)) for each n."""
    a = as_alpha(a, policy)
    h_poi, tail = poisson_renyi(PoissonSpec(lam), a, trunc, policy)
    rows = []
    for n in n_values:
        n = int(n)
        if n < lam:
            raise ValidationError(f"n = {n} is below lambda = {lam}, so lambda/n > 1")
        h_bin = binomial_renyi(BinomialSpec(n, lam / n), a, policy)
        rows.append(ConvergenceRow(n, h_bin, h_poi, h_bin - h_poi, tail))
    return rows
