"""Rényi and Shannon entropy, their limits, divergence and gradient.

All logarithms are natural (results in nats). Sums run over the support
only, so ``0**alpha`` and ``0*log 0`` contribute nothing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import DEFAULT_POLICY, Distribution, TolerancePolicy
from .errors import SupportMismatch, ValidationError, ZeroProbability

__all__ = [
    "Alpha",
    "as_alpha",
    "PowerSums",
    "power_sums",
    "log_power_sum",
    "renyi_entropy",
    "shannon_entropy",
    "entropy_limit_zero",
    "entropy_limit_infinity",
    "renyi_divergence",
    "entropy_gradient",
]

# |alpha - 1| below this uses the expm1/log1p route for log S0
_NEAR_ONE = 0.5


@dataclass(frozen=True)
class Alpha:
    value: float
    is_one: bool

    def __float__(self):
        return self.value


def as_alpha(a, policy: TolerancePolicy = DEFAULT_POLICY) -> Alpha:
    """Coerce a float (or an existing :class:`Alpha`) into a validated order."""
    if isinstance(a, Alpha):
        return a
    value = float(a)
    if not value > 0 or not math.isfinite(value):
        raise ValidationError(f"alpha must be a finite positive number, got {a!r}")
    return Alpha(value, abs(value - 1.0) <= policy.eq_tol)


@dataclass(frozen=True)
class PowerSums:
    """S_i(alpha) = sum p_k**alpha * log(p_k)**i for i = 0..3.

    Stored as ``exp(log_scale) * scaled[i]`` so that large alpha or tiny
    probabilities do not underflow; :attr:`s` gives the plain values.
    """

    alpha: Alpha
    log_scale: float
    scaled: tuple[float, float, float, float]

    @property
    def s(self) -> tuple[float, float, float, float]:
        factor = math.exp(self.log_scale)
        return tuple(factor * v for v in self.scaled)

    @property
    def log_s0(self) -> float:
        return self.log_scale + math.log(self.scaled[0])


def power_sums(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> PowerSums:
    a = as_alpha(a, policy)
    lp = np.log(d.support_probs)
    w = a.value * lp
    shift = float(w.max())
    terms = np.exp(w - shift)
    scaled = tuple(math.fsum(terms * lp**i) for i in range(4))
    return PowerSums(a, shift, scaled)


def log_power_sum(d: Distribution, alpha: float) -> float:
    """log S0(alpha), accurate also when alpha is close to 1 (where S0 ~ 1)."""
    p = d.support_probs
    lp = np.log(p)
    t = alpha - 1.0
    if abs(t) <= _NEAR_ONE:
        # S0 - 1 = sum p (p**t - 1), free of cancellation
        return math.log1p(math.fsum(p * np.expm1(t * lp)))
    w = alpha * lp
    shift = float(w.max())
    return shift + math.log(math.fsum(np.exp(w - shift)))


def shannon_entropy(d: Distribution) -> float:
    p = d.support_probs
    return -math.fsum(p * np.log(p))


def renyi_entropy(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """H_alpha(d) = log(sum p**alpha) / (1 - alpha); Shannon entropy at alpha = 1."""
    a = as_alpha(a, policy)
    if a.is_one:
        return shannon_entropy(d)
    return log_power_sum(d, a.value) / (1.0 - a.value)


def entropy_limit_zero(d: Distribution) -> float:
    """H_0 = log of the support size."""
    return math.log(d.support.size)


def entropy_limit_infinity(d: Distribution) -> float:
    """H_inf = -log(max p)."""
    return -math.log(float(d.probs.max()))


def renyi_divergence(p: Distribution, q: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """D_alpha(p || q); the alpha = 1 order returns the Kullback-Leibler divergence.

    The KL branch is a continuity extension, not part of the usual
    definition for alpha != 1.
    """
    a = as_alpha(a, policy)
    if p.n != q.n:
        raise ValidationError(f"length mismatch: {p.n} vs {q.n}")
    idx = p.support
    qs = q.probs[idx]
    if np.any(qs == 0):
        raise SupportMismatch("p has mass where q has none")
    ps = p.probs[idx]
    log_ratio = np.log(ps) - np.log(qs)
    if a.is_one:
        return max(0.0, math.fsum(ps * log_ratio))
    z = (a.value - 1.0) * log_ratio
    if z.max() < 30:
        excess = math.fsum(ps * np.expm1(z))
        if excess > -0.5:
            return max(0.0, math.log1p(excess) / (a.value - 1.0))
    w = np.log(ps) + z
    shift = float(w.max())
    value = (shift + math.log(math.fsum(np.exp(w - shift)))) / (a.value - 1.0)
    return max(0.0, value)


def entropy_gradient(d: Distribution, a, policy: TolerancePolicy = DEFAULT_POLICY) -> np.ndarray:
    """Partial derivatives of H_alpha with respect to each p_i (full support only)."""
    if not d.full_support:
        raise ZeroProbability("gradient needs every p_i > 0")
    a = as_alpha(a, policy)
    lp = np.log(d.probs)
    if a.is_one:
        return -lp - 1.0
    f = log_power_sum(d, a.value)
    return (a.value / (1.0 - a.value)) * np.exp((a.value - 1.0) * lp - f)
