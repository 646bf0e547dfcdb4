"""Independent reference evaluators used to check the analytic formulas.

Nothing here shares code paths with the closed-form derivative machinery:
derivatives come from finite differences, and entropies from decimal
arithmetic at ~50 significant digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Callable, Iterable, Sequence

from .errors import DomainViolation, ValidationError

__all__ = [
    "DiffScheme",
    "finite_difference",
    "compensated_sum",
    "highprec_entropy",
    "highprec_perturbed_drop",
]

HIGHPREC_DIGITS = 50


@dataclass(frozen=True)
class DiffScheme:
    order: int = 1
    step: float = 1e-4
    richardson: bool = True

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValidationError("order must be 1 or 2")
        if not self.step > 0:
            raise ValidationError("step must be positive")


def _central(fn, x, h, order):
    if order == 1:
        return (fn(x + h) - fn(x - h)) / (2 * h)
    return (fn(x + h) - 2 * fn(x) + fn(x - h)) / (h * h)


def finite_difference(
    fn: Callable[[float], float],
    x: float,
    scheme: DiffScheme = DiffScheme(),
    lower_bound: float | None = None,
) -> float:
    """Central difference of ``fn`` at ``x``, optionally with one Richardson level.

    ``lower_bound`` guards a domain edge: if ``x - 2*step`` would reach it a
    :class:`DomainViolation` is raised (use ``0.0`` when differentiating in
    alpha).

    If ``x`` is a :class:`~decimal.Decimal` the stencil is formed and combined
    in decimal arithmetic (``fn`` must then accept and return Decimals), which
    removes the roundoff that limits float differences at small steps.
    """
    h = scheme.step
    if lower_bound is not None and float(x) - 2 * h <= lower_bound:
        raise DomainViolation(f"x - 2h = {float(x) - 2 * h!r} leaves the domain (> {lower_bound!r})")
    if isinstance(x, Decimal):
        with localcontext() as ctx:
            ctx.prec = HIGHPREC_DIGITS
            h = Decimal(h)
            return _richardson(fn, x, h, scheme)
    return _richardson(fn, x, h, scheme)


def _richardson(fn, x, h, scheme):
    cache = {}

    def memo(arg):
        if arg not in cache:
            cache[arg] = fn(arg)
        return cache[arg]

    coarse = _central(memo, x, h, scheme.order)
    if not scheme.richardson:
        return coarse
    fine = _central(memo, x, h / 2, scheme.order)
    return (4 * fine - coarse) / 3


def compensated_sum(terms: Iterable[float]) -> float:
    """Correctly rounded sum of ``terms`` (exact accumulation, one final rounding)."""
    return math.fsum(terms)


def _dec_entropy(probs: Sequence[Decimal], alpha: Decimal) -> Decimal:
    positive = [p for p in probs if p > 0]
    if alpha == 1:
        return -sum((p * p.ln() for p in positive), Decimal(0))
    s0 = sum(((alpha * p.ln()).exp() for p in positive), Decimal(0))
    return s0.ln() / (1 - alpha)


def highprec_entropy(probs, alpha, exact: bool = False):
    """Rényi entropy of ``probs`` (a Distribution or sequence) at ``alpha``.

    ``alpha`` may be a Decimal, in which case it is used without rounding.
    Each float input is converted exactly to a Decimal and all arithmetic
    runs with 50 significant digits. The entries are divided by their exact
    decimal sum first, so a float vector whose sum is 1 only up to rounding is
    treated as the distribution it stands for. Returns a float, or the Decimal
    itself when ``exact`` is true.
    """
    values = getattr(probs, "probs", probs)
    alpha = getattr(alpha, "value", alpha)
    with localcontext() as ctx:
        ctx.prec = HIGHPREC_DIGITS
        dec = [Decimal(float(p)) for p in values]
        total = sum(dec, Decimal(0))
        dec = [p / total for p in dec]
        out = _dec_entropy(dec, alpha if isinstance(alpha, Decimal) else Decimal(float(alpha)))
    return out if exact else float(out)


def highprec_perturbed_drop(probs, coeffs, eps: float, alpha) -> float:
    """H(p) - H(p + c*eps) with the perturbed vector formed in decimal arithmetic."""
    values = getattr(probs, "probs", probs)
    alpha = float(getattr(alpha, "value", alpha))
    with localcontext() as ctx:
        ctx.prec = HIGHPREC_DIGITS
        e = Decimal(float(eps))
        base = [Decimal(float(p)) for p in values]
        moved = [p + Decimal(float(c)) * e for p, c in zip(base, coeffs)]
        if any(m < 0 for m in moved):
            raise DomainViolation("perturbed vector has a negative entry")
        a = Decimal(alpha)
        return float(_dec_entropy(base, a) - _dec_entropy(moved, a))
