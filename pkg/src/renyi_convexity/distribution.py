"""Validated finite probability vectors.

Zero entries stay in the vector so that perturbation coefficients can be
aligned positionally; the support is a derived view.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyInput, NegativeEntry, SumOutOfTolerance, ValidationError

__all__ = [
    "TolerancePolicy",
    "DEFAULT_POLICY",
    "Distribution",
    "make_distribution",
    "uniform",
    "support_size",
    "parse_values",
    "read_distribution",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Independent tolerance knobs.

    Parameters
    ----------
    sum_tol : float
        Allowed deviation of the raw input sum from 1.
    eq_tol : float
        Threshold below which a real is treated as zero (alpha == 1 checks,
        vanishing sums in the rate classifier).
    root_tol : float
        Bisection stopping width.
    """

    sum_tol: float = 1e-9
    eq_tol: float = 1e-12
    root_tol: float = 1e-8

    def __post_init__(self):
        for name in ("sum_tol", "eq_tol", "root_tol"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be strictly positive")


DEFAULT_POLICY = TolerancePolicy()


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector with its support partition.

    Build instances with :func:`make_distribution` or :func:`uniform`; the
    constructor itself trusts its input.
    """

    probs: np.ndarray
    support: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return int(self.probs.size)

    @property
    def zero_count(self) -> int:
        return self.n - int(self.support.size)

    @property
    def support_probs(self) -> np.ndarray:
        return self.probs[self.support]

    @property
    def full_support(self) -> bool:
        return self.zero_count == 0

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash(self.probs.tobytes())


def _freeze(probs: np.ndarray) -> Distribution:
    probs = np.ascontiguousarray(probs, dtype=float)
    probs.setflags(write=False)
    support = np.flatnonzero(probs > 0.0)
    support.setflags(write=False)
    return Distribution(probs, support)


def make_distribution(values: Iterable[float], policy: TolerancePolicy = DEFAULT_POLICY) -> Distribution:
    """Validate ``values`` and renormalize them to unit sum.

    Raises
    ------
    EmptyInput, NegativeEntry, SumOutOfTolerance
    """
    if isinstance(values, Distribution):
        values = values.probs
    arr = np.array(values, dtype=float).ravel()
    if arr.size == 0:
        raise EmptyInput("distribution needs at least one entry")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("distribution entries must be finite")
    if np.any(arr < 0):
        raise NegativeEntry(f"negative entry at index {int(np.flatnonzero(arr < 0)[0])}")
    total = math.fsum(arr)
    if abs(total - 1.0) > policy.sum_tol:
        raise SumOutOfTolerance(f"entries sum to {total!r}, outside 1 +/- {policy.sum_tol:g}")
    if total != 1.0:
        arr = arr / total
        # push the rounding residue into the largest entry so fsum is exactly 1
        top = int(np.argmax(arr))
        for _ in range(3):
            residue = 1.0 - math.fsum(arr)
            if residue == 0.0:
                break
            arr[top] += residue
    return _freeze(arr)


def uniform(n: int) -> Distribution:
    """Uniform distribution on ``n`` points; every entry is the float ``1/n``."""
    if n < 1:
        raise ValidationError("uniform needs n >= 1")
    # deliberately not residue-corrected: all entries must stay bitwise equal
    return _freeze(np.full(int(n), 1.0 / n))


def support_size(d: Distribution) -> int:
    return int(d.support.size)


def _parse_number(token: str) -> float:
    token = token.strip()
    if "/" in token:
        return float(Fraction(token))
    return float(token)


def parse_values(text: str) -> list[float]:
    """Parse an inline list such as ``"0.4,0.4,0.2"`` or ``"198x1/400,2x101/400"``.

    A ``KxV`` item expands to ``K`` copies of ``V``. Values may be decimals
    or fractions.
    """
    out: list[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "x" in item.lower():
            count, value = item.lower().split("x", 1)
            try:
                k = int(count)
            except ValueError as exc:
                raise ValidationError(f"bad repetition count in {item!r}") from exc
            if k < 0:
                raise ValidationError(f"bad repetition count in {item!r}")
            out.extend([_parse_number(value)] * k)
        else:
            try:
                out.append(_parse_number(item))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValidationError(f"cannot parse {item!r} as a number") from exc
    if not out:
        raise EmptyInput("no values given")
    return out


def _read_column(path: str, headers: tuple[str, ...] = ("p", "c")) -> list[float]:
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and row[0].strip()]
    if not rows:
        raise EmptyInput(f"{path} is empty")
    first = rows[0][0].strip()
    try:
        _parse_number(first)
    except (ValueError, ZeroDivisionError):
        if first.lower() not in headers:
            raise ValidationError(f"{path}: header must be one of {headers}, got {first!r}") from None
        rows = rows[1:]
    try:
        return [_parse_number(row[0]) for row in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def read_distribution(source: str | Sequence[float], policy: TolerancePolicy = DEFAULT_POLICY) -> Distribution:
    """Build a distribution from an inline list, a one-column CSV path, or a sequence."""
    if isinstance(source, str):
        values = _read_column(source) if os.path.isfile(source) else parse_values(source)
    else:
        values = list(source)
    return make_distribution(values, policy)
