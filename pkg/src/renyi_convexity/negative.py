"""Two-level distributions whose second derivative at alpha = 0 is negative.

A vector with k entries equal to p0 and N - k entries equal to q0 is a
critical point of H''(0) when

    p0 - q0 = (log p0 - log q0) / N,    k p0 + (N - k) q0 = 1.

With x = N p0 < 1 < y = N q0 the first equation reads x - log x = y - log y,
which defines y(x); the second fixes the ratio k/N = (y - 1)/(y - x) =: r(x).
For such vectors H''(0) = log(xy) - xy + 1 < 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .curvature import second_derivative_at_zero
from .distribution import DEFAULT_POLICY, Distribution, TolerancePolicy, make_distribution
from .errors import BracketNotFound, CertificateViolation, InvalidRange, RatioOutOfRange

__all__ = [
    "ImplicitPoint",
    "TwoLevelDistribution",
    "y_of_x",
    "r_of_x",
    "solve_for_ratio",
    "build_two_level",
    "curvature_certificate",
]

SCAN_POINTS = 4096
SCAN_LOW = 1e-6
SUM_TOL = 1e-12
CRITICAL_TOL = 1e-10


@dataclass(frozen=True)
class ImplicitPoint:
    x: float
    y: float
    r: float

    @property
    def residual(self) -> float:
        return abs((self.x - self.y) - (math.log(self.x) - math.log(self.y)))


@dataclass(frozen=True)
class TwoLevelDistribution:
    n: int
    k: int
    p0: float
    q0: float

    @property
    def sum_residual(self) -> float:
        return abs(math.fsum([self.k * self.p0, (self.n - self.k) * self.q0]) - 1.0)

    @property
    def critical_residual(self) -> float:
        return abs((self.p0 - self.q0) - (math.log(self.p0) - math.log(self.q0)) / self.n)

    @cached_property
    def distribution(self) -> Distribution:
        return make_distribution([self.p0] * self.k + [self.q0] * (self.n - self.k))


def _excess(u):
    """u - 1 - log u, accurate near u = 1 and for tiny u."""
    u = np.asarray(u, dtype=float)
    # u - 1 is exact only on [1/2, 2]; elsewhere it would discard low bits of u
    near = (u >= 0.5) & (u <= 2.0)
    with np.errstate(divide="ignore"):
        far = (u - 1.0) - np.log(np.where(near, 1.0, u))
    return np.where(near, (u - 1.0) - np.log1p(np.where(near, u - 1.0, 0.0)), far)


def _y_of_x(x: np.ndarray) -> np.ndarray:
    target = _excess(x)
    lo = np.ones_like(x)
    hi = np.full_like(x, 2.0)
    while np.any(short := _excess(hi) < target):
        hi = np.where(short, 2.0 * hi, hi)
    # bisect to full double precision
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        above = _excess(mid) >= target
        new_lo = np.where(above, lo, mid)
        new_hi = np.where(above, mid, hi)
        if np.array_equal(new_lo, lo) and np.array_equal(new_hi, hi):
            break
        lo, hi = new_lo, new_hi
    return 0.5 * (lo + hi)


def _check_x(x: float) -> None:
    if not 0.0 < x < 1.0:
        raise InvalidRange(f"x must lie in (0, 1), got {x!r}")


def y_of_x(x: float, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """The unique y > 1 with y - log y = x - log x."""
    _check_x(x)
    return float(_y_of_x(np.array([float(x)]))[0])


def r_of_x(x: float) -> float:
    """(y(x) - 1)/(y(x) - x), which runs from 1/2 (x -> 1) to 1 (x -> 0)."""
    _check_x(x)
    y = y_of_x(x)
    return (y - 1.0) / (y - x)


def _sum_gap(x, k, n):
    # k x + (n - k) y(x) - n has the sign of r(x) - k/n
    return k * x + (n - k) * _y_of_x(x) - n


def solve_for_ratio(
    k: int,
    n: int,
    policy: TolerancePolicy = DEFAULT_POLICY,
    scan_low: float = SCAN_LOW,
    scan_points: int = SCAN_POINTS,
) -> ImplicitPoint:
    """Find x with r(x) = k/n.

    r is not assumed monotone: a log-spaced scan of [scan_low, 1 - 1e-6]
    locates the first sign change, which is then bisected to full precision.
    Other solutions, if any, are ignored.

    Since r(x) is roughly 1 - 1/log(1/x) for small x, ratios above about 0.94
    need ``scan_low`` well below the default. Past about 0.97 the high level
    q0 = 1 - k*p0 rounds to 1 in double precision and :func:`build_two_level`
    reports a CertificateViolation.
    """
    k, n = int(k), int(n)
    if not (n > 0 and 2 * k > n and k < n):
        raise RatioOutOfRange(f"k/n = {k}/{n} is outside (1/2, 1)")
    if not 0 < scan_low < 1.0 - SCAN_LOW or scan_points < 2:
        raise InvalidRange("need 0 < scan_low < 1 - 1e-6 and scan_points >= 2")
    grid = np.geomspace(scan_low, 1.0 - SCAN_LOW, int(scan_points))
    gaps = _sum_gap(grid, k, n)
    change = np.flatnonzero(np.sign(gaps[:-1]) != np.sign(gaps[1:]))
    if change.size == 0:
        raise BracketNotFound(f"no x in [{scan_low}, 1 - {SCAN_LOW}] gives r(x) = {k}/{n}")
    i = int(change[0])
    lo, hi = float(grid[i]), float(grid[i + 1])
    g_lo = float(gaps[i])
    if g_lo == 0.0:
        hi = lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        g_mid = float(_sum_gap(np.array([mid]), k, n)[0])
        if g_mid == 0.0:
            lo = hi = mid
            break
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    y = y_of_x(x)
    return ImplicitPoint(x, y, (y - 1.0) / (y - x))


def build_two_level(
    k: int,
    n: int,
    policy: TolerancePolicy = DEFAULT_POLICY,
    scan_low: float = SCAN_LOW,
    scan_points: int = SCAN_POINTS,
) -> TwoLevelDistribution:
    """Two-level vector (k copies of p0 = x/n, n - k copies of q0 = y/n), verified.

    Raises
    ------
    RatioOutOfRange, BracketNotFound
        From :func:`solve_for_ratio`.
    CertificateViolation
        If the constructed vector misses either defining equation.
    """
    pt = solve_for_ratio(k, n, policy, scan_low, scan_points)
    t = TwoLevelDistribution(int(n), int(k), pt.x / n, pt.y / n)
    if t.sum_residual > SUM_TOL:
        raise CertificateViolation(f"k p0 + (n-k) q0 misses 1 by {t.sum_residual:.3g}")
    if t.critical_residual > CRITICAL_TOL:
        raise CertificateViolation(f"critical-point equation residual {t.critical_residual:.3g}")
    if not 0.0 < t.p0 < 1.0 / n < t.q0 < 1.0:
        raise CertificateViolation("levels are not ordered 0 < p0 < 1/n < q0 < 1")
    return t


def curvature_certificate(t: TwoLevelDistribution) -> float:
    """log(N^2 p0 q0) - N^2 p0 q0 + 1, the value of H''(0) for ``t``."""
    z = t.n * t.p0 * t.n * t.q0
    if 0.5 <= z <= 2.0:
        return math.log1p(z - 1.0) - (z - 1.0)
    return math.log(t.n * t.p0) + math.log(t.n * t.q0) - z + 1.0


def certificate_matches(t: TwoLevelDistribution, tol: float = 1e-9) -> bool:
    """Whether the closed form agrees with H''(0) of the expanded vector."""
    return abs(curvature_certificate(t) - second_derivative_at_zero(t.distribution)) <= tol
