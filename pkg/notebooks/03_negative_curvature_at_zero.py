# Distributions whose entropy curve is concave at alpha = 0
#
# H''(0) = 2(log N + mean log p) + var(log p). It vanishes for the uniform
# distribution, can be arbitrarily large, and is negative for a family of
# two-level vectors: k entries p0 and N - k entries q0 with
#     p0 - q0 = (log p0 - log q0)/N,   k p0 + (N - k) q0 = 1.
# Writing x = N p0, y = N q0 turns the first equation into x - log x = y - log y,
# and the certificate H''(0) = log(xy) - xy + 1 < 0 follows.

from renyi_convexity import build_two_level, curvature_certificate, r_of_x, second_derivative_at_zero, y_of_x
from renyi_convexity.curvature import h0_spike_family

# The implicit curve y(x) and the ratio it forces, r(x) = k/N.
for x in (0.999, 0.5, 0.1, 1e-3, 1e-6):
    print(f"x = {x:<8g} y = {y_of_x(x):.10f}  r = {r_of_x(x):.6f}")

# Any rational in the band can be hit; larger N gives finer control.
for k, n in ((2, 3), (3, 4), (665, 1000)):
    t = build_two_level(k, n)
    print(
        f"k={k:3d} N={n:4d}  p0={t.p0:.6e} q0={t.q0:.6e}  "
        f"certificate={curvature_certificate(t):+.6f}  direct={second_derivative_at_zero(t.distribution):+.6f}"
    )

# Past r ~ 0.94 the default scan of x in [1e-6, 1) has no bracket; widen it.
t = build_two_level(24, 25, scan_low=1e-300)
print("24/25 needs p0 =", t.p0, "certificate", curvature_certificate(t))

# Bounded below, unbounded above: put a vanishing spike on one coordinate.
for eps in (1e-1, 1e-2, 1e-4, 1e-8, 1e-16):
    print(f"spike eps={eps:g}: H''(0) = {h0_spike_family(10, eps):.4f}")
