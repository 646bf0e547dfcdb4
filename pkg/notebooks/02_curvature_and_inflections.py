# Where H_alpha bends: second derivatives and inflection points
#
# With f(alpha) = log sum p**alpha (the cumulant generating function of
# log p_K, K ~ p) the derivatives of H are closed forms in the escort
# weights. This script reproduces the five curvature pictures: one convex
# curve and four with inflections in different places.

import numpy as np

from renyi_convexity import (
    cumulants_at_one,
    find_inflections,
    first_derivative,
    make_distribution,
    read_distribution,
    second_derivative,
    second_derivative_slope_form,
)

examples = {
    "convex everywhere": "0.4,0.4,0.2",
    "inflection just below 1": "198x1/400,2x101/400",
    "inflection near 0.11": "10x0.01,2x0.15,2x0.3",
    "inflection near 3": "10x0.08,0.2",
    "two inflections": "100x0.0001,100x0.0079,0.2",
}

for label, text in examples.items():
    d = read_distribution(text)
    roots = find_inflections(d, 0.01, 10)
    print(f"{label:26s} n={d.n:3d}  roots: {[round(r, 5) for r in roots]}")

# The convex example: H'' stays positive on the whole grid.
p = make_distribution([0.4, 0.4, 0.2])
h2 = np.array([second_derivative(p, a) for a in np.geomspace(0.01, 10, 500)])
print("min H'' on (0.01, 10):", h2.min())

# At alpha = 1 the second derivative is -k3/3, a third of the (negated) third
# cumulant of log p. Nearby it moves with slope -k4/4.
c = cumulants_at_one(p)
print("H''(1) =", second_derivative(p, 1.0), " -k3/3 =", -c.third_cumulant / 3)
for h in (1e-4, -1e-4):
    print(f"H''(1 {h:+g}) =", second_derivative(p, 1 + h))

# Two independent algebraic routes to H'' agree to roundoff.
for a in (0.25, 0.9, 2.0, 5.0):
    e, s = second_derivative(p, a), second_derivative_slope_form(p, a)
    print(f"alpha={a}: escort form {e:.15f}  slope form {s:.15f}")

# H' is minus a KL divergence scaled by (1 - alpha)^2, hence never positive.
print("H'(alpha) on a grid:", [f"{first_derivative(p, a):.4f}" for a in (0.1, 0.5, 1.0, 2.0, 8.0)])
