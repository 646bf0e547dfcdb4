# Rényi entropy as a function of its order
#
# H_alpha(p) = log(sum p**alpha) / (1 - alpha) falls from log(support size)
# at alpha -> 0 to -log(max p) at alpha -> infinity, passing Shannon entropy
# at alpha = 1. This script walks along that curve for a small example.

import math

import numpy as np

from renyi_convexity import make_distribution, renyi_entropy, shannon_entropy, uniform
from renyi_convexity.entropy import entropy_limit_infinity, entropy_limit_zero, renyi_divergence

p = make_distribution([0.4, 0.4, 0.2])

# The two ends and the middle.
print("H_0       =", entropy_limit_zero(p), "(log 3 =", math.log(3), ")")
print("H_1       =", shannon_entropy(p))
print("H_2       =", renyi_entropy(p, 2), "(-log 0.36 =", -math.log(0.36), ")")
print("H_inf     =", entropy_limit_infinity(p))

# A log-spaced sweep; the values never increase.
for a in np.geomspace(0.01, 100, 9):
    print(f"alpha = {a:8.3f}   H = {renyi_entropy(p, a):.12f}")

# The uniform distribution is the only one that attains log n, at every order.
for a in (0.3, 1.0, 4.0):
    print("uniform(5), alpha =", a, "->", renyi_entropy(uniform(5), a), "vs log 5 =", math.log(5))

# Near alpha = 1 the power sum is evaluated as log1p(sum p (p**t - 1)), so the
# curve joins Shannon entropy smoothly.
for h in (1e-3, 1e-6, 1e-9):
    print(f"H(1 + {h:g}) - H_1 = {renyi_entropy(p, 1 + h) - shannon_entropy(p):+.3e}")

# Divergence from uniform: D_alpha(p || u) = log n - H_alpha(p).
u = uniform(3)
print("D_2(p || u) =", renyi_divergence(p, u, 2), " log 3 - H_2 =", math.log(3) - renyi_entropy(p, 2))
