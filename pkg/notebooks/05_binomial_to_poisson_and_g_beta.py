# Two limits: binomial -> Poisson, and -H as a convex function of 1/(alpha-1)
#
# B(n, lambda/n) converges to Poi(lambda), and so do its Rényi entropies.
# The Poisson side is an infinite sum; it is truncated once a geometric tail
# bound drops below 1e-14 of the partial sum.

import math

from scipy.special import i0e

from renyi_convexity import PoissonSpec, convergence_table, g_beta, g_beta_derivative, make_distribution, poisson_renyi, renyi_entropy

for a in (0.5, 1.0, 2.0, 5.0):
    rows = convergence_table(2.0, a, [100, 1000, 10000, 100000])
    print(f"alpha={a}:", "  ".join(f"n={r.n}: {r.difference:+.3e}" for r in rows), f" tail<={rows[0].tail_bound:.1e}")

# The collision entropy of a Poisson law has a Bessel closed form:
# sum pi_k^2 = exp(-2 lambda) I0(2 lambda).
value, _ = poisson_renyi(PoissonSpec(2.0), 2)
print("H_2(Poi 2) =", value, " Bessel:", -math.log(i0e(4.0)))

# G(beta) = beta log sum p**(1 + 1/beta) equals -H at alpha = 1 + 1/beta, and is
# convex and non-increasing in beta.
p = make_distribution([0.5, 0.3, 0.15, 0.05])
for beta in (0.1, 0.5, 1.0, 2.0, 10.0):
    print(
        f"beta={beta:5.1f}  G={g_beta(p, beta):+.10f}  -H={-renyi_entropy(p, 1 + 1 / beta):+.10f}  "
        f"G'={g_beta_derivative(p, beta):+.3e}"
    )
