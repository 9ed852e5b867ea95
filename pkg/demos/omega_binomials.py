"""
omega-binomials at a root of unity
==================================

Exact arithmetic in Q(zeta) with zeta = exp(i pi / N), and the
omega-binomials built from it.
"""

from cpident import cyc_field, q_binomial
from cpident.qseries import bracket, check_id1, pochhammer_omega_power

N = 3
F = cyc_field(N)
w = F.omega_power(1)

# elements are exact; omega has order N
print(w ** N == F.one, 1 + w + w * w)

# [N] vanishes, so the factorial form of a binomial can be 0/0.
# The Pochhammer-ratio form is always defined for r <= N-1.
print("[3] =", bracket(F, 3))
for n in range(2 * N - 1):
    print(n, [q_binomial(F, n, r) for r in range(N)])

# (omega; omega)_{N-1} = N
print(pochhammer_omega_power(F, 1, N - 1))

# the reflection identity for every admissible (n, r)
print(all(check_id1(F, n, r) for r in range(N) for n in range(N - r)))

# a numerical view, with a certified error ball
print(q_binomial(F, 2, 1).complex_embed(128))
