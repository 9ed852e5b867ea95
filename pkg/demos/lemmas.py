"""
The identities behind the theorem
=================================

A product of terminating 2phi1 polynomials, the I-sums it generates, and the
closed forms of the Theta tensor.
"""

from cpident.identities import check_lemma1, check_lemma2, theta_matrix
from cpident.polyform import drinfeld
from cpident.qseries import J_product, Jbar_product, check_product_identity

N = 3
mu, lam = (2, 1, 2), (1, 0, 1)
print(J_product(N, mu, lam))
print(Jbar_product(N, mu, lam))
print("prod J = (1 + t^N)^(ell-n) prod Jbar:", check_product_identity(N, mu, lam))

rep = check_lemma1(N, mu, lam)
print(rep.ell, rep.n, rep.Q, rep.checks)

# the relations also hold with ell < n
print(check_lemma1(N, (0, 0, 1), (2, 2, 0)).checks)

# Theta, by enumeration and in closed form from the Drinfeld coefficients
L, Q = 5, 0
print(drinfeld(N, L, Q).Lambda)
for row in theta_matrix(N, L, Q):
    print(row)
print(check_lemma2(N, L, Q).passed)
