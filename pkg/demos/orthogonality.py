"""
Orthogonality of G_Q at the Drinfeld roots
==========================================

The Gram matrix sum_c Gbar_Q(c, z_j) G_Q(c, z_k) over compositions c of N
is diagonal with entries -B_k. It is assembled twice: from the exact
integer tensor Theta, and by evaluating every G_Q directly in complex
interval arithmetic.
"""

from cpident import drinfeld, isolate_and_refine, verify_theorem
from cpident.balls import to_decimal
from cpident.identities import check_corollary, theta_matrix

N, L, Q = 3, 3, 1
print(theta_matrix(N, L, Q))           # [[18, 0], [0, 0]]
rep = verify_theorem(N, L, Q)
print(rep.passed, to_decimal(rep.matrix[0][0]), to_decimal(rep.roots.B[0]))

N, L, Q = 4, 4, 0
rep = verify_theorem(N, L, Q)
for row in rep.matrix:
    print("  ".join(f"{to_decimal(x, 10):>14}" for x in row))
print("off-diagonal bound", float(rep.max_offdiag), " radius ratio", float(rep.max_radius_ratio))

# the interpolation form: h_k(z) = -B_k prod_{l != k} (z - z_l)/(z_k - z_l)
dd = drinfeld(N, L, Q)
cor = check_corollary(dd, isolate_and_refine(dd, 128), 128)
print(cor.passed, [float(r["max_rel_diff"]) for r in cor.per_root])
