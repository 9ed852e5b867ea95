"""
Certified roots of the Drinfeld polynomials
===========================================

P_Q(z) collects every N-th coefficient of (1 + t + ... + t^(N-1))^L.
Its roots are real and simple; here that is proved instance by instance
with a Sturm count and an exact discriminant, and each root is enclosed in
an interval of width about 2^-128.
"""

from cpident import drinfeld, isolate_and_refine
from cpident.balls import midrad, to_decimal

for N, L in [(3, 3), (4, 4), (3, 6)]:
    for Q in range(N):
        dd = drinfeld(N, L, Q)
        rs = isolate_and_refine(dd, 128)
        print(f"N={N} L={L} Q={Q}  Lambda={dd.Lambda}  P(1)={dd.value(1)}  disc={rs.discriminant}")
        for z, exact, b in zip(rs.roots, rs.exact, rs.B):
            tag = f"  exact {exact}" if exact is not None else ""
            print(f"   z = {to_decimal(z, 25):>30}  radius {float(midrad(z)[1]):.1e}"
                  f"  B = {to_decimal(b, 12)}{tag}")

# degenerate case: P_Q constant, nothing to isolate
print(drinfeld(2, 2, 1).Lambda, isolate_and_refine(drinfeld(2, 2, 1)).roots)
