"""
Two ways to compute the sums K_m
================================

The L-fold sum over omega-binomials, once term by term and once from its
closed-form generating function. The two only share cyclotomic arithmetic.
"""

import time

from cpident.compositions import enumerate_compositions
from cpident.polyform import K_brute_all, K_via_g

N, L = 3, 6
comps = list(enumerate_compositions(L, N, N))
print(len(comps), "compositions of", N, "into", L, "parts below", N)

c = comps[17]
brute = K_brute_all(c, N)
table = K_via_g(c, N)
print(c)
print(brute[:4])
print(table.K[:4])

# the generating function has degree (N-1)L - N, so brute[m] vanishes above it
same = all(b == (table.K[m] if m < len(table.K) else 0) for m, b in enumerate(brute))
print("routes agree:", same)

# Kbar is the complex conjugate of K
print(all(a.conjugate() == b for a, b in zip(table.K, table.Kbar)))

t0 = time.perf_counter()
for c in comps:
    K_brute_all(c, N), K_brute_all(c, N, "Kbar")
t1 = time.perf_counter()
for c in comps:
    K_via_g(c, N)
t2 = time.perf_counter()
print(f"brute {t1 - t0:.3f}s   generating function {t2 - t1:.3f}s")
