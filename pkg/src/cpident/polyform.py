"""Counting polynomial, Drinfeld polynomials, the sums K_m / Kbar_m and G_Q / Gbar_Q.

K_m is available along two independent routes:

* :func:`K_brute` forms every term of the L-fold sum;
* :func:`K_via_g` reads coefficients off the closed-form generating function,
  obtained by exact polynomial division in Q(omega)[t].

The two share nothing but the cyclotomic arithmetic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from mpmath import iv

from .balls import working_precision
from .compositions import count_cm, enumerate_compositions, lfold_sums, prefix_data
from .cyclotomic import CycNum, cyc_field
from .cycpoly import CycPoly
from .qseries import binomial_table

__all__ = [
    "CycPoly", "DrinfeldData", "KTable", "drinfeld", "m_Q", "counting_polynomial",
    "K_brute", "K_brute_all", "gen_g", "K_via_g", "G_poly", "ktables", "interp_f",
]


def m_Q(N: int, L: int, Q: int) -> int:
    """Degree of the Drinfeld polynomial, floor(((N-1)L - Q) / N)."""
    return ((N - 1) * L - Q) // N


def counting_polynomial(N: int, L: int, var: str = "t") -> CycPoly:
    """(1 + t + ... + t^(N-1))^L over Q(zeta_{2N})."""
    return CycPoly(cyc_field(N), count_cm(L, N), var)


@dataclass(frozen=True)
class DrinfeldData:
    """P_Q(z) = sum_m Lambda[m] z^m with Lambda[m] = c_{mN+Q}."""

    N: int
    L: int
    Q: int
    Lambda: tuple[int, ...]

    @property
    def m_Q(self) -> int:
        return len(self.Lambda) - 1

    def value(self, z) -> int:
        acc = 0
        for c in reversed(self.Lambda):
            acc = acc * z + c
        return acc

    def derivative(self) -> tuple[int, ...]:
        return tuple(i * c for i, c in enumerate(self.Lambda))[1:]


def drinfeld(N: int, L: int, Q: int) -> DrinfeldData:
    """Drinfeld polynomial P_Q, cross-checked against both root-of-unity average forms."""
    if not 0 <= Q <= N - 1:
        raise ValueError(f"Q={Q} outside [0, N-1]")
    c = count_cm(L, N)
    mq = m_Q(N, L, Q)
    lam = tuple(c[m * N + Q] for m in range(mq + 1))
    if lam != _drinfeld_by_average(N, L, Q):
        raise ArithmeticError("Drinfeld coefficients disagree with the omega-average form")
    return DrinfeldData(N, L, Q, lam)


@lru_cache(maxsize=None)
def _drinfeld_by_average(N: int, L: int, Q: int) -> tuple[int, ...]:
    # N^-1 t^-Q sum_a omega^(-Qa) Qpoly(t omega^a), once from the expanded
    # counting polynomial and once from (1 - t^N)^L / (1 - omega^a t)^L
    field = cyc_field(N)
    c = count_cm(L, N)
    numer = CycPoly(field, [(-1) ** (i // N) * math.comb(L, i // N) if i % N == 0 else 0
                            for i in range(N * L + 1)])
    avg_expanded = CycPoly(field, [])
    avg_closed = CycPoly(field, [])
    for a in range(N):
        phase = field.omega_power(-Q * a)
        rotated = CycPoly(field, [field.omega_power(a * n) * cn for n, cn in enumerate(c)])
        avg_expanded = avg_expanded + rotated * phase
        q = numer
        for _ in range(L):
            q = q.divide_linear(2 * a)
        avg_closed = avg_closed + q * phase
    if avg_expanded != avg_closed:
        raise ArithmeticError("the two average forms of P_Q disagree")
    out = []
    for i in range(avg_expanded.degree + 1):
        coeff = avg_expanded.coeff(i)
        if (i - Q) % N:
            if not coeff.is_zero():
                raise ArithmeticError("nonzero coefficient outside residue class Q")
            continue
        r = coeff.to_rational()
        if r is None or (r / N).denominator != 1:
            raise ArithmeticError("average form produced a non-integer coefficient")
        if i >= Q:
            out.append(int(r / N))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _check_composition(c: Sequence[int], N: int) -> None:
    if any(not 0 <= x <= N - 1 for x in c):
        raise ValueError(f"composition {tuple(c)} has a part outside [0, {N - 1}]")


def K_brute_all(c: Sequence[int], N: int, variant: str = "K") -> list[CycNum]:
    """[K_0, ..., K_{(N-1)L}] by explicit enumeration of the L-fold sum."""
    _check_composition(c, N)
    field = cyc_field(N)
    pd = prefix_data(c)
    if variant == "K":
        phases = pd.Nj[:-1]
    elif variant == "Kbar":
        phases = pd.Nbar
    else:
        raise ValueError(f"unknown variant {variant!r}")
    tab = binomial_table(N)
    tables = []
    for nj, ph in zip(c, phases):
        tables.append([tab(nj + r, r).times_zeta(2 * r * ph) for r in range(N)])
    return lfold_sums(field, tables)


def K_brute(c: Sequence[int], m: int, N: int, variant: str = "K") -> CycNum:
    values = K_brute_all(c, N, variant)
    if 0 <= m < len(values):
        return values[m]
    return cyc_field(N).zero


def gen_g(c: Sequence[int], N: int, variant: str = "K") -> CycPoly:
    """g (or gbar) = (1 - t^N)^(L-k) / prod_j (1 - t omega^(N_j)), as an exact polynomial.

    Only defined for sum(c) = kN; every division step must leave no remainder.
    """
    _check_composition(c, N)
    total = sum(c)
    if total % N:
        raise ValueError(f"sum of parts {total} is not a multiple of N={N}")
    k = total // N
    L = len(c)
    field = cyc_field(N)
    pd = prefix_data(c)
    if variant == "K":
        phases = pd.Nj[:-1]
    elif variant == "Kbar":
        phases = pd.Nbar
    else:
        raise ValueError(f"unknown variant {variant!r}")
    # synthetic division in Z[x]/(x^M - 1), where multiplying by zeta^s is a
    # cyclic shift: after shifting row i by -i*s, dividing by (1 - zeta^s t)
    # is a prefix sum, and repeated factors are repeated prefix sums. A
    # remainder is zero in the shifted frame iff it is zero. Reduction mod
    # Phi_M happens once, at the end.
    M = field.M
    e = L - k
    n_rows = N * e + 1
    bound = math.comb(e, e // 2) * n_rows ** len(phases)
    rows = np.zeros((n_rows, M), dtype=np.int64 if bound < 2**62 else object)
    for i in range(e + 1):
        rows[N * i, 0] = (-1) ** i * math.comb(e, i)
    remainders = []
    for shift, count in sorted(Counter((2 * ph) % M for ph in phases).items()):
        if count >= len(rows):
            raise ArithmeticError("more linear factors than the numerator degree allows")
        r_idx, c_idx = _shift_index(len(rows), shift, M)
        frame = rows[r_idx, c_idx]
        for _ in range(count):
            frame = np.cumsum(frame, axis=0)
            remainders.append(frame[-1])
            frame = frame[:-1]
        r_idx, c_idx = _shift_index(len(frame), -shift, M)
        rows = frame[r_idx, c_idx]
    if any(not r.is_zero() for r in field.from_group_ring_rows(np.array(remainders))):
        raise ArithmeticError("a linear factor does not divide the numerator")
    g = CycPoly(field, field.from_group_ring_rows(rows))
    expected = (N - 1) * L - k * N
    if g.degree != expected:
        raise ArithmeticError(f"generating function has degree {g.degree}, expected {expected}")
    return g


@lru_cache(maxsize=None)
def _shift_index(n_rows: int, shift: int, M: int) -> tuple[np.ndarray, np.ndarray]:
    # index arrays with out[i, c] = rows[i, (c + i*shift) % M]
    i = np.arange(n_rows)[:, None]
    return i, (np.arange(M)[None, :] + i * shift) % M


@dataclass(frozen=True)
class KTable:
    """K_m and Kbar_m of one composition with sum kN, read off g and gbar."""

    composition: tuple[int, ...]
    N: int
    k: int
    K: tuple[CycNum, ...]
    Kbar: tuple[CycNum, ...]

    def G(self, Q: int, variant: str = "G") -> CycPoly:
        """G_Q (or Gbar_Q) = sum_{m=0}^{m_Q - k} K_{mN+Q} z^m."""
        src = {"G": self.K, "Gbar": self.Kbar}[variant]
        top = m_Q(self.N, len(self.composition), Q) - self.k
        field = cyc_field(self.N)
        return CycPoly(field, [src[m * self.N + Q] for m in range(top + 1)], "z")


def K_via_g(c: Sequence[int], N: int) -> KTable:
    g = gen_g(c, N, "K")
    gbar = gen_g(c, N, "Kbar")
    return KTable(tuple(c), N, sum(c) // N, g.coeffs, gbar.coeffs)


def G_poly(c: Sequence[int], N: int, Q: int, variant: str = "G") -> CycPoly:
    if not 0 <= Q <= N - 1:
        raise ValueError(f"Q={Q} outside [0, N-1]")
    return K_via_g(c, N).G(Q, variant)


@lru_cache(maxsize=64)
def ktables(N: int, L: int, total: int) -> tuple[KTable, ...]:
    """KTables of every composition of ``total`` (a multiple of N), lexicographic."""
    return tuple(K_via_g(c, N) for c in enumerate_compositions(L, N, total))


def interp_f(roots, k: int, precision_bits: int = 128) -> list:
    """Coefficients (ascending, as intervals) of prod_{l != k} (z - z_l) / (z_k - z_l).

    ``roots`` is a :class:`~cpident.roots.RootSet`; its distinctness
    certificate is required.
    """
    if not roots.distinct:
        raise ValueError("interpolation basis needs distinct roots")
    zs = roots.roots
    with working_precision(precision_bits + 32):
        coeffs = [iv.mpf(1)]
        denom = iv.mpf(1)
        for ell, z in enumerate(zs):
            if ell == k:
                continue
            shifted = [iv.mpf(0)] + coeffs
            for i, cf in enumerate(coeffs):
                shifted[i] = shifted[i] - cf * z
            coeffs = shifted
            denom = denom * (zs[k] - z)
        return [cf / denom for cf in coeffs]
