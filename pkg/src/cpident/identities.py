"""The sums I_m, Ibar_m, the Theta tensor, and instance checks of the two lemmas,
the orthogonality theorem and its corollary.

Exact checks return plain dataclass reports; numeric checks work on
outward-rounded intervals, so "contains zero" statements are proofs about
the instance at hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from mpmath import iv

from .balls import contains_zero, magnitude, midrad, working_precision
from .compositions import lfold_sums, prefix_data
from .cyclotomic import CycNum, complex_embed, cyc_field
from .polyform import DrinfeldData, drinfeld, interp_f, ktables
from .qseries import Jbar_product, J_product, binomial_table, site_offsets
from .roots import RootSet, isolate_and_refine

__all__ = [
    "I_all", "I_sum", "Lemma1Report", "check_lemma1", "check_generating_identity",
    "theta", "theta_matrix", "theta_closed", "theta_closed_m0", "Lemma2Report",
    "check_lemma2", "GramReport", "gram_matrix", "verify_theorem",
    "CorollaryReport", "check_corollary",
]


# -- I sums ------------------------------------------------------------------

def I_all(N: int, mu: Sequence[int], lam: Sequence[int], variant: str = "I") -> list[CycNum]:
    """[I_0, I_1, ...] (or Ibar) by explicit enumeration over compositions.

    ``variant="I"`` gives I_m({mu};{lam}); ``variant="Ibar"`` gives
    Ibar_m({lam};{mu}) with the same (mu, lam) site data.
    """
    if len(mu) != len(lam):
        raise ValueError("mu and lam must have equal length")
    if any(not 0 <= x <= N - 1 for x in list(mu) + list(lam)):
        raise ValueError("parts must lie in [0, N-1]")
    field_ = cyc_field(N)
    tab = binomial_table(N)
    a, bbar = site_offsets(mu, lam)
    tables = []
    if variant == "I":
        for j in range(len(mu)):
            tables.append([(tab(mu[j], n) * tab(n + lam[j], n)).times_zeta(2 * n * (a[j] + bbar[j]))
                           for n in range(N)])

        def phase(idx: np.ndarray) -> np.ndarray:
            # omega^(-n_j N_j) with N_j the prefix sum of the summation variable
            prefix = np.cumsum(idx, axis=1) - idx
            return -2 * (idx * prefix).sum(axis=1)
    elif variant == "Ibar":
        for j in range(len(mu)):
            tables.append([(tab(lam[j], n) * tab(n + mu[j], n)).times_zeta(2 * n * (bbar[j] + a[j]))
                           for n in range(N)])

        def phase(idx: np.ndarray) -> np.ndarray:
            suffix = idx.sum(axis=1, keepdims=True) - np.cumsum(idx, axis=1)
            return -2 * (idx * suffix).sum(axis=1)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lfold_sums(field_, tables, phase)


def I_sum(N: int, mu: Sequence[int], lam: Sequence[int], m: int, variant: str = "I") -> CycNum:
    values = I_all(N, mu, lam, variant)
    if 0 <= m < len(values):
        return values[m]
    return cyc_field(N).zero


def check_generating_identity(N: int, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """Coefficients of prod J_j (prod Jbar_j) equal (-1)^m omega^(m^2/2) I_m (Ibar_m)."""
    ok = True
    for variant, gen in (("I", J_product(N, mu, lam)), ("Ibar", Jbar_product(N, mu, lam))):
        values = I_all(N, mu, lam, variant)
        for m in range(max(len(values), gen.degree + 1)):
            val = values[m] if m < len(values) else cyc_field(N).zero
            expected = val.times_zeta(m * m) * (-1 if m % 2 else 1)
            ok &= gen.coeff(m) == expected
    return ok


@dataclass
class Lemma1Report:
    N: int
    mu: tuple[int, ...]
    lam: tuple[int, ...]
    ell: int
    n: int
    Q: int
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def check_lemma1(N: int, mu: Sequence[int], lam: Sequence[int]) -> Lemma1Report:
    """Check every applicable identity relating I_m and Ibar_m for one (mu, lam).

    With sum(mu) = ell*N + Q and sum(lam) = n*N + Q: if n = 0,
    I_{kN} = C(ell, k) for k = 0..ell; always, the relations for I_N,
    I_{ell N} and I_{(ell-1)N}. These also hold for ell < n, which the
    Theta recursion needs.
    """
    mu, lam = tuple(mu), tuple(lam)
    smu, slam = sum(mu), sum(lam)
    if (smu - slam) % N:
        raise ValueError(f"sum(mu)={smu} and sum(lam)={slam} differ mod N={N}")
    Q = smu % N
    ell, n = smu // N, slam // N
    rep = Lemma1Report(N, mu, lam, ell, n, Q)
    I_vals = I_all(N, mu, lam, "I")
    Ib_vals = I_all(N, mu, lam, "Ibar")
    zero = cyc_field(N).zero

    def I(m):
        return I_vals[m] if 0 <= m < len(I_vals) else zero

    def Ib(m):
        return Ib_vals[m] if 0 <= m < len(Ib_vals) else zero

    if n == 0:
        rep.checks["I_kN=binom(ell,k)"] = all(I(k * N) == math.comb(ell, k) for k in range(ell + 1))
    rep.checks["I_N=(ell-n)+Ibar_N"] = I(N) == Ib(N) + (ell - n)
    rep.checks["I_ellN=Ibar_nN"] = I(ell * N) == Ib(n * N)
    rep.checks["I_(ell-1)N"] = I(ell * N - N) == Ib(n * N) * (ell - n) + Ib(n * N - N)
    return rep


# -- Theta ---------------------------------------------------------------------

def theta_matrix(N: int, L: int, Q: int, k: int = 1, size: Optional[int] = None) -> list[list[int]]:
    """Theta[ell][m] = sum over compositions of kN of Kbar_{ell N+Q} K_{mN+Q}, exactly.

    Entries are asserted to be rational integers. ``size`` defaults to m_Q + 1;
    indices past a table's length contribute zero.
    """
    dd = drinfeld(N, L, Q)
    size = dd.m_Q + 1 if size is None else size
    zero = cyc_field(N).zero
    acc = [[zero] * size for _ in range(size)]
    for kt in ktables(N, L, k * N):
        col = [kt.K[m * N + Q] if m * N + Q < len(kt.K) else zero for m in range(size)]
        row = [kt.Kbar[l * N + Q] if l * N + Q < len(kt.Kbar) else zero for l in range(size)]
        for ell in range(size):
            if row[ell].is_zero():
                continue
            for m in range(size):
                if not col[m].is_zero():
                    acc[ell][m] = acc[ell][m] + row[ell] * col[m]
    out = []
    for ell in range(size):
        line = []
        for m in range(size):
            r = acc[ell][m].to_rational()
            if r is None or r.denominator != 1:
                raise ArithmeticError(
                    f"Theta[{ell}][{m}] (N={N}, L={L}, Q={Q}, k={k}) is not an integer: {acc[ell][m]}")
            line.append(int(r))
        out.append(line)
    return out


def theta(N: int, L: int, Q: int, ell: int, m: int, k: int = 1) -> int:
    size = max(ell, m) + 1
    return theta_matrix(N, L, Q, k, size)[ell][m]


def _lam(dd: DrinfeldData, i: int) -> int:
    return dd.Lambda[i] if 0 <= i < len(dd.Lambda) else 0


def theta_closed(dd: DrinfeldData, ell: int, m: int) -> int:
    """sum_{j=0}^m (ell + 1 + m - 2j) Lambda_j Lambda_{ell+1+m-j}."""
    return sum((ell + 1 + m - 2 * j) * _lam(dd, j) * _lam(dd, ell + 1 + m - j) for j in range(m + 1))


def theta_closed_m0(dd: DrinfeldData, ell: int, k: int) -> int:
    """C(ell+k, k) Lambda_0 Lambda_{ell+k}."""
    return math.comb(ell + k, k) * _lam(dd, 0) * _lam(dd, ell + k)


@dataclass
class Lemma2Report:
    N: int
    L: int
    Q: int
    m0: list = field(default_factory=list)    # (ell, k, brute, closed)
    k1: list = field(default_factory=list)    # (ell, m, brute, closed)
    symmetric: bool = True

    @property
    def failures(self) -> list:
        return [r for r in self.m0 + self.k1 if r[2] != r[3]]

    @property
    def passed(self) -> bool:
        return self.symmetric and not self.failures


def check_lemma2(N: int, L: int, Q: int, ks: Sequence[int] = (1, 2)) -> Lemma2Report:
    """Compare Theta by enumeration with both closed forms.

    The index range runs one step past m_Q so that the vanishing
    (Lambda-degenerate) instances are covered too.
    """
    dd = drinfeld(N, L, Q)
    size = dd.m_Q + 2
    rep = Lemma2Report(N, L, Q)
    for k in ks:
        if k * N > (N - 1) * L:
            continue
        th = theta_matrix(N, L, Q, k, size)
        for ell in range(size):
            rep.m0.append((ell, k, th[ell][0], theta_closed_m0(dd, ell, k)))
        if k == 1:
            for ell in range(size):
                for m in range(size):
                    rep.k1.append((ell, m, th[ell][m], theta_closed(dd, ell, m)))
            rep.symmetric = all(th[i][j] == th[j][i] for i in range(size) for j in range(size))
    return rep


# -- Gram matrix -------------------------------------------------------------------

@dataclass
class GramReport:
    dd: DrinfeldData
    roots: RootSet
    precision_bits: int
    matrix: list            # via Theta, real intervals
    direct: list            # via sum over compositions of Gbar(z_i) G(z_k), complex intervals
    expected_diag: list     # -B_k
    offdiag_ok: bool
    diag_ok: bool
    paths_agree: bool
    radius_ok: bool
    max_offdiag: object     # upper bound on |off-diagonal entries|
    max_diag_relerr: object
    max_radius_ratio: object  # max radius / (1 + |B_k|)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.offdiag_ok and self.diag_ok and self.paths_agree and self.radius_ok


RADIUS_TOL = 10 ** -30


def _powers(z, n):
    out = [iv.mpf(1)]
    for _ in range(n):
        out.append(out[-1] * z)
    return out


def _embedded_tables(N: int, L: int, precision_bits: int):
    rows = []
    for kt in ktables(N, L, N):
        rows.append(([complex_embed(c, precision_bits) for c in kt.K],
                     [complex_embed(c, precision_bits) for c in kt.Kbar]))
    return rows


def _G_at(coeffs, N, Q, top, zpow):
    acc = iv.mpc(0, 0)
    for m in range(top + 1):
        acc += coeffs[m * N + Q] * zpow[m]
    return acc


def gram_matrix(dd: DrinfeldData, roots: RootSet, precision_bits: int = 128) -> GramReport:
    """Gram matrix sum_c Gbar_Q(c, z_i) G_Q(c, z_k) at the certified roots.

    Computed twice: from the exact Theta tensor and by direct summation over
    compositions. Checks that off-diagonal entries enclose 0, diagonal
    entries enclose -B_k, both routes overlap, and radii stay below
    1e-30 * (1 + |B_k|).
    """
    N, L, Q = dd.N, dd.L, dd.Q
    mq = dd.m_Q
    zs = roots.roots
    n = len(zs)
    wp = precision_bits + 64
    note = ""
    if not roots.all_real:
        note = f"only {n} of {mq} roots are real"
    th = theta_matrix(N, L, Q, 1, max(mq, 1)) if mq >= 1 else [[0]]
    tables = _embedded_tables(N, L, wp) if mq >= 1 else []
    with working_precision(wp):
        pw = [_powers(z, mq) for z in zs]
        mat = [[iv.mpf(0)] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                acc = iv.mpf(0)
                for ell in range(mq):
                    for m in range(mq):
                        if th[ell][m]:
                            acc += th[ell][m] * pw[i][ell] * pw[k][m]
                mat[i][k] = acc
        direct = [[iv.mpc(0, 0)] * n for _ in range(n)]
        top = mq - 1
        for K, Kbar in tables:
            gvals = [_G_at(K, N, Q, top, pw[k]) for k in range(n)]
            gbvals = [_G_at(Kbar, N, Q, top, pw[i]) for i in range(n)]
            for i in range(n):
                for k in range(n):
                    direct[i][k] = direct[i][k] + gbvals[i] * gvals[k]
        expected = [-b for b in roots.B]
        offdiag_ok = diag_ok = paths_agree = radius_ok = True
        max_off = iv.mpf(0)
        max_rel = iv.mpf(0)
        max_ratio = 0
        for i in range(n):
            for k in range(n):
                scale = 1 + magnitude(roots.B[k])
                entry = mat[i][k]
                paths_agree &= contains_zero(direct[i][k] - entry)
                paths_agree &= contains_zero(direct[i][k].imag)
                ratio = max(midrad(entry)[1], midrad(direct[i][k])[1]) / scale
                max_ratio = max(max_ratio, ratio)
                radius_ok &= ratio < RADIUS_TOL
                if i == k:
                    diag_ok &= contains_zero(entry - expected[k])
                    rel = magnitude(entry - expected[k]) / scale
                    max_rel = max(max_rel, rel)
                else:
                    offdiag_ok &= contains_zero(entry)
                    max_off = max(max_off, magnitude(entry))
    if not roots.all_real:
        diag_ok = False
    return GramReport(dd, roots, precision_bits, mat, direct, expected,
                      offdiag_ok, diag_ok, paths_agree, radius_ok,
                      max_off, max_rel, max_ratio, note)


def verify_theorem(N: int, L: int, Q: int, precision_bits: int = 128,
                   max_precision: int = 2048) -> GramReport:
    """Gram check with precision doubling until the radius test separates."""
    dd = drinfeld(N, L, Q)
    bits = precision_bits
    while True:
        rs = isolate_and_refine(dd, bits)
        rep = gram_matrix(dd, rs, bits)
        if rep.radius_ok or bits * 2 > max_precision:
            return rep
        bits *= 2


# -- corollary ------------------------------------------------------------------

@dataclass
class CorollaryReport:
    dd: DrinfeldData
    precision_bits: int
    per_root: list = field(default_factory=list)  # dicts per k
    tolerance: float = 1e-25

    @property
    def passed(self) -> bool:
        return all(r["match"] and r["consistent"] and r["real"] for r in self.per_root)


def check_corollary(dd: DrinfeldData, roots: RootSet, precision_bits: int = 128,
                    tolerance: float = 1e-25) -> CorollaryReport:
    """Compare h_k(z) = sum_c Gbar(c, z_k) G(c, z) with -B_k f_k(z) coefficientwise.

    h_k is assembled from the exact Theta tensor. Realness is checked on the
    direct complex evaluation of h_k and of its conjugate partner
    hbar_k(z) = sum_c G(c, z_k) Gbar(c, z).
    """
    if not roots.distinct:
        raise ValueError("the corollary needs distinct roots")
    N, L, Q = dd.N, dd.L, dd.Q
    mq = dd.m_Q
    rep = CorollaryReport(dd, precision_bits, tolerance=tolerance)
    if mq < 1:
        return rep
    th = theta_matrix(N, L, Q, 1, mq)
    wp = precision_bits + 64
    tables = _embedded_tables(N, L, wp)
    with working_precision(wp):
        for k, zk in enumerate(roots.roots):
            pw = _powers(zk, mq)
            h = []
            for m in range(mq):
                acc = iv.mpf(0)
                for ell in range(mq):
                    if th[ell][m]:
                        acc += th[ell][m] * pw[ell]
                h.append(acc)
            f = interp_f(roots, k, wp)
            rhs = [-roots.B[k] * c for c in f]
            h_direct = [iv.mpc(0, 0)] * mq
            hbar_direct = [iv.mpc(0, 0)] * mq
            for K, Kbar in tables:
                gb = _G_at(Kbar, N, Q, mq - 1, pw)
                g = _G_at(K, N, Q, mq - 1, pw)
                for m in range(mq):
                    h_direct[m] = h_direct[m] + gb * K[m * N + Q]
                    hbar_direct[m] = hbar_direct[m] + g * Kbar[m * N + Q]
            norm = max(magnitude(c) for c in rhs)
            diffs = [magnitude(a - b) for a, b in zip(h, rhs)]
            rel = max(diffs) / norm if norm else max(diffs)
            rep.per_root.append({
                "k": k,
                "h": h,
                "rhs": rhs,
                "max_rel_diff": rel,
                "match": rel < tolerance,
                "consistent": all(contains_zero(a - b) for a, b in zip(h, rhs)),
                "real": all(contains_zero(c.imag) for c in h_direct + hbar_direct)
                and all(contains_zero(a - b) for a, b in zip(h_direct, hbar_direct))
                and all(contains_zero(a - b) for a, b in zip(h_direct, h)),
            })
    return rep
