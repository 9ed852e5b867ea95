"""Certified real roots of Drinfeld polynomials.

Exact certificates come first: the resultant of P and P' over the integers
decides distinctness, and a Sturm sequence over Q counts real roots. Roots
are then isolated by Sturm bisection on dyadic endpoints and refined with
interval Newton steps in outward-rounded arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import iv
from mpmath.libmp import to_rational

from .balls import endpoints, from_rational, intersect, midrad, working_precision
from .polyform import DrinfeldData

Poly = list  # ascending coefficients, ints or Fractions


# -- exact polynomial helpers ------------------------------------------------

def _trim(p: Poly) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _deriv(p: Poly) -> Poly:
    return _trim([i * c for i, c in enumerate(p)][1:] or [0])


def _divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / b[-1]
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db] or [Fraction(0)])


def _is_zero(p: Poly) -> bool:
    return len(p) == 1 and p[0] == 0


def _gcd(a: Poly, b: Poly) -> Poly:
    a, b = _trim(a), _trim(b)
    while not _is_zero(b):
        _, r = _divmod(a, b)
        a, b = b, r
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def _eval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [_trim([Fraction(c) for c in p])]
    if len(seq[0]) == 1:
        return seq
    seq.append(_deriv(seq[0]))
    while not _is_zero(seq[-1]) and len(seq[-1]) > 1:
        _, r = _divmod(seq[-2], seq[-1])
        if _is_zero(r):
            break
        seq.append([-c for c in r])
    return seq


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _variations_at(seq: list[Poly], x) -> int:
    return _variations([_sign(_eval(p, x)) for p in seq])


def _variations_at_inf(seq: list[Poly], positive: bool) -> int:
    signs = []
    for p in seq:
        s = _sign(p[-1])
        if not positive and (len(p) - 1) % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def real_root_count(p: Poly) -> int:
    """Number of distinct real roots, by Sturm's theorem."""
    seq = sturm_sequence(p)
    return _variations_at_inf(seq, False) - _variations_at_inf(seq, True)


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of two integer polynomials via a fraction-free Sylvester determinant."""
    f, g = _trim(list(f)), _trim(list(g))
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    # rows use descending coefficients
    fd, gd = f[::-1], g[::-1]
    mat = []
    for i in range(n):
        mat.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        mat.append([0] * i + gd + [0] * (size - n - 1 - i))
    return _bareiss_det(mat)


def _bareiss_det(mat: list[list[int]]) -> int:
    a = [row[:] for row in mat]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def discriminant(p: Sequence[int]) -> int:
    p = _trim(list(p))
    n = len(p) - 1
    if n < 1:
        raise ValueError("discriminant of a constant")
    res = resultant(p, _deriv(p))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res // p[-1]


def certify_roots(dd: DrinfeldData) -> tuple[int, bool]:
    """(number of distinct real roots, all roots distinct) for P_Q, exactly."""
    if dd.m_Q < 1:
        raise ValueError("P_Q is constant; it has no roots")
    p = list(dd.Lambda)
    distinct = resultant(p, _deriv(p)) != 0
    return real_root_count(p), distinct


# -- rational roots ------------------------------------------------------------

def _divisors(n: int, limit: int = 10**12) -> Optional[list[int]]:
    n = abs(n)
    if n > limit:
        return None
    out = set()
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def rational_roots(p: Sequence[int]) -> Optional[list[Fraction]]:
    """All rational roots of an integer polynomial with nonzero constant term.

    ``None`` when the coefficients are too large to enumerate divisors.
    """
    p = _trim(list(p))
    if p[0] == 0:
        raise ValueError("constant term must be nonzero")
    num, den = _divisors(p[0]), _divisors(p[-1])
    if num is None or den is None:
        return None
    found = set()
    for a in num:
        for b in den:
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in found and _eval(p, cand) == 0:
                    found.add(cand)
    return sorted(found)


def _multiplicity(p: Poly, r: Fraction) -> int:
    k = 0
    q = [Fraction(c) for c in p]
    lin = [-r, Fraction(1)]
    while True:
        quot, rem = _divmod(q, lin)
        if not _is_zero(rem):
            return k
        k += 1
        q = quot


# -- root sets -----------------------------------------------------------------

@dataclass(frozen=True)
class RootSet:
    """Certified real roots of P_Q in ascending order (repeated per multiplicity)."""

    dd: DrinfeldData
    precision_bits: int
    roots: tuple  # of iv.mpf
    exact: tuple[Optional[Fraction], ...]
    multiplicity: tuple[int, ...]
    real_count: int
    distinct: bool
    discriminant: int
    B: tuple = field(default=())

    @property
    def all_real(self) -> bool:
        return len(self.roots) == self.dd.m_Q

    @property
    def max_radius(self):
        return max((midrad(z)[1] for z in self.roots), default=0)


def _cauchy_bound(p: Poly) -> Fraction:
    lead = abs(Fraction(p[-1]))
    b = 1 + max(abs(Fraction(c)) / lead for c in p[:-1])
    bound = Fraction(1)
    while bound < b:
        bound *= 2
    return bound


def _count(seq: list[Poly], a: Fraction, b: Fraction) -> int:
    return _variations_at(seq, a) - _variations_at(seq, b)


def _isolate(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b], each holding exactly one root of p.

    ``p`` must be squarefree with no rational roots, so no dyadic point is a root.
    """
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    bound = _cauchy_bound(p)
    out = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = _count(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    return sorted(out)


def _to_fraction(x) -> Fraction:
    p, q = to_rational(x._mpf_)
    return Fraction(int(p), int(q))


def _interval(a: Fraction, b: Fraction):
    return iv.mpf((endpoints(from_rational(a))[0], endpoints(from_rational(b))[1]))


def _newton_refine(p: Sequence[int], seq: list[Poly], a: Fraction, b: Fraction,
                   precision_bits: int, max_iter: int = 1000):
    """Shrink the isolating interval (a, b] to radius <= 2**-precision_bits.

    Interval Newton steps are taken whenever the derivative enclosure excludes
    zero and the step at least halves the width; otherwise the interval is
    bisected using exact Sturm counts.
    """
    dp = _deriv(list(p))
    target = Fraction(1, 2 ** precision_bits)
    X = _interval(a, b)
    for _ in range(max_iter):
        lo, hi = (_to_fraction(e) for e in endpoints(X))
        if (hi - lo) / 2 <= target:
            return X, True
        mid = (lo + hi) / 2
        dX = _eval(dp, X)
        if 0 not in dX:
            m = from_rational(mid)
            Y = intersect(X, m - _eval(list(p), m) / dX)
            if Y is None:
                raise ArithmeticError("interval Newton step excluded the certified root")
            ylo, yhi = (_to_fraction(e) for e in endpoints(Y))
            if yhi - ylo <= (hi - lo) / 2:
                X = Y
                continue
        if _eval(list(p), mid) == 0:
            return from_rational(mid), True
        if _count(seq, lo, mid) >= 1:
            X = _interval(lo, mid)
        else:
            X = _interval(mid, hi)
    return X, False


def isolate_and_refine(dd: DrinfeldData, precision_bits: int = 128) -> RootSet:
    """Isolate all real roots of P_Q and refine them to radius <= 2**-precision_bits."""
    if dd.m_Q < 1:
        return RootSet(dd, precision_bits, (), (), (), 0, True, 1, ())
    p = list(dd.Lambda)
    real_count, distinct = certify_roots(dd)
    disc = discriminant(p)
    bound = _cauchy_bound(p)
    wp = precision_bits + 64 + int(bound).bit_length()

    entries = []  # (sort key, interval, exact, multiplicity)
    with working_precision(wp):
        rest = [Fraction(c) for c in p]
        rats = rational_roots(p) or []
        for r in rats:
            k = _multiplicity(rest, r)
            for _ in range(k):
                rest, _ = _divmod(rest, [-r, Fraction(1)])
            entries.append((r, from_rational(r), r, k))
        if len(rest) > 1:
            sqf, _ = _divmod(rest, _gcd(rest, _deriv(rest)))
            seq = sturm_sequence(sqf)
            # refine on an integer multiple of the squarefree part
            scale = math.lcm(*(c.denominator for c in sqf))
            sqf_int = [int(c * scale) for c in sqf]
            for a, b in _isolate(sqf):
                X, ok = _newton_refine(sqf_int, seq, a, b, precision_bits)
                if not ok:
                    raise ArithmeticError(
                        f"root refinement stalled at radius {midrad(X)[1]}")
                mult = 1
                chain = rest
                while True:
                    chain = _gcd(chain, _deriv(chain))
                    if len(chain) <= 1 or _count(sturm_sequence(chain), a, b) == 0:
                        break
                    mult += 1
                entries.append((_to_fraction(midrad(X)[0]), X, None, mult))
        entries.sort(key=lambda e: e[0])
        roots, exact, mults = [], [], []
        for _, X, e, k in entries:
            for _ in range(k):
                roots.append(X)
                exact.append(e)
                mults.append(k)
        rs = RootSet(dd, precision_bits, tuple(roots), tuple(exact), tuple(mults),
                     real_count, distinct, disc)
        return _with_B(rs, wp)


def _with_B(rs: RootSet, wp: int) -> RootSet:
    B = compute_B(rs, wp)
    return RootSet(rs.dd, rs.precision_bits, rs.roots, rs.exact, rs.multiplicity,
                   rs.real_count, rs.distinct, rs.discriminant, B)


def compute_B(rs: RootSet, working_bits: Optional[int] = None) -> tuple:
    """B_k = z_k * Lambda_top^2 * prod_{l != k} (z_k - z_l)^2; zero at multiple roots."""
    wp = working_bits or rs.precision_bits + 64
    lead = rs.dd.Lambda[-1]
    out = []
    with working_precision(wp):
        for k, zk in enumerate(rs.roots):
            if rs.multiplicity[k] > 1:
                out.append(iv.mpf(0))
                continue
            acc = zk * lead * lead
            for ell, zl in enumerate(rs.roots):
                if ell != k:
                    d = zk - zl
                    acc = acc * d * d
            out.append(acc)
    return tuple(out)
