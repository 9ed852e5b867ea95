"""Exact arithmetic in the cyclotomic field Q(zeta) with zeta = exp(i*pi/N).

The field has order M = 2N, so both omega = zeta**2 = exp(2*pi*i/N) and
its square root zeta are exact elements. An element is stored as an
integer numerator vector of length phi(M) together with a positive common
denominator; the vector holds the coefficients of 1, zeta, ..., zeta**(d-1)
of the remainder modulo the M-th cyclotomic polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np
from mpmath import iv

from .balls import IvComplex, working_precision

Scalar = Union[int, Fraction]


def _poly_divmod_int(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (ascending coefficients) by a monic divisor."""
    num = list(num)
    dd = len(den) - 1
    assert den[-1] == 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    rem = num[:dd] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial.

    Computed by exact division of x**n - 1 by the cyclotomic polynomials of
    the proper divisors of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_polynomial(d))
            if any(rem):
                raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1")
    return tuple(poly)


class CycField:
    """The field Q(zeta_{2N}); use :func:`cyc_field` to get the shared instance."""

    def __init__(self, N: int):
        if N < 2:
            raise ValueError("N must be at least 2")
        self.N = N
        self.M = 2 * N
        self.phi_M = cyclotomic_polynomial(self.M)
        self.degree = len(self.phi_M) - 1
        d = self.degree
        # canonical vectors of x**i for 0 <= i < 2d - 1, used to fold products
        rows = []
        for i in range(max(2 * d - 1, self.M)):
            x = [0] * i + [1]
            _, r = _poly_divmod_int(x, self.phi_M)
            rows.append(tuple(r + [0] * (d - len(r))))
        self._fold = rows
        self._zeta = tuple(rows[k] for k in range(self.M))
        self.zero = CycNum(self, (0,) * d, 1)
        self.one = self.zeta_power(0)

    def __repr__(self) -> str:
        return f"CycField(N={self.N})"

    def __reduce__(self):
        return (cyc_field, (self.N,))

    def zeta_power(self, k: int) -> "CycNum":
        """zeta**k; ``zeta_power(2*k)`` is omega**k."""
        return CycNum(self, self._zeta[k % self.M], 1)

    def omega_power(self, k: int) -> "CycNum":
        return self.zeta_power(2 * k)

    def scalar(self, q: Scalar) -> "CycNum":
        q = Fraction(q)
        return CycNum(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def from_group_ring(self, coeffs: Sequence[int], den: int = 1) -> "CycNum":
        """Element sum(coeffs[e] * zeta**e) for a length-M integer vector."""
        d = self.degree
        acc = [0] * d
        for e, c in enumerate(coeffs):
            if c:
                row = self._zeta[e % self.M]
                for i in range(d):
                    if row[i]:
                        acc[i] += c * row[i]
        return _normalized(self, acc, den)

    def from_group_ring_rows(self, rows) -> list["CycNum"]:
        """:meth:`from_group_ring` for the rows of an integer matrix, as one product."""
        mat = np.asarray(rows)
        if mat.size == 0:
            return []
        big = mat.dtype == object or int(np.abs(mat).max()) > 2**40
        if big:
            mat = mat.astype(object)
        red = mat @ self._zeta_matrix(big)
        return [CycNum(self, tuple(int(c) for c in r), 1) for r in red]

    def _zeta_matrix(self, big: bool) -> np.ndarray:
        key = "_zm_obj" if big else "_zm_int"
        if not hasattr(self, key):
            setattr(self, key, np.array(self._zeta, dtype=object if big else np.int64))
        return getattr(self, key)

    def _reduce(self, coeffs: list[int], den: int) -> "CycNum":
        d = self.degree
        acc = coeffs[:d] + [0] * (d - len(coeffs[:d]))
        for i in range(d, len(coeffs)):
            c = coeffs[i]
            if c:
                row = self._fold[i]
                for j in range(d):
                    if row[j]:
                        acc[j] += c * row[j]
        return _normalized(self, acc, den)


@lru_cache(maxsize=None)
def cyc_field(N: int) -> CycField:
    return CycField(N)


def _normalized(field: CycField, num: list[int], den: int) -> "CycNum":
    if den < 0:
        num = [-c for c in num]
        den = -den
    if den != 1:
        g = math.gcd(den, *num)
        if g != 1:
            num = [c // g for c in num]
            den //= g
    return CycNum(field, tuple(num), den)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod_frac(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return q, _poly_trim(a[:db] or [Fraction(0)])


def _poly_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(b):
                out[i + j] -= x * y
    return _poly_trim(out)


class CycNum:
    """An immutable element of Q(zeta_{2N}) in canonical form."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CycField, num: tuple[int, ...], den: int = 1):
        self.field = field
        self.num = num
        self.den = den

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.field is not self.field and other.field.N != self.field.N:
                raise ValueError(
                    f"field mismatch: N={self.field.N} vs N={other.field.N}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- ring operations ------------------------------------------------
    def __add__(self, other) -> "CycNum":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return _normalized(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        return _normalized(
            self.field,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other) -> "CycNum":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "CycNum":
        return (-self) + other

    def __mul__(self, other) -> "CycNum":
        if isinstance(other, int):
            return _normalized(self.field, [a * other for a in self.num], self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.field._reduce(prod, self.den * other.den)

    __rmul__ = __mul__

    def times_zeta(self, k: int) -> "CycNum":
        """Multiply by zeta**k (cheaper than a general product)."""
        f = self.field
        k %= f.M
        if k == 0:
            return self
        d = f.degree
        acc = [0] * d
        for i, c in enumerate(self.num):
            if c:
                row = f._zeta[(i + k) % f.M]
                for j in range(d):
                    if row[j]:
                        acc[j] += c * row[j]
        return CycNum(f, tuple(acc), self.den)

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        acc, base = self.field.one, self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        f = self.field
        a = _poly_trim([Fraction(c, self.den) for c in self.num])
        b = [Fraction(c) for c in f.phi_M]
        # invariant: s0 * a == r0, s1 * a == r1 (mod phi)
        r0, r1 = b, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_mul(s0, q, s1)
        # r0 is a nonzero constant
        g = r0[0]
        inv = [c / g for c in s0]
        _, inv = _poly_divmod_frac(inv, b)
        den = math.lcm(*(c.denominator for c in inv))
        num = [int(c * den) for c in inv] + [0] * (f.degree - len(inv))
        return _normalized(f, num, den)

    def __truediv__(self, other) -> "CycNum":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycNum":
        return self.inverse() * other

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.scalar(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return (self.field.N == other.field.N and self.den == other.den
                and self.num == other.num)

    def __hash__(self) -> int:
        return hash((self.field.N, self.num, self.den))

    # -- structure ------------------------------------------------------
    def conjugate(self) -> "CycNum":
        """Image under zeta -> zeta**(M-1), i.e. complex conjugation."""
        f = self.field
        acc = [0] * f.degree
        for i, c in enumerate(self.num):
            if c:
                row = f._zeta[(-i) % f.M]
                for j in range(f.degree):
                    if row[j]:
                        acc[j] += c * row[j]
        return CycNum(f, tuple(acc), self.den)

    def to_rational(self) -> Optional[Fraction]:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def complex_embed(self, precision_bits: int) -> IvComplex:
        """Rigorous complex interval for the image under zeta -> exp(i*pi/N)."""
        return complex_embed(self, precision_bits)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"CycNum[N={self.field.N}]({body})"


def zeta_power(field: CycField, k: int) -> CycNum:
    return field.zeta_power(k)


def conjugate(a: CycNum) -> CycNum:
    return a.conjugate()


def to_rational(a: CycNum) -> Optional[Fraction]:
    return a.to_rational()


def ring_arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    if a.field.N != b.field.N:
        raise ValueError("field mismatch")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


@lru_cache(maxsize=64)
def _zeta_powers_iv(N: int, bits: int) -> tuple:
    with working_precision(bits):
        out = []
        for k in range(2 * N):
            angle = iv.pi * k / N
            out.append(iv.mpc(iv.cos(angle), iv.sin(angle)))
        return tuple(out)


def complex_embed(a: CycNum, precision_bits: int) -> IvComplex:
    """Enclosure of ``a`` as a complex number, radius about 2**-precision_bits."""
    if precision_bits < 32:
        raise ValueError("precision_bits must be at least 32")
    # guard bits absorb the size of the integer coefficients
    big = max((abs(c) for c in a.num), default=0)
    bits = precision_bits + big.bit_length() + a.field.degree.bit_length() + 8
    powers = _zeta_powers_iv(a.field.N, bits)
    with working_precision(bits):
        acc = iv.mpc(0, 0)
        for i, c in enumerate(a.num):
            if c:
                acc += powers[i] * c
        if a.den != 1:
            acc = acc / a.den
    return acc
