"""Thin helpers around :mod:`mpmath.iv` interval arithmetic.

Intervals from ``mpmath.iv`` are rounded outward, so every value computed
with them is a rigorous enclosure. The rest of the package talks about
"balls"; a ball here is simply an ``ivmpf``/``ivmpc`` together with the
midpoint/radius view returned by :func:`midrad`.
"""

from __future__ import annotations

import contextlib
from fractions import Fraction
from typing import Iterator, Union

import mpmath
from mpmath import iv
from mpmath.libmp import mpf_add, mpf_mul, mpf_sub

IvReal = type(iv.mpf(0))
IvComplex = type(iv.mpc(0, 0))
Interval = Union[IvReal, IvComplex]

_HALF = mpmath.mpf(0.5)._mpf_


@contextlib.contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """Temporarily set the interval context precision to ``bits``."""
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def from_rational(q: Union[int, Fraction]) -> IvReal:
    """Tightest interval around ``q`` at the current precision."""
    q = Fraction(q)
    if q.denominator == 1:
        return iv.mpf(q.numerator)
    return iv.mpf(q.numerator) / q.denominator


def hull(lo: IvReal, hi: IvReal) -> IvReal:
    """Smallest interval containing both ``lo`` and ``hi``."""
    a = min(lo._mpi_[0], hi._mpi_[0], key=mpmath.mp.make_mpf)
    b = max(lo._mpi_[1], hi._mpi_[1], key=mpmath.mp.make_mpf)
    return iv.mpf((mpmath.mp.make_mpf(a), mpmath.mp.make_mpf(b)))


def endpoints(x: IvReal) -> tuple[mpmath.mpf, mpmath.mpf]:
    lo, hi = x._mpi_
    return mpmath.mp.make_mpf(lo), mpmath.mp.make_mpf(hi)


def intersect(x: IvReal, y: IvReal) -> IvReal | None:
    """Intersection of two real intervals, ``None`` if empty."""
    xa, xb = endpoints(x)
    ya, yb = endpoints(y)
    lo, hi = max(xa, ya), min(xb, yb)
    if lo > hi:
        return None
    return iv.mpf((lo, hi))


def _radius_real(x: IvReal) -> tuple:
    lo, hi = x._mpi_
    # mid may be rounded; the radius is rounded up from whatever mid is
    prec = 2 * max(iv.prec, 53) + 64
    mid = mpf_mul(mpf_add(lo, hi, prec), _HALF, prec)
    r1 = mpf_sub(hi, mid, 53, "u")
    r2 = mpf_sub(mid, lo, 53, "u")
    return mid, max(r1, r2, key=mpmath.mp.make_mpf)


def midrad(x: Interval) -> tuple:
    """Midpoint and radius of an interval.

    For complex intervals the radius bounds the distance from the midpoint
    to any point of the rectangle (the half-diagonal).
    """
    if isinstance(x, IvComplex):
        mre, rre = _radius_real(x.real)
        mim, rim = _radius_real(x.imag)
        rre, rim = mpmath.mp.make_mpf(rre), mpmath.mp.make_mpf(rim)
        with mpmath.workprec(53):
            rad = mpmath.fadd(mpmath.fabs(rre), mpmath.fabs(rim), rounding="u")
        return mpmath.mpc(mpmath.mp.make_mpf(mre), mpmath.mp.make_mpf(mim)), rad
    mid, rad = _radius_real(x)
    return mpmath.mp.make_mpf(mid), mpmath.mp.make_mpf(rad)


def radius(x: Interval) -> mpmath.mpf:
    return midrad(x)[1]


def contains_zero(x: Interval) -> bool:
    return 0 in x


def magnitude(x: Interval) -> mpmath.mpf:
    """Upper bound for ``|x|``."""
    if isinstance(x, IvComplex):
        _, hi = endpoints(abs(x))
        return hi
    lo, hi = endpoints(x)
    return max(abs(lo), abs(hi))


def to_decimal(x, digits: int = 40) -> str:
    """Decimal string of a number, or of the midpoint of an interval."""
    if isinstance(x, (iv.mpf, iv.mpc)):
        x = midrad(x)[0]
    return mpmath.nstr(x, digits, min_fixed=-5, max_fixed=20)
