"""Dense univariate polynomials with coefficients in Q(zeta_{2N})."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from mpmath import iv

from .balls import IvComplex, working_precision
from .cyclotomic import CycField, CycNum, complex_embed

Coeff = Union[CycNum, int, Fraction]


class CycPoly:
    """Immutable polynomial sum(coeffs[i] * var**i) with trimmed trailing zeros."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: CycField, coeffs: Iterable[Coeff], var: str = "t"):
        cs = [c if isinstance(c, CycNum) else field.scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs: tuple[CycNum, ...] = tuple(cs)
        self.var = var

    @classmethod
    def constant(cls, field: CycField, c: Coeff, var: str = "t") -> "CycPoly":
        return cls(field, [c], var)

    @classmethod
    def monomial(cls, field: CycField, degree: int, c: Coeff = 1, var: str = "t") -> "CycPoly":
        return cls(field, [0] * degree + [c], var)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> CycNum:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def _lift(self, other) -> "CycPoly":
        if isinstance(other, CycPoly):
            return other
        if isinstance(other, (CycNum, int, Fraction)):
            return CycPoly(self.field, [other], self.var)
        return NotImplemented

    def __add__(self, other) -> "CycPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return CycPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "CycPoly":
        return CycPoly(self.field, [-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "CycPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "CycPoly":
        return (-self) + other

    def __mul__(self, other) -> "CycPoly":
        if isinstance(other, (CycNum, int, Fraction)):
            return CycPoly(self.field, [c * other for c in self.coeffs], self.var)
        if not isinstance(other, CycPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return CycPoly(self.field, [], self.var)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return CycPoly(self.field, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        acc = CycPoly.constant(self.field, 1, self.var)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (CycNum, int, Fraction)):
            other = CycPoly(self.field, [other], self.var)
        if not isinstance(other, CycPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def conjugate(self) -> "CycPoly":
        """Coefficientwise complex conjugate (the polynomial's value at real arguments)."""
        return CycPoly(self.field, [c.conjugate() for c in self.coeffs], self.var)

    def divide_linear(self, root_power: int) -> "CycPoly":
        """Exact quotient by (1 - zeta**root_power * var).

        Raises ``ArithmeticError`` when the division leaves a remainder.
        """
        cs = self.coeffs
        if not cs:
            return self
        # p = (1 - c t) q  =>  q_0 = p_0, q_i = p_i + c q_{i-1}
        q = [cs[0]]
        for i in range(1, len(cs) - 1):
            q.append(cs[i] + q[-1].times_zeta(root_power))
        remainder = cs[-1] + q[-1].times_zeta(root_power) if len(cs) > 1 else cs[0]
        if not remainder.is_zero():
            raise ArithmeticError(
                f"(1 - zeta^{root_power} {self.var}) does not divide the polynomial")
        return CycPoly(self.field, q, self.var)

    def evaluate(self, x: CycNum) -> CycNum:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_ball(self, z, precision_bits: int) -> IvComplex:
        """Horner evaluation at an interval ``z`` (real or complex)."""
        embedded = [complex_embed(c, precision_bits) for c in self.coeffs]
        with working_precision(precision_bits + 32):
            acc = iv.mpc(0, 0)
            for c in reversed(embedded):
                acc = acc * z + c
        return acc

    def __repr__(self) -> str:
        return f"CycPoly[{self.var}, deg={self.degree}]({list(self.coeffs)!r})"


def poly_from_ints(field: CycField, coeffs: Sequence[int], var: str = "t") -> CycPoly:
    return CycPoly(field, list(coeffs), var)
