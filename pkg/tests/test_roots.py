from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from mpmath import iv

from cpident.balls import contains_zero, midrad, working_precision
from cpident.polyform import DrinfeldData, drinfeld
from cpident.roots import (
    certify_roots,
    discriminant,
    isolate_and_refine,
    rational_roots,
    real_root_count,
    resultant,
    sturm_sequence,
)

from oracle_values import ROOTS

x = sympy.Symbol("x")
int_polys = st.lists(st.integers(-9, 9), min_size=2, max_size=6).filter(lambda p: p[-1] != 0)


def _sym(p):
    return sympy.Poly(list(reversed(p)), x)


def _sylvester_det(f, g):
    # determinant of the Sylvester matrix, straight from the definition
    n, m = len(f) - 1, len(g) - 1
    rows = []
    for i in range(m):
        rows.append([0] * i + list(reversed(f)) + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + list(reversed(g)) + [0] * (n - 1 - i))
    return sympy.Matrix(rows).det()


@given(int_polys, int_polys)
def test_resultant_matches_sylvester_determinant(f, g):
    assert resultant(f, g) == _sylvester_det(f, g)


def test_resultant_sign_convention():
    # Res(x + 1, x^3) = g(-1) = -1
    assert resultant([1, 1], [0, 0, 0, 1]) == -1


@given(int_polys)
def test_discriminant_matches_sympy(p):
    assert discriminant(p) == sympy.discriminant(_sym(p))


@given(int_polys)
def test_sturm_count_matches_sympy(p):
    assert real_root_count(p) == len(set(sympy.real_roots(_sym(p))))
    assert len(sturm_sequence(p)) >= 1


def test_rational_roots():
    # (2x + 1)(x - 3)(x^2 + 1)
    p = [-3, -5, -1, -5, 2]
    assert rational_roots(p) == [Fraction(-1, 2), Fraction(3)]


@pytest.mark.parametrize("key", [k for k in sorted(ROOTS) if ROOTS[k][1]])
def test_roots_against_float_oracle(key):
    N, L, Q = key
    _, zs, Bs = ROOTS[key]
    rs = isolate_and_refine(drinfeld(N, L, Q), 128)
    assert rs.real_count == len(zs) and rs.distinct and rs.all_real
    for z, ref in zip(rs.roots, zs):
        assert abs(float(midrad(z)[0]) - ref) < 1e-9 * max(1.0, abs(ref))
        assert midrad(z)[1] < 2.0 ** -120
        assert not contains_zero(z)
    for b, ref in zip(rs.B, Bs):
        assert abs(float(midrad(b)[0]) - ref) < 1e-7 * abs(ref)


def test_spec_root_examples():
    rs = isolate_and_refine(drinfeld(3, 3, 1), 128)
    assert rs.exact == (Fraction(-1, 2),)
    assert 0 in rs.B[0] + 18
    rs = isolate_and_refine(drinfeld(3, 3, 2), 128)
    assert rs.exact == (Fraction(-2),)
    assert 0 in rs.B[0] + 18
    rs = isolate_and_refine(drinfeld(2, 2, 0), 128)
    assert rs.exact == (Fraction(-1),)
    assert 0 in rs.B[0] + 1
    assert isolate_and_refine(drinfeld(3, 3, 0), 128).discriminant == 45
    assert isolate_and_refine(drinfeld(2, 4, 0), 128).discriminant == 32


def test_constant_polynomial():
    dd = drinfeld(2, 2, 1)
    assert dd.m_Q == 0
    rs = isolate_and_refine(dd)
    assert rs.roots == () and rs.all_real
    with pytest.raises(ValueError):
        certify_roots(dd)


def test_multiple_root_is_flagged():
    dd = DrinfeldData(2, 0, 0, (1, 2, 1))
    rs = isolate_and_refine(dd)
    assert not rs.distinct
    assert rs.multiplicity == (2, 2)
    assert all(b == 0 for b in rs.B)


def test_irrational_multiple_root():
    # (x^2 + 3x + 1)^2 (x + 2)
    p = sympy.Poly((x**2 + 3 * x + 1) ** 2 * (x + 2), x)
    dd = DrinfeldData(2, 0, 0, tuple(int(c) for c in reversed(p.all_coeffs())))
    rs = isolate_and_refine(dd)
    assert sorted(rs.multiplicity) == [1, 2, 2, 2, 2]
    assert len(rs.roots) == 5


def _vieta_check(dd, rs):
    lam = dd.Lambda
    m = dd.m_Q
    with working_precision(256):
        s = sum(rs.roots, iv.mpf(0))
        prod = iv.mpf(1)
        for z in rs.roots:
            prod *= z
        assert 0 in s + iv.mpf(lam[m - 1]) / lam[m]
        assert 0 in prod - iv.mpf((-1) ** m * lam[0]) / lam[m]
        # product of B_k in closed form
        pb = iv.mpf(1)
        for b in rs.B:
            pb *= b
        expected = Fraction((-1) ** m * lam[0] * rs.discriminant ** 2) * Fraction(lam[m]) ** (3 - 2 * m)
        assert 0 in pb - iv.mpf(expected.numerator) / expected.denominator


@given(st.integers(2, 4), st.integers(2, 7), st.data())
def test_vieta_and_B_product(N, L, data):
    Q = data.draw(st.integers(0, N - 1))
    dd = drinfeld(N, L, Q)
    if dd.m_Q < 1:
        return
    rs = isolate_and_refine(dd, 128)
    assert rs.real_count == dd.m_Q and rs.distinct
    _vieta_check(dd, rs)


def test_reconstruction_from_roots():
    dd = drinfeld(4, 4, 0)
    rs = isolate_and_refine(dd, 128)
    with working_precision(256):
        poly = [iv.mpf(dd.Lambda[-1])]
        for z in rs.roots:
            shifted = [iv.mpf(0)] + poly
            for i, c in enumerate(poly):
                shifted[i] = shifted[i] - c * z
            poly = shifted
        for c, ref in zip(poly, dd.Lambda):
            assert ref in c
