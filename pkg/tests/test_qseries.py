import cmath
import itertools
import math

import pytest
from hypothesis import given, strategies as st

from cpident.cyclotomic import complex_embed, cyc_field
from cpident.cycpoly import CycPoly
from cpident.qseries import (
    J_product,
    Jbar_product,
    admissible_split,
    bracket,
    check_id1,
    check_id1a,
    check_product_identity,
    pochhammer,
    pochhammer_omega_power,
    prefactor_product,
    q_binomial,
    site_offsets,
)


def float_binomial(N, n, r):
    w = cmath.exp(2j * math.pi / N)
    num = den = 1
    for j in range(r):
        num *= 1 - w ** (n - r + 1 + j)
        den *= 1 - w ** (1 + j)
    return num / den


@pytest.mark.parametrize("N", range(2, 7))
def test_binomials_match_float_oracle(N):
    F = cyc_field(N)
    for n in range(2 * N - 1):
        for r in range(N):
            ball = complex_embed(q_binomial(F, n, r), 64)
            ref = float_binomial(N, n, r)
            assert abs(complex(ball.real.mid, ball.imag.mid) - ref) < 1e-9


def test_frozen_binomials_N3():
    F = cyc_field(3)
    w = F.omega_power(1)
    assert q_binomial(F, 2, 1) == 1 + w == -(w * w)
    assert q_binomial(F, 3, 1) == 0          # [3] vanishes at N = 3
    assert q_binomial(F, 4, 2) == 0
    assert q_binomial(F, 1, 2) == 0          # r > n
    assert q_binomial(F, 4, 1) == 1          # [4] = [3] + omega^3


@pytest.mark.parametrize("N", range(2, 7))
def test_bracket_N_vanishes(N):
    F = cyc_field(N)
    assert bracket(F, N).is_zero()
    assert bracket(F, 1) == 1


@pytest.mark.parametrize("N", range(2, 7))
def test_pochhammer_N_minus_1_is_N(N):
    assert pochhammer_omega_power(cyc_field(N), 1, N - 1) == N
    assert pochhammer_omega_power(cyc_field(N), 1, N).is_zero()


@pytest.mark.parametrize("N", range(2, 7))
def test_reflection_identity(N):
    F = cyc_field(N)
    assert all(check_id1(F, n, r) for r in range(N) for n in range(N - r))


@pytest.mark.parametrize("N", range(2, 7))
def test_finite_binomial_theorem(N):
    F = cyc_field(N)
    assert all(check_id1a(F, s) for s in range(N))
    # also at a field element instead of the indeterminate
    x = F.zeta_power(3) + 2
    assert all(check_id1a(F, s, x) for s in range(N))


def test_binomial_domain_errors():
    F = cyc_field(3)
    with pytest.raises(ValueError):
        q_binomial(F, 2, 3)
    with pytest.raises(ValueError):
        q_binomial(F, 5, 1)
    with pytest.raises(ValueError):
        pochhammer(F.one, -1)


def test_site_offsets():
    a, bbar = site_offsets((1, 2, 0), (0, 1, 2))
    assert a == [0, 1, 3]
    assert bbar == [3, 2, 0]


def test_admissible_split():
    assert admissible_split(3, (2, 2, 1), (1, 1, 0)) == (1, 0, 2)
    with pytest.raises(ValueError):
        admissible_split(3, (1, 0), (0, 0))
    with pytest.raises(ValueError):
        admissible_split(3, (0, 0), (2, 1))


def _pairs(N, L):
    vecs = list(itertools.product(range(N), repeat=L))
    for mu in vecs:
        for lam in vecs:
            if (sum(mu) - sum(lam)) % N == 0:
                yield mu, lam


@pytest.mark.parametrize("N,L,expected", [(2, 2, 7), (3, 2, 23), (2, 3, 26), (3, 3, 192)])
def test_product_identity_exhaustive(N, L, expected):
    pairs = [(mu, lam) for mu, lam in _pairs(N, L) if sum(mu) // N >= sum(lam) // N]
    assert len(pairs) == expected
    assert all(check_product_identity(N, mu, lam) for mu, lam in pairs)


@given(st.data())
def test_product_identity_sampled(data):
    N = data.draw(st.integers(2, 4))
    L = data.draw(st.integers(2, 5))
    mu = data.draw(st.lists(st.integers(0, N - 1), min_size=L, max_size=L))
    lam = data.draw(st.lists(st.integers(0, N - 1), min_size=L, max_size=L))
    lam[-1] = (lam[-1] + sum(mu) - sum(lam)) % N
    if sum(mu) // N < sum(lam) // N:
        mu, lam = lam, mu
    assert check_product_identity(N, mu, lam)


def test_product_identity_detects_corruption():
    # a wrong exponent in the (1 + t^N) factor must break equality
    F = cyc_field(3)
    mu, lam = (2, 2, 2), (0, 0, 0)
    lhs = J_product(F, mu, lam)
    wrong = (CycPoly.constant(F, 1) + CycPoly.monomial(F, 3)) * Jbar_product(F, mu, lam)
    assert lhs != wrong


def test_prefactor_is_pochhammer_in_t():
    F = cyc_field(3)
    p = prefactor_product(F, (2, 1, 0), (0, 0, 0))
    assert p.degree == 3
    assert p.coeff(0) == 1
