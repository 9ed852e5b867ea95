import math

import pytest
from hypothesis import given, strategies as st

from cpident.compositions import enumerate_compositions
from cpident.cyclotomic import complex_embed
from cpident.polyform import (
    G_poly,
    K_brute,
    K_brute_all,
    K_via_g,
    counting_polynomial,
    drinfeld,
    gen_g,
    m_Q,
)

from oracle_values import K_VALUES, ROOTS


def _as_complex(x):
    b = complex_embed(x, 64)
    return complex(b.real.mid, b.imag.mid)


@pytest.mark.parametrize("key", sorted(K_VALUES))
def test_K_matches_float_oracle(key):
    N, c = key
    K_ref, Kbar_ref = K_VALUES[key]
    for variant, ref in (("K", K_ref), ("Kbar", Kbar_ref)):
        vals = K_brute_all(c, N, variant)
        assert len(vals) == len(ref)
        for v, (re, im) in zip(vals, ref):
            assert abs(_as_complex(v) - complex(re, im)) < 1e-9


@pytest.mark.parametrize("N,L", [(2, 3), (3, 3), (3, 4), (4, 3)])
def test_two_routes_agree(N, L):
    for c in enumerate_compositions(L, N, N):
        tab = K_via_g(c, N)
        brute = K_brute_all(c, N, "K")
        brute_bar = K_brute_all(c, N, "Kbar")
        for m in range(len(brute)):
            assert K_brute(c, m, N) == brute[m]
            g = tab.K[m] if m < len(tab.K) else 0
            gb = tab.Kbar[m] if m < len(tab.Kbar) else 0
            assert brute[m] == g
            assert brute_bar[m] == gb
            assert brute_bar[m] == brute[m].conjugate()


@pytest.mark.parametrize("N,L,k", [(2, 4, 2), (3, 4, 2), (3, 5, 2)])
def test_two_routes_agree_higher_k(N, L, k):
    for c in enumerate_compositions(L, N, k * N):
        tab = K_via_g(c, N)
        brute = K_brute_all(c, N, "K")
        assert list(tab.K) + [0] * (len(brute) - len(tab.K)) == brute


def test_gen_g_degree_and_errors():
    g = gen_g((1, 1, 1), 3)
    assert g.degree == 2 * 3 - 3
    with pytest.raises(ValueError):
        gen_g((1, 1), 3)
    with pytest.raises(ValueError):
        gen_g((3, 0), 3)
    with pytest.raises(ValueError):
        gen_g((1, 2), 3, "other")


@pytest.mark.parametrize("key", sorted(ROOTS))
def test_drinfeld_coefficients(key):
    N, L, Q = key
    dd = drinfeld(N, L, Q)
    assert list(dd.Lambda) == ROOTS[key][0]
    assert dd.m_Q == m_Q(N, L, Q)
    assert dd.value(1) == N ** (L - 1)


@given(st.integers(2, 5), st.integers(1, 8))
def test_drinfeld_sums(N, L):
    total = sum(drinfeld(N, L, Q).value(1) for Q in range(N))
    assert total == N ** L
    for Q in range(N):
        assert drinfeld(N, L, Q).value(1) == N ** (L - 1)


def test_drinfeld_rejects_bad_Q():
    with pytest.raises(ValueError):
        drinfeld(3, 3, 3)


def test_counting_polynomial():
    p = counting_polynomial(3, 2)
    assert [int(p.coeff(i).to_rational()) for i in range(p.degree + 1)] == [1, 2, 3, 2, 1]


@pytest.mark.parametrize("N,L,Q", [(3, 3, 0), (3, 4, 1), (2, 4, 0), (4, 4, 2)])
def test_G_degree_bound(N, L, Q):
    for c in enumerate_compositions(L, N, N):
        G = G_poly(c, N, Q)
        Gb = G_poly(c, N, Q, "Gbar")
        assert G.degree <= m_Q(N, L, Q) - 1
        assert Gb == G.conjugate()
        assert G.coeff(0) == K_via_g(c, N).K[Q]


def test_binomial_zero_at_composition_boundary():
    # a part equal to N-1 still gives a valid K table
    c = (2, 1, 0)
    assert sum(1 for _ in K_brute_all(c, 3)) == 7
    assert math.isclose(abs(_as_complex(K_brute(c, 0, 3))), 1.0)
