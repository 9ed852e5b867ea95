import itertools
import math

import pytest
from hypothesis import given, strategies as st

from cpident.cyclotomic import cyc_field
from cpident.identities import (
    I_all,
    I_sum,
    check_corollary,
    check_generating_identity,
    check_lemma1,
    check_lemma2,
    gram_matrix,
    theta,
    theta_closed,
    theta_closed_m0,
    theta_matrix,
    verify_theorem,
)
from cpident.polyform import drinfeld
from cpident.roots import isolate_and_refine

from oracle_values import THETA


def admissible(N, L):
    vecs = list(itertools.product(range(N), repeat=L))
    return [(mu, lam) for mu in vecs for lam in vecs if (sum(mu) - sum(lam)) % N == 0]


@pytest.mark.parametrize("N,L", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_lemma1_exhaustive(N, L):
    for mu, lam in admissible(N, L):
        rep = check_lemma1(N, mu, lam)
        assert rep.passed, (mu, lam, rep.checks)


def test_lemma1_includes_binomial_case():
    rep = check_lemma1(3, (2, 2, 2), (0, 0, 0))
    assert rep.ell == 2 and rep.n == 0
    assert rep.checks["I_kN=binom(ell,k)"]
    assert I_sum(3, (2, 2, 2), (0, 0, 0), 3) == math.comb(2, 1)


def test_lemma1_holds_with_ell_below_n():
    rep = check_lemma1(3, (0, 0, 1), (2, 2, 0))
    assert rep.ell < rep.n
    assert rep.passed


@given(st.integers(2, 4), st.integers(2, 4), st.data())
def test_lemma1_sampled(N, L, data):
    mu = data.draw(st.lists(st.integers(0, N - 1), min_size=L, max_size=L))
    lam = data.draw(st.lists(st.integers(0, N - 1), min_size=L, max_size=L))
    lam[0] = (lam[0] + sum(mu) - sum(lam)) % N
    assert check_lemma1(N, mu, lam).passed
    assert check_generating_identity(N, mu, lam)


def test_I_empty_sum_is_one():
    vals = I_all(3, (1, 2), (2, 1))
    assert vals[0] == cyc_field(3).one


def test_lemma1_rejects_incongruent():
    with pytest.raises(ValueError):
        check_lemma1(3, (1, 0), (0, 0))


@pytest.mark.parametrize("key", sorted(THETA))
def test_theta_matches_float_oracle(key):
    N, L, Q = key
    ref = THETA[key]
    assert theta_matrix(N, L, Q, 1, len(ref)) == ref


def test_theta_anchor_values():
    assert theta(2, 2, 0, 0, 0) == 1
    assert theta(3, 3, 1, 0, 0) == 18
    assert theta(3, 3, 2, 0, 0) == 18


@pytest.mark.parametrize("N,L", [(2, 2), (2, 5), (3, 3), (3, 4), (3, 5), (4, 4)])
def test_lemma2(N, L):
    for Q in range(N):
        rep = check_lemma2(N, L, Q)
        assert rep.passed, rep.failures


@given(st.integers(2, 3), st.integers(2, 6), st.data())
def test_theta_symmetric(N, L, data):
    Q = data.draw(st.integers(0, N - 1))
    th = theta_matrix(N, L, Q)
    assert th == [list(r) for r in zip(*th)]
    dd = drinfeld(N, L, Q)
    assert all(th[l][0] == theta_closed_m0(dd, l, 1) for l in range(len(th)))
    assert all(th[l][m] == theta_closed(dd, l, m) for l in range(len(th)) for m in range(len(th)))


@pytest.mark.parametrize("N,L,Q,diag", [(2, 2, 0, 1), (3, 3, 1, 18), (3, 3, 2, 18)])
def test_gram_anchor(N, L, Q, diag):
    rep = verify_theorem(N, L, Q, 128)
    assert rep.passed
    assert len(rep.matrix) == 1
    assert diag in rep.matrix[0][0]


@pytest.mark.parametrize("N,L", [(2, 4), (3, 3), (3, 4), (4, 4)])
def test_theorem_and_corollary(N, L):
    for Q in range(N):
        dd = drinfeld(N, L, Q)
        rs = isolate_and_refine(dd, 128)
        rep = gram_matrix(dd, rs, 128)
        assert rep.passed, (Q, rep.note)
        if dd.m_Q >= 1:
            cor = check_corollary(dd, rs, 128)
            assert cor.passed


def test_vacuous_instance():
    rep = verify_theorem(2, 2, 1)
    assert rep.dd.m_Q == 0
    assert rep.passed


def test_corollary_needs_distinct_roots():
    from cpident.polyform import DrinfeldData
    dd = DrinfeldData(2, 0, 0, (1, 2, 1))
    with pytest.raises(ValueError):
        check_corollary(dd, isolate_and_refine(dd), 128)


def test_I_sum_small_cases():
    assert I_sum(2, (1, 1), (0, 0), 0) == 1
    assert I_sum(2, (1, 1), (0, 0), 1) == 0
    assert I_sum(2, (1, 1), (0, 0), 2) == 1
    rep = check_lemma1(3, (2, 2, 2), (1, 1, 1))
    assert (rep.ell, rep.n, rep.Q) == (2, 1, 0)
    assert rep.checks["I_N=(ell-n)+Ibar_N"]
