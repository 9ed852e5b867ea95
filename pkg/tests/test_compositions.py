import itertools

import pytest
from hypothesis import given, strategies as st

from cpident.compositions import (
    count_cm,
    enumerate_chunk,
    enumerate_compositions,
    first_part_chunks,
    prefix_data,
)


def naive(L, N, m):
    return [c for c in itertools.product(range(N), repeat=L) if sum(c) == m]


@pytest.mark.parametrize("N,L", [(2, 1), (2, 5), (3, 4), (4, 3), (5, 3)])
def test_enumeration_matches_filter(N, L):
    for m in range(-1, (N - 1) * L + 2):
        assert list(enumerate_compositions(L, N, m)) == naive(L, N, m)


@given(st.integers(2, 5), st.integers(1, 6))
def test_counts_are_polynomial_coefficients(N, L):
    c = count_cm(L, N)
    assert [sum(1 for _ in enumerate_compositions(L, N, m)) for m in range(len(c))] == c
    assert c == c[::-1]
    assert sum(c) == N ** L


@given(st.integers(2, 4), st.integers(1, 5), st.data())
def test_chunks_partition_the_stream(N, L, data):
    m = data.draw(st.integers(0, (N - 1) * L))
    joined = []
    for first in first_part_chunks(L, N, m):
        joined.extend(enumerate_chunk(L, N, m, first))
    assert joined == list(enumerate_compositions(L, N, m))


@given(st.lists(st.integers(0, 6), min_size=1, max_size=8))
def test_prefix_identity(c):
    pd = prefix_data(c)
    total = sum(c)
    assert pd.total == total
    for j in range(len(c)):
        assert pd.Nj[j] + c[j] + pd.Nbar[j] == total


def test_invalid_arguments():
    with pytest.raises(ValueError):
        list(enumerate_compositions(0, 3, 1))
    with pytest.raises(ValueError):
        count_cm(2, 1)
