"""Bounded compositions (n_1, ..., n_L), 0 <= n_j <= N-1, and brute-force L-fold sums.

A composition is represented as a plain tuple of ints.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .cyclotomic import CycField, CycNum

Composition = tuple[int, ...]


def enumerate_compositions(L: int, N: int, m: int) -> Iterator[Composition]:
    """Yield every composition of ``m`` into ``L`` parts in [0, N-1], lexicographically.

    Out-of-range ``m`` gives an empty stream.
    """
    if L < 1 or N < 2:
        raise ValueError("need L >= 1 and N >= 2")
    top = N - 1
    if not 0 <= m <= top * L:
        return
    parts = [0] * L
    _fill_smallest(parts, 0, m, top)
    while True:
        yield tuple(parts)
        # rightmost position that can grow while something to its right can shrink
        suffix = 0
        i = L - 1
        while i >= 0:
            if suffix > 0 and parts[i] < top:
                break
            suffix += parts[i]
            i -= 1
        if i < 0:
            return
        parts[i] += 1
        _fill_smallest(parts, i + 1, suffix - 1, top)


def _fill_smallest(parts: list[int], start: int, total: int, top: int) -> None:
    # lexicographically smallest tail: pack the mass to the right
    for j in range(len(parts) - 1, start - 1, -1):
        take = min(top, total)
        parts[j] = take
        total -= take


def first_part_chunks(L: int, N: int, m: int) -> list[int]:
    """Admissible values of n_1; each defines a contiguous block of the enumeration."""
    return [f for f in range(min(N - 1, m) + 1) if m - f <= (N - 1) * (L - 1)]


def enumerate_chunk(L: int, N: int, m: int, first: int) -> Iterator[Composition]:
    """Compositions whose first part equals ``first``, in lexicographic order."""
    if L == 1:
        if first == m and 0 <= m <= N - 1:
            yield (m,)
        return
    for rest in enumerate_compositions(L - 1, N, m - first):
        yield (first,) + rest


@dataclass(frozen=True)
class PrefixData:
    """Prefix and suffix sums of a composition, 0-based.

    ``Nj[j]`` is the sum of parts before position j (length L+1, last entry
    the total); ``Nbar[j]`` the sum of parts after position j (length L).
    """

    Nj: tuple[int, ...]
    Nbar: tuple[int, ...]

    @property
    def total(self) -> int:
        return self.Nj[-1]


def prefix_data(c: Sequence[int]) -> PrefixData:
    Nj = [0]
    for x in c:
        Nj.append(Nj[-1] + x)
    total = Nj[-1]
    Nbar = tuple(total - Nj[j + 1] for j in range(len(c)))
    return PrefixData(tuple(Nj), Nbar)


def count_cm(L: int, N: int) -> list[int]:
    """Coefficients c_0..c_{(N-1)L} of (1 + t + ... + t^(N-1))^L."""
    if L < 1 or N < 2:
        raise ValueError("need L >= 1 and N >= 2")
    c = [1]
    for _ in range(L):
        out = [0] * (len(c) + N - 1)
        for i, x in enumerate(c):
            for k in range(N):
                out[i + k] += x
        c = out
    return c


def _lift(field: CycField, value: CycNum, scale: int) -> list[int]:
    # representative in Z[x]/(x^M - 1) of value * scale
    vec = [0] * field.M
    for i, c in enumerate(value.num):
        vec[i] = c * (scale // value.den)
    return vec


def lfold_sums(
    field: CycField,
    tables: Sequence[Sequence[CycNum]],
    row_phase: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> list[CycNum]:
    """Brute-force sums S_m = sum over (n_1..n_L) with sum m of prod_j tables[j][n_j].

    Every term of the L-fold sum is formed explicitly (terms whose factor is
    exactly zero are skipped). ``row_phase`` maps the (rows x L) matrix of
    indices to integer zeta exponents multiplying each term.

    Returns the list S_0, ..., S_{sum of max indices}.
    """
    M = field.M
    L = len(tables)
    choices, vectors, scales = [], [], []
    for tab in tables:
        nz = [i for i, v in enumerate(tab) if not v.is_zero()]
        scale = 1
        for i in nz:
            scale = math.lcm(scale, tab[i].den)
        choices.append(nz)
        scales.append(scale)
        vectors.append([_lift(field, tab[i], scale) for i in nz])
    width = sum(len(t) - 1 for t in tables)
    if any(not c for c in choices):
        return [field.zero] * (width + 1)

    rows = 1
    bound = 1
    for ch, vs in zip(choices, vectors):
        rows *= len(ch)
        bound *= max(sum(abs(x) for x in v) for v in vs)
    dtype = np.int64 if bound * rows < 2**62 else object

    acc = np.zeros((1, M), dtype=dtype)
    acc[0, 0] = 1
    idx = np.zeros((1, 0), dtype=np.int64)
    for ch, vs in zip(choices, vectors):
        blocks, idx_blocks = [], []
        for c, v in zip(ch, vs):
            circ = np.empty((M, M), dtype=dtype)
            for a in range(M):
                circ[a] = np.roll(v, a)
            blocks.append(acc @ circ)
            idx_blocks.append(np.hstack([idx, np.full((idx.shape[0], 1), c, dtype=np.int64)]))
        acc = np.vstack(blocks)
        idx = np.vstack(idx_blocks)

    if row_phase is not None:
        shifts = np.asarray(row_phase(idx), dtype=np.int64) % M
        rolled = np.empty_like(acc)
        for s in np.unique(shifts):
            sel = shifts == s
            rolled[sel] = np.roll(acc[sel], int(s), axis=1)
        acc = rolled

    totals = idx.sum(axis=1) if L else np.zeros(1, dtype=np.int64)
    den = 1
    for s in scales:
        den *= s
    out = []
    for m in range(width + 1):
        sel = totals == m
        if not sel.any():
            out.append(field.zero)
            continue
        vec = acc[sel].sum(axis=0)
        out.append(field.from_group_ring([int(x) for x in vec], den))
    return out


def all_vectors(L: int, N: int) -> Iterator[tuple[int, ...]]:
    """All of [0, N-1]^L, lexicographic."""
    return itertools.product(range(N), repeat=L)
