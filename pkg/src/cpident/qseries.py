"""omega-deformed integers, binomials and Pochhammer symbols at omega = exp(2*pi*i/N).

Also the terminating basic hypergeometric polynomials used to generate the
sums I_m and Ibar_m, and the product identity relating them.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence, Union

from .cyclotomic import CycField, CycNum, cyc_field
from .cycpoly import CycPoly


def _field(field_or_N: Union[CycField, int]) -> CycField:
    return field_or_N if isinstance(field_or_N, CycField) else cyc_field(field_or_N)


def bracket(field: Union[CycField, int], n: int) -> CycNum:
    """[n] = 1 + omega + ... + omega**(n-1)."""
    field = _field(field)
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = field.zero
    for i in range(n):
        acc = acc + field.omega_power(i)
    return acc


def pochhammer(x, s: int, field: Union[CycField, int, None] = None):
    """(x; omega)_s = prod_{j<s} (1 - x omega**j) for a CycNum or CycPoly ``x``."""
    if s < 0:
        raise ValueError("negative Pochhammer length")
    field = _field(field) if field is not None else x.field
    if isinstance(x, CycPoly):
        acc = CycPoly.constant(field, 1, x.var)
        for j in range(s):
            shifted = CycPoly(field, [c.times_zeta(2 * j) for c in x.coeffs], x.var)
            acc = acc * (1 - shifted)
        return acc
    if not isinstance(x, CycNum):
        x = field.scalar(x)
    acc = field.one
    for j in range(s):
        acc = acc * (1 - x.times_zeta(2 * j))
    return acc


def pochhammer_omega_power(field: CycField, e: int, s: int) -> CycNum:
    """(omega**e; omega)_s."""
    return _poch_power(field.N, e % field.N, s)


@lru_cache(maxsize=None)
def _poch_power(N: int, e: int, s: int) -> CycNum:
    field = cyc_field(N)
    return pochhammer(field.omega_power(e), s, field)


class QBinomialTable:
    """Precomputed [n] and omega-binomials [n over r] for 0 <= n <= 2N-2, 0 <= r <= N-1."""

    def __init__(self, field: Union[CycField, int]):
        field = _field(field)
        self.field = field
        N = field.N
        self.bracket = tuple(bracket(field, n) for n in range(2 * N - 1))
        rows = []
        for n in range(2 * N - 1):
            rows.append(tuple(_binomial_from_pochhammer(field, n, r) for r in range(N)))
        self.binom = tuple(rows)

    def __call__(self, n: int, r: int) -> CycNum:
        return self.binom[n][r]


def _binomial_from_pochhammer(field: CycField, n: int, r: int) -> CycNum:
    top = pochhammer_omega_power(field, 1 + n - r, r)
    if top.is_zero():
        return field.zero
    return top / pochhammer_omega_power(field, 1, r)


@lru_cache(maxsize=None)
def binomial_table(N: int) -> QBinomialTable:
    return QBinomialTable(cyc_field(N))


def q_binomial(field: Union[CycField, int], n: int, r: int) -> CycNum:
    """omega-binomial [n over r] from the Pochhammer-ratio form.

    Zero when r > n. The factorial form would be 0/0 whenever [N] appears in
    both numerator and denominator, so it is never used.
    """
    field = _field(field)
    N = field.N
    if not 0 <= r <= N - 1:
        raise ValueError(f"r={r} outside [0, N-1]; (omega;omega)_r vanishes")
    if not 0 <= n <= 2 * N - 2:
        raise ValueError(f"n={n} outside [0, 2N-2]")
    return binomial_table(N)(n, r)


def check_id1(field: Union[CycField, int], n: int, r: int) -> bool:
    """Reflection identity [n+r over r] = (-1)^r omega^(nr + r(r+1)/2) [N-1-n over r]."""
    field = _field(field)
    N = field.N
    lhs = q_binomial(field, n + r, r)
    sign = -1 if r % 2 else 1
    rhs = q_binomial(field, N - 1 - n, r).times_zeta(2 * (n * r + r * (r + 1) // 2)) * sign
    return lhs == rhs


def check_id1a(field: Union[CycField, int], s: int, x=None) -> bool:
    """sum_r [s over r] (-1)^r omega^(r(r-1)/2) x^r == (x; omega)_s.

    ``x`` defaults to the indeterminate t.
    """
    field = _field(field)
    if x is None:
        x = CycPoly.monomial(field, 1)
    one = CycPoly.constant(field, 1, x.var) if isinstance(x, CycPoly) else field.one
    lhs = one * 0
    power = one
    for r in range(s + 1):
        term = q_binomial(field, s, r).times_zeta(r * (r - 1))
        lhs = lhs + power * (term if r % 2 == 0 else -term)
        power = power * x
    return lhs == pochhammer(x, s, field)


@lru_cache(maxsize=None)
def _phi21_coeff(N: int, e1: int, e2: int, n: int) -> CycNum:
    """(omega^e1;omega)_n (omega^e2;omega)_n / (omega;omega)_n^2."""
    field = cyc_field(N)
    num = _poch_power(N, e1 % N, n) * _poch_power(N, e2 % N, n)
    if num.is_zero():
        return field.zero
    den = _poch_power(N, 1, n)
    return num / (den * den)


def _terminating_phi21(field: CycField, e1: int, e2: int, arg_zeta: int, top: int) -> CycPoly:
    # sum_n coeff(n) * (zeta^arg_zeta * t)^n for n = 0..top
    cs = [_phi21_coeff(field.N, e1, e2, n).times_zeta(n * arg_zeta) for n in range(top + 1)]
    return CycPoly(field, cs, "t")


def eval_J(field: Union[CycField, int], mu: int, lam: int, a: int, bbar: int) -> CycPoly:
    """J_j(t) with upper parameters omega^-mu, omega^(1+lam), lower omega,
    argument t * omega^(1/2 + mu + a + bbar)."""
    field = _field(field)
    _check_site(field, mu, lam)
    return _terminating_phi21(field, -mu, 1 + lam, 1 + 2 * (mu + a + bbar), mu)


def eval_Jbar(field: Union[CycField, int], mu: int, lam: int, a: int, bbar: int) -> CycPoly:
    """Jbar_j(t) with upper parameters omega^(1+mu), omega^-lam, lower omega,
    argument t * omega^(1/2 + lam + a + bbar)."""
    field = _field(field)
    _check_site(field, mu, lam)
    return _terminating_phi21(field, 1 + mu, -lam, 1 + 2 * (lam + a + bbar), lam)


def _check_site(field: CycField, mu: int, lam: int) -> None:
    if not (0 <= mu <= field.N - 1 and 0 <= lam <= field.N - 1):
        raise ValueError("site parameters must lie in [0, N-1]")


def site_offsets(mu: Sequence[int], lam: Sequence[int]) -> tuple[list[int], list[int]]:
    """a_j = sum_{l<j} mu_l and bbar_j = sum_{l>j} lam_l (0-based j)."""
    L = len(mu)
    a = [sum(mu[:j]) for j in range(L)]
    bbar = [sum(lam[j + 1:]) for j in range(L)]
    return a, bbar


def admissible_split(N: int, mu: Sequence[int], lam: Sequence[int]) -> tuple[int, int, int]:
    """Return (ell, n, Q) with sum(mu) = ell*N + Q and sum(lam) = n*N + Q.

    Raises ``ValueError`` when the sums are not congruent mod N, a part is out
    of range, or ell < n.
    """
    if len(mu) != len(lam) or not mu:
        raise ValueError("mu and lam must be nonempty and of equal length")
    if any(not 0 <= x <= N - 1 for x in list(mu) + list(lam)):
        raise ValueError("parts must lie in [0, N-1]")
    smu, slam = sum(mu), sum(lam)
    if (smu - slam) % N:
        raise ValueError(f"sum(mu)={smu} and sum(lam)={slam} differ mod N={N}")
    Q = smu % N
    ell, n = smu // N, slam // N
    if ell < n:
        raise ValueError(f"ell={ell} < n={n}")
    return ell, n, Q


def J_product(field: Union[CycField, int], mu: Sequence[int], lam: Sequence[int]) -> CycPoly:
    field = _field(field)
    a, bbar = site_offsets(mu, lam)
    acc = CycPoly.constant(field, 1)
    for j in range(len(mu)):
        acc = acc * eval_J(field, mu[j], lam[j], a[j], bbar[j])
    return acc


def Jbar_product(field: Union[CycField, int], mu: Sequence[int], lam: Sequence[int]) -> CycPoly:
    field = _field(field)
    a, bbar = site_offsets(mu, lam)
    acc = CycPoly.constant(field, 1)
    for j in range(len(mu)):
        acc = acc * eval_Jbar(field, mu[j], lam[j], a[j], bbar[j])
    return acc


def check_product_identity(field: Union[CycField, int], mu: Sequence[int], lam: Sequence[int]) -> bool:
    """prod_j J_j(t) == (1 + t^N)^(ell - n) * prod_j Jbar_j(t), exactly."""
    field = _field(field)
    ell, n, _ = admissible_split(field.N, mu, lam)
    lhs = J_product(field, mu, lam)
    factor = (CycPoly.constant(field, 1) + CycPoly.monomial(field, field.N)) ** (ell - n)
    rhs = factor * Jbar_product(field, mu, lam)
    return lhs == rhs


def prefactor_product(field: Union[CycField, int], mu: Sequence[int], lam: Sequence[int]) -> CycPoly:
    """(omega^(1/2 + bbar_0) t; omega)_(sum mu - sum lam), the telescoped prefactor.

    Requires sum(mu) >= sum(lam).
    """
    field = _field(field)
    length = sum(mu) - sum(lam)
    if length < 0:
        raise ValueError("sum(mu) < sum(lam)")
    x = CycPoly.monomial(field, 1, field.zeta_power(1 + 2 * sum(lam)))
    return pochhammer(x, length, field)
