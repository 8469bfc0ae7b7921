"""Bernoulli numbers mod p, regularity, and an exact-rational oracle.

``bernoulli_table`` runs the recurrence

    B_m = -(m+1)^{-1} * sum_{j<m} C(m+1, j) B_j

entirely in F_p for m <= p-3, where every B_j involved is p-integral and
m+1 < p is invertible.  Each step is one vectorized dot product against an
incrementally updated Pascal row, so a table costs O(p) numpy calls of
length O(p).  That stays cheap up to p ~ 2e4; past that a power-sum or
Voronoi method that produces single indices wins when only a few B_k are
needed (see ``bernoulli_mod_p``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import CapExceeded
from .modarith import OddPrime

EXACT_CAP = 60
# dot products of p-residues over <= p terms must stay below 2^63
TABLE_P_MAX = 100_000
# vectorized powers mod p^2 multiply two residues < p^2
POWERSUM_P_MAX = 55_000


@dataclass(frozen=True)
class BernoulliTable:
    p: int
    values: dict
    irregular_indices: tuple

    @property
    def is_regular(self) -> bool:
        return not self.irregular_indices

    def __getitem__(self, k: int) -> int:
        return self.values[k]


def _inverses_mod_p(n: int, p: int) -> list[int]:
    inv = [0, 1] + [0] * (n - 1)
    for i in range(2, n + 1):
        inv[i] = (p - (p // i) * inv[p % i] % p) % p
    return inv


def bernoulli_table(p: int) -> BernoulliTable:
    p = OddPrime(p)
    if p > TABLE_P_MAX:
        raise CapExceeded(f"bernoulli_table supports p <= {TABLE_P_MAX}")
    top = p - 3
    inv = _inverses_mod_p(top + 1, p)
    B = np.zeros(top + 1, dtype=np.int64)
    B[0] = 1
    row = np.zeros(top + 3, dtype=np.int64)  # row[j] = C(m+1, j) mod p
    row[:3] = (1, 2, 1)
    for m in range(1, top + 1):
        s = int(np.dot(row[:m], B[:m])) % p
        B[m] = (-s * inv[m + 1]) % p
        row[1 : m + 3] = (row[1 : m + 3] + row[: m + 2]) % p
    odd = B[3::2]
    if odd.any():
        j = 3 + 2 * int(np.flatnonzero(odd)[0])
        raise AssertionError(f"odd Bernoulli B_{j} came out nonzero mod {p}")
    values = {k: int(B[k]) for k in range(2, top + 1, 2)}
    irregular = tuple(k for k, v in values.items() if v == 0)
    return BernoulliTable(p=int(p), values=values, irregular_indices=irregular)


def is_regular(p: int) -> bool:
    return bernoulli_table(p).is_regular


def irregular_indices(p: int) -> tuple:
    return bernoulli_table(p).irregular_indices


@lru_cache(maxsize=None)
def _exact_list(n: int) -> tuple:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return tuple(B)


def bernoulli_exact(k: int) -> Fraction:
    """Exact B_k (with B_1 = -1/2) for 0 <= k <= 60."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > EXACT_CAP:
        raise CapExceeded(f"bernoulli_exact is capped at k <= {EXACT_CAP}")
    return _exact_list(EXACT_CAP)[k]


def reduce_rational(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def bernoulli_mod_p(k: int, p: int) -> int:
    """B_k mod p for even 2 <= k <= p-3, from sum_{j<p} j^k = p*B_k mod p^2.

    Independent of the recurrence, and O(p log k) rather than O(p^2).
    """
    p = OddPrime(p)
    if k % 2 or not 2 <= k <= p - 3:
        raise ValueError(f"need even k in [2, {p - 3}], got {k}")
    if p > POWERSUM_P_MAX:
        raise CapExceeded(f"bernoulli_mod_p supports p <= {POWERSUM_P_MAX}")
    m = p * p
    base = np.arange(1, p, dtype=np.int64)
    acc = np.ones_like(base)
    e = k
    while e:
        if e & 1:
            acc = acc * base % m
        base = base * base % m
        e >>= 1
    total = int(acc.sum()) % m  # p terms below p^2: no overflow
    if total % p:
        raise AssertionError(f"power sum not divisible by {p}")
    return total // p
