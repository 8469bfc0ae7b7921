from fractions import Fraction

import pytest

from fermat_sha.bernoulli import (
    EXACT_CAP,
    bernoulli_exact,
    bernoulli_mod_p,
    bernoulli_table,
    irregular_indices,
    is_regular,
    reduce_rational,
)
from fermat_sha.errors import CapExceeded, NotPrime
from fermat_sha.modarith import primes_up_to

PRIMES = [p for p in primes_up_to(101) if p >= 5]


def test_table_examples():
    assert bernoulli_table(7).values == {2: 6, 4: 3}
    assert bernoulli_table(5).values == {2: 1}
    assert bernoulli_table(37).irregular_indices == (32,)
    assert irregular_indices(59) == (44,)
    assert irregular_indices(67) == (58,)


def test_regularity_examples():
    assert is_regular(19) and is_regular(23) and is_regular(5)
    assert not is_regular(37)


def test_exact_examples():
    assert bernoulli_exact(0) == 1
    assert bernoulli_exact(1) == Fraction(-1, 2)
    assert bernoulli_exact(2) == Fraction(1, 6)
    assert bernoulli_exact(12) == Fraction(-691, 2730)
    with pytest.raises(CapExceeded):
        bernoulli_exact(EXACT_CAP + 2)


def test_exact_recurrence_and_odd_vanishing():
    from math import comb
    for n in range(2, 40):
        assert sum(comb(n + 1, j) * bernoulli_exact(j) for j in range(n + 1)) == 0
    assert all(bernoulli_exact(k) == 0 for k in range(3, EXACT_CAP, 2))


@pytest.mark.parametrize("p", PRIMES)
def test_table_matches_exact(p):
    table = bernoulli_table(p)
    for k in range(2, min(p - 3, EXACT_CAP) + 1, 2):
        assert table[k] == reduce_rational(bernoulli_exact(k), p)


@pytest.mark.parametrize("p", [7, 19, 37, 101, 499, 1009])
def test_table_matches_power_sums(p):
    table = bernoulli_table(p)
    assert all(bernoulli_mod_p(k, p) == v for k, v in table.values.items())


@pytest.mark.parametrize("p", [23, 37, 59, 101])
def test_kummer_congruence(p):
    # B_k/k mod p depends only on k mod p-1; compare exact B_k/k for k > p-3
    table = bernoulli_table(p)
    for k in range(2, p - 2, 2):
        k2 = k + (p - 1)
        if k2 > EXACT_CAP:
            break
        lhs = reduce_rational(bernoulli_exact(k2) / k2, p)
        rhs = table[k] * pow(k, -1, p) % p
        assert lhs == rhs


def test_table_rejects_composite():
    with pytest.raises(NotPrime):
        bernoulli_table(21)


def test_known_irregular_primes_below_200():
    irregular = [p for p in primes_up_to(200) if p >= 5 and not is_regular(p)]
    assert irregular == [37, 59, 67, 101, 103, 131, 149, 157]
    assert irregular_indices(157) == (62, 110)
