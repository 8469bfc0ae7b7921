import pytest
from hypothesis import given, settings, strategies as st

from fermat_sha.errors import DivisibleByP, InvalidTriple, NotInvertible, NotPrime
from fermat_sha.modarith import (
    OddPrime,
    fermat_quotient,
    fermat_quotient_of_power_product,
    fermat_quotient_of_power_product_direct,
    is_prime,
    legendre_symbol,
    mod_inv,
    mod_pow,
    primes_up_to,
)

SMALL_PRIMES = [p for p in primes_up_to(101) if p >= 5]


def test_mod_pow_examples():
    assert mod_pow(2, 4, 25) == 16
    assert mod_pow(12345, 0, 7) == 1
    v = mod_pow(7, 19 * 18, 19**2)
    assert v % 19 == 1
    assert v == pow(7, 342, 361)


def test_mod_inv_examples():
    assert mod_inv(1, 13) == 1
    assert mod_inv(6, 7) == 6
    with pytest.raises(NotInvertible):
        mod_inv(5, 10)


def test_legendre_examples():
    assert legendre_symbol(4, 19) == 1
    assert legendre_symbol(0, 19) == 0
    assert legendre_symbol(5, 7) == -1


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_legendre_multiplicative(p):
    for x in range(p):
        for y in range(0, p, 3):
            assert legendre_symbol(x * y, p) == legendre_symbol(x, p) * legendre_symbol(y, p)
    assert sum(legendre_symbol(x, p) for x in range(1, p)) == 0


def test_fermat_quotient_examples():
    assert fermat_quotient(1, 7) == 0
    assert fermat_quotient(2, 5) == 3
    assert fermat_quotient(2, 7) == 2
    assert fermat_quotient(2, 1093) == 0
    with pytest.raises(DivisibleByP):
        fermat_quotient(14, 7)


def test_power_product_examples():
    assert fermat_quotient_of_power_product(5, 1, 1, -2) == 4
    assert fermat_quotient_of_power_product(7, 1, 1, -2) == 3
    assert fermat_quotient_of_power_product(1093, 1, 1, -2) == 0
    assert fermat_quotient_of_power_product_direct(1093, 1, 1, -2) == 0
    with pytest.raises(InvalidTriple):
        fermat_quotient_of_power_product(7, 1, 1, -3)
    with pytest.raises(InvalidTriple):
        fermat_quotient_of_power_product(7, 7, 1, -8)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_both_routes_agree(p):
    for a in range(1, p - 1):
        for b in range(1, p - a):
            c = -(a + b)
            assert (fermat_quotient_of_power_product(p, a, b, c)
                    == fermat_quotient_of_power_product_direct(p, a, b, c))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 10**6), st.integers(1, 10**6))
def test_quotient_homomorphism(p, x, y):
    if x % p == 0 or y % p == 0:
        return
    assert fermat_quotient(x * y, p) == (fermat_quotient(x, p) + fermat_quotient(y, p)) % p


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 10**6), st.integers(-50, 50))
def test_quotient_shift_law(p, x, k):
    # q(x + kp) = q(x) - k/x mod p
    if x % p == 0:
        return
    expected = (fermat_quotient(x, p) - k * mod_inv(x, p)) % p
    assert fermat_quotient(x + k * p, p) == expected


def test_is_prime_against_sieve():
    sieve = set(primes_up_to(5000))
    assert all(is_prime(n) == (n in sieve) for n in range(-3, 5001))
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)


def test_odd_prime():
    p = OddPrime(19)
    assert p == 19 and str(p) == "19" and f"{p}" == "19"
    for bad in (1, 3, 9, 21):
        with pytest.raises(NotPrime):
            OddPrime(bad)
