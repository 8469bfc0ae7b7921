"""Modular arithmetic mod p and mod p^2.

Python integers are unbounded, so mod-p^2 products never overflow and no
cap on p is needed here.  The numpy fast paths elsewhere carry their own
caps.
"""
from __future__ import annotations

import numpy as np

from .errors import DivisibleByP, InvalidTriple, NotInvertible, NotPrime

# Bases 2..37 make Miller-Rabin deterministic below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        raise ValueError(f"primality test is only certified below {_MR_LIMIT}")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by a numpy sieve."""
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(x) for x in np.flatnonzero(sieve)]


class OddPrime(int):
    """An int certified prime and >= 5 at construction."""

    def __new__(cls, value):
        if isinstance(value, OddPrime):
            return value
        if isinstance(value, bool) or int(value) != value:
            raise NotPrime(f"{value!r} is not an integer")
        value = int(value)
        if value < 5 or not is_prime(value):
            raise NotPrime(f"{value} is not a prime >= 5")
        return super().__new__(cls, value)

    def __str__(self):
        return int.__repr__(self)

    def __format__(self, spec):
        return format(int(self), spec)

    def __repr__(self):
        return f"OddPrime({int(self)})"


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base % modulus, exp, modulus)


def mod_inv(x: int, modulus: int) -> int:
    try:
        return pow(x % modulus, -1, modulus)
    except ValueError:
        raise NotInvertible(f"{x} is not invertible mod {modulus}") from None


def legendre_symbol(x: int, p: int) -> int:
    """+1, 0 or -1 by Euler's criterion."""
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def fermat_quotient(x: int, p: int) -> int:
    """q(x) = (x^(p-1) - 1)/p reduced mod p."""
    p = OddPrime(p)
    if x % p == 0:
        raise DivisibleByP(f"{p} divides {x}")
    m = p * p
    return (pow(x % m, p - 1, m) - 1) // p % p


def _check_power_triple(p: int, a: int, b: int, c: int) -> None:
    if a + b + c != 0:
        raise InvalidTriple(f"a+b+c = {a + b + c} != 0")
    if a % p == 0 or b % p == 0 or c % p == 0:
        raise InvalidTriple(f"{p} divides one of {a}, {b}, {c}")


def fermat_quotient_of_power_product(p: int, a: int, b: int, c: int) -> int:
    """q(a^a b^b c^c) via the homomorphism q(xy) = q(x) + q(y).

    The sign of a negative base drops out because q(-1) = 0.
    """
    p = OddPrime(p)
    _check_power_triple(p, a, b, c)
    return (a * fermat_quotient(a, p) + b * fermat_quotient(b, p)
            + c * fermat_quotient(c, p)) % p


def power_product_mod_p2(p: int, a: int, b: int, c: int) -> int:
    """The unit a^a b^b |c|^c of Z/p^2, negative exponents through mod_inv."""
    m = p * p
    value = 1
    for base, e in ((a, a), (b, b), (c, c)):
        term = pow(abs(base) % m, abs(e), m)
        if e < 0:
            term = mod_inv(term, m)
        value = value * term % m
    return value


def fermat_quotient_of_power_product_direct(p: int, a: int, b: int, c: int) -> int:
    """Same value as fermat_quotient_of_power_product, but exponentiates first."""
    p = OddPrime(p)
    _check_power_triple(p, a, b, c)
    return fermat_quotient(power_product_mod_p2(p, a, b, c), p)
