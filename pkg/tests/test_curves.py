import pytest

from fermat_sha.bernoulli import bernoulli_table
from fermat_sha.curves import (
    QuotientTriple,
    ReductionType,
    all_triples,
    canonical,
    cm_type,
    enumerate_triples,
    gamma,
    is_nonsimple,
    make_triple,
    orbit,
    reduction_type,
    scale_multiplier,
    scale_triple,
)
from fermat_sha.errors import InvalidTriple, NotPrime
from fermat_sha.modarith import legendre_symbol, primes_up_to

TAME = ReductionType.TAME
SPLIT = ReductionType.WILD_SPLIT
NONSPLIT = ReductionType.WILD_NONSPLIT


def test_make_triple_examples():
    t = make_triple(19, 7, 1)
    assert (t.p, t.a, t.b, t.c) == (19, 7, 1, -8)
    assert make_triple(5, 1, 1) == QuotientTriple(5, 1, 1, -2)
    with pytest.raises(InvalidTriple):
        make_triple(5, 3, 4)
    with pytest.raises(InvalidTriple):
        make_triple(7, 0, 2)
    with pytest.raises(NotPrime):
        make_triple(9, 1, 1)


def test_scale_examples():
    assert scale_triple(make_triple(5, 1, 1), 1) == make_triple(5, 1, 1)
    assert scale_triple(make_triple(19, 7, 1), 2) == make_triple(19, 14, 2)
    assert scale_triple(make_triple(5, 1, 1), 3) == make_triple(5, 1, 2)


def test_reduction_examples():
    assert reduction_type(make_triple(5, 1, 1)) == (SPLIT, 1)
    assert reduction_type(make_triple(7, 1, 1)) == (NONSPLIT, 5)
    assert reduction_type(make_triple(19, 7, 1)) == (TAME, 0)


def test_cm_type_examples():
    assert cm_type(make_triple(5, 1, 1)) == (3, 4)
    assert cm_type(make_triple(19, 7, 1)) == (5, 8, 10, 12, 13, 15, 16, 17, 18)


def test_gamma_example():
    assert gamma(make_triple(19, 7, 1), bernoulli_table(19)) == 15


def test_nonsimple_examples():
    assert is_nonsimple(make_triple(19, 7, 1)) == (True, 7)
    assert is_nonsimple(make_triple(5, 1, 1)) == (False, None)
    assert is_nonsimple(make_triple(7, 1, 2)) == (True, 2)


def test_enumeration_examples():
    full = enumerate_triples(5)
    assert [(t.a, t.b, t.c) for t in full] == [(1, 1, -2), (1, 2, -3), (1, 3, -4), (2, 2, -4)]
    assert enumerate_triples(5, up_to_isomorphism=True) == [make_triple(5, 1, 1)]
    assert len(enumerate_triples(7)) == 9
    assert len(enumerate_triples(7, up_to_isomorphism=True)) == 2
    assert len(enumerate_triples(19, up_to_isomorphism=True)) == 4
    assert len(enumerate_triples(23, up_to_isomorphism=True)) == 4


def _holomorphic_dim(p, a, b, k):
    """Dimension of holomorphic differentials x^i (1-x)^j g(x) dx / y^k on y^p = x^a (1-x)^b.

    Valuations: over x=0 v(x)=p, v(y)=a, v(dx)=p-1; over x=1 likewise with b;
    over infinity v(x)=v(1-x)=-p, v(y)=-(a+b), v(dx)=-p-1.
    """
    i = next(i for i in range(p) if p * i - k * a + p - 1 >= 0)
    j = next(j for j in range(p) if p * j - k * b + p - 1 >= 0)
    dim = 0
    d = 0
    while -p * (i + j + d) + k * (a + b) - p - 1 >= 0:
        dim += 1
        d += 1
    return dim


@pytest.mark.parametrize("p", [5, 7, 11, 13, 19, 23])
def test_cm_type_matches_divisor_oracle(p):
    for t in all_triples(p):
        dims = {k: _holomorphic_dim(p, t.a, t.b, k) for k in range(1, p)}
        assert sum(dims.values()) == (p - 1) // 2
        assert tuple(k for k, d in dims.items() if d) == cm_type(t)
        assert all(dims[k] + dims[p - k] == 1 for k in range(1, p))


@pytest.mark.parametrize("p", [p for p in primes_up_to(31) if p >= 5])
def test_orbit_invariants(p):
    table = bernoulli_table(p)
    for t in enumerate_triples(p):
        red = reduction_type(t)[0]
        g = gamma(t, table)
        ns = is_nonsimple(t)
        for m in orbit(t):
            assert reduction_type(m)[0] is red
            assert (gamma(m, table) == 0) == (g == 0)
            assert is_nonsimple(m) == ns
        assert canonical(t) == canonical(orbit(t)[-1])


@pytest.mark.parametrize("p", [7, 11, 13, 19, 23, 29])
def test_scaling_laws(p):
    table = bernoulli_table(p)
    for t in all_triples(p):
        w = reduction_type(t)[1]
        g = gamma(t, table)
        for u in range(1, p):
            s = scale_triple(t, u)
            v = scale_multiplier(t, u)
            assert gamma(s, table) == g * pow(v, 3, p) % p
            ws = reduction_type(s)[1]
            assert ws == w * pow(v, 4, p) % p
            assert legendre_symbol(ws, p) == legendre_symbol(w, p)


@pytest.mark.parametrize("p", [p for p in primes_up_to(1000) if p % 3 == 1])
def test_nonsimple_triples_are_tame(p):
    roots = [r for r in range(2, p) if (r * r + r + 1) % p == 0]
    assert len(roots) == 2
    for r in roots:
        t = make_triple(p, 1, r) if 1 + r < p else None
        if t is None:
            continue
        assert pow(r + 1, 6 * (r + 1), p * p) == pow(r, 6 * r, p * p)
        assert reduction_type(t) == (TAME, 0)
        assert is_nonsimple(t) == (True, min(roots))


def test_str():
    assert str(make_triple(19, 7, 1)) == "(7,1,-8) mod 19"
