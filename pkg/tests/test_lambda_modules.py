import numpy as np
import pytest

from fermat_sha import gf
from fermat_sha import lambda_modules as lm
from fermat_sha.errors import CapExceeded


def test_quotient_dim_examples():
    assert lm.quotient_dim((3, 3), 2, 1) == 0
    assert lm.quotient_dim((1,), 1, 1) == 1
    assert lm.quotient_dim((3, 3), 3, 1) == 2
    with pytest.raises(ValueError):
        lm.quotient_dim((1,), 0, 1)


def test_realize_examples():
    assert lm.realize_module((1,), 5).tolist() == [[0]]
    L2 = lm.realize_module((2,), 5)
    assert L2.shape == (2, 2) and gf.rank(L2, 5) == 1
    L = lm.realize_module((3, 3), 19)
    assert [gf.rank(gf.matpow(L, k, 19), 19) for k in (1, 2, 3)] == [4, 2, 0]


def test_hyperbolic_examples():
    m1 = lm.hyperbolic_pairing((1,), 7)
    assert m1.dimension == 2
    assert m1.gram.tolist() == [[0, 1], [6, 0]]
    m3 = lm.hyperbolic_pairing((3,), 19)
    G, L = m3.gram, m3.lambda_op
    assert m3.dimension == 6
    assert np.array_equal(gf.matmul(G, L, 19), (-gf.matmul(L.T, G, 19)) % 19)


def test_annihilator_and_restriction_examples():
    m3 = lm.hyperbolic_pairing((3,), 5)
    assert lm.verify_annihilator(m3, 3)
    assert lm.annihilator(m3, 3).shape[1] == 0
    assert lm.verify_annihilator(lm.hyperbolic_pairing((2, 1), 5), 1)
    assert lm.verify_perfect_restriction(lm.hyperbolic_pairing((3, 3), 5), 2, 1)
    m1 = lm.hyperbolic_pairing((1,), 5)
    assert lm.verify_perfect_restriction(m1, 1, 1)
    da, db, R = lm.restriction_gram(m1, 1, 1)
    assert da == db == 2 and gf.rank(R, 5) == 2


def test_module_validation():
    L = lm.realize_module((2,), 5)
    with pytest.raises(ValueError):
        lm.PairedLambdaModule(5, L, np.eye(2, dtype=np.int64))
    with pytest.raises(ValueError):
        lm.PairedLambdaModule(5, np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64))
    with pytest.raises(CapExceeded):
        lm.hyperbolic_pairing((9, 9), 5)


@pytest.mark.parametrize("p", [3, 5, 19])
def test_quotient_dim_matches_realization(p):
    for parts in lm.iter_partitions(10, 10):
        if not parts:
            continue
        L = lm.realize_module(parts, p)
        for m in range(1, 6):
            for n in range(1, 6):
                assert lm.module_quotient_dim(L, p, m, n) == lm.quotient_dim(parts, m, n)


@pytest.mark.parametrize("parts", [(e,) for e in range(1, 8)] + [(3, 3), (4, 2, 1), (2, 2, 2)])
def test_quotient_dim_symmetry(parts):
    # the pairing identifies M[l^m]/l^n M[l^(m+n)] with the dual of M[l^n]/l^m M[l^(m+n)]
    for m in range(1, 6):
        for n in range(1, 6):
            assert lm.quotient_dim(parts, m, n) == lm.quotient_dim(parts, n, m)


@pytest.mark.parametrize("p", [3, 5, 19])
def test_random_pairings_small(p):
    rng = np.random.default_rng(p)
    for parts in lm.iter_partitions(5, 5):
        if not parts:
            continue
        base = lm.hyperbolic_pairing(parts, p)
        for sampler in (lm.random_congruent_pairing, lm.random_compatible_pairing):
            for _ in range(3):
                mod = sampler(base, rng)
                assert mod.is_compatible(mod.gram)
                for m in range(1, 5):
                    assert lm.verify_annihilator(mod, m)
                    for n in range(1, 5):
                        assert lm.verify_perfect_restriction(mod, m, n)


def test_random_pairings_seeded():
    base = lm.hyperbolic_pairing((3, 1), 5)
    a = lm.random_compatible_pairing(base, np.random.default_rng(4)).gram
    b = lm.random_compatible_pairing(base, np.random.default_rng(4)).gram
    assert np.array_equal(a, b)


def test_deduce_examples():
    for t in range(0, 5):
        found = lm.deduce_partitions(lm.freeness_constraints(t), part_cap=3, dim_cap=12)
        assert found == [(3,) * t]
    assert lm.deduce_partitions(lm.EXACT_STRUCTURE_CONSTRAINTS, 4, 12) == [(3, 3)]
    assert lm.deduce_partitions([], 1, 2) == [(), (1,), (1, 1)]
    with pytest.raises(CapExceeded):
        lm.deduce_partitions([], 13, 2)


def test_deduce_freeness_without_dimension():
    found = lm.deduce_partitions(lm.freeness_constraints(0)[:3], 3, 15)
    assert found and all(set(q) <= {3} for q in found)


def test_iter_partitions_counts():
    # partitions of n <= 6 with unrestricted parts: 1+1+2+3+5+7+11
    assert len(list(lm.iter_partitions(6, 6))) == 30


def test_constraint_file_roundtrip():
    text = "# structure\npart_cap 4\ntorsion_shape 3 3,3\nquotient_dim 3 1 >= 2\nquotient_dim 2 1 = 0\n"
    cs = lm.parse_constraints(text)
    assert cs[:3] == lm.EXACT_STRUCTURE_CONSTRAINTS
    assert lm.parse_constraints(lm.format_constraints(cs)) == cs
    with pytest.raises(lm.ConstraintSyntaxError):
        lm.parse_constraints("quotient_dim 1 = 2")
    with pytest.raises(lm.ConstraintSyntaxError):
        lm.parse_constraints("bogus 3")
