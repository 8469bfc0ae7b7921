"""Finite verifiers for the identities the main theorems rest on.

Each verifier returns a ``VerificationOutcome`` whose ``failures`` list holds
machine-readable counterexamples (plain dicts), sorted canonically so that
outcomes do not depend on evaluation order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import gf
from .bernoulli import BernoulliTable, bernoulli_mod_p, bernoulli_table
from .curves import (
    QuotientTriple,
    ReductionType,
    all_triples,
    cm_type,
    gamma,
    make_triple,
    reduction_type,
)
from .errors import InvalidDimension, SingularSystem
from .modarith import OddPrime, fermat_quotient_of_power_product, primes_up_to

DEFAULT_PMAX = 101
EXTENDED_PMAX = 10_000


@dataclass
class VerificationOutcome:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    steps: list | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **info) -> None:
        self.failures.append(info)

    def finish(self) -> "VerificationOutcome":
        self.failures.sort(key=lambda d: sorted((k, str(v)) for k, v in d.items()))
        return self

    def to_dict(self) -> dict:
        return {"name": self.name, "trials": self.trials, "passed": self.passed,
                "failures": self.failures}

    def summary(self) -> str:
        status = "passed" if self.passed else f"FAILED ({len(self.failures)} counterexamples)"
        return f"{self.name}: {self.trials} checks, {status}"


def elementary_symmetric(xs, p: int, top: int = 3) -> list:
    """[e_0, e_1, ..., e_top] of xs mod p."""
    e = [1] + [0] * top
    for x in xs:
        for i in range(top, 0, -1):
            e[i] = (e[i] + e[i - 1] * x) % p
    return e


def power_sums(xs, p: int, top: int = 3) -> list:
    """[P_0, P_1, ..., P_top] with P_i = sum x^i mod p."""
    return [sum(pow(x, i, p) for x in xs) % p for i in range(top + 1)]


def shifted_vandermonde(xs, shift: int, p: int) -> np.ndarray:
    """Rows x^0 .. x^(n-2) followed by x^(n-1+shift)."""
    n = len(xs)
    exps = list(range(n - 1)) + [n - 1 + shift]
    return np.array([[pow(x, e, p) for x in xs] for e in exps], dtype=np.int64)


def verify_schur_identity(n: int, p: int, trials: int = 100, seed: int = 0,
                          exhaustive: bool = False) -> VerificationOutcome:
    """det(shift 3) = det(shift 0) * (e1^3 - 2 e1 e2 + e3) on distinct points of F_p^*."""
    if n < 3:
        raise InvalidDimension("n must be at least 3")
    if p <= n:
        raise InvalidDimension(f"need p > n to pick {n} distinct units mod {p}")
    out = VerificationOutcome(f"schur n={n} p={p}")
    if exhaustive:
        samples = itertools.permutations(range(1, p), n)
    else:
        rng = random.Random(seed)
        samples = (rng.sample(range(1, p), n) for _ in range(trials))
    for xs in samples:
        out.trials += 1
        g0 = gf.det(shifted_vandermonde(xs, 0, p), p)
        g3 = gf.det(shifted_vandermonde(xs, 3, p), p)
        e = elementary_symmetric(xs, p)
        rhs = g0 * (e[1] ** 3 - 2 * e[1] * e[2] + e[3]) % p
        if g3 != rhs:
            out.fail(points=list(xs), gamma3=g3, expected=rhs)
    return out.finish()


def solve_bk(t: QuotientTriple) -> dict:
    """b_k (k in the CM-type) with sum b_k k^i = [i = 0] for 0 <= i <= (p-3)/2."""
    p = t.p
    H = cm_type(t)
    A = np.array([[pow(k, i, p) for k in H] for i in range(len(H))], dtype=np.int64)
    rhs = np.zeros(len(H), dtype=np.int64)
    rhs[0] = 1
    try:
        b = gf.solve(A, rhs, p)
    except SingularSystem as exc:
        raise AssertionError(f"Vandermonde system on distinct nodes is singular: {exc}") from None
    return dict(zip(H, (int(v) for v in b)))


def bk_cubic_sum(t: QuotientTriple) -> int:
    """-sum b_k / k^3 mod p, from the solved system."""
    p = t.p
    return -sum(b * pow(k, -3, p) for k, b in solve_bk(t).items()) % p


def bk_closed_form(t: QuotientTriple, table: BernoulliTable) -> int:
    """(q^3 + 2 abc B_{p-3}) / 6 mod p.

    This is -h_3 evaluated with the power-sum congruences for the inverse
    CM-type, which is what the b_k system actually produces.
    """
    p = t.p
    q = fermat_quotient_of_power_product(p, t.a, t.b, t.c)
    return (q**3 + 2 * t.a * t.b * t.c * table[p - 3]) * pow(6, -1, p) % p


def verify_bk_lemma(t: QuotientTriple, table: BernoulliTable | None = None) -> VerificationOutcome:
    """Check -sum b_k / k^3 against gamma(t) (normalizing the unit F to 1)."""
    p = t.p
    if p < 7:
        raise InvalidDimension("the b_k system needs p >= 7")
    table = table or bernoulli_table(p)
    out = VerificationOutcome(f"bk-lemma {t}", trials=1)
    lhs, g = bk_cubic_sum(t), gamma(t, table)
    if lhs != g:
        out.fail(p=int(p), a=t.a, b=t.b, c=t.c, cubic_sum=lhs, gamma=g,
                 closed_form=bk_closed_form(t, table))
    return out.finish()


def verify_bk_sweep(primes=(7, 11, 19, 23), target: str = "gamma") -> VerificationOutcome:
    """verify_bk_lemma over every triple; target 'closed-form' checks bk_closed_form instead."""
    out = VerificationOutcome(f"bk-sweep[{target}] {list(primes)}")
    for p in primes:
        table = bernoulli_table(p)
        for t in all_triples(p):
            out.trials += 1
            lhs = bk_cubic_sum(t)
            rhs = gamma(t, table) if target == "gamma" else bk_closed_form(t, table)
            if lhs != rhs:
                out.fail(p=int(p), a=t.a, b=t.b, c=t.c, cubic_sum=lhs, expected=rhs)
    return out.finish()


def vandiver_sums(t: QuotientTriple) -> list:
    """Power sums P_1, P_2, P_3 of {k^-1 : k in the CM-type}."""
    p = t.p
    inv = [pow(k, -1, p) for k in cm_type(t)]
    return power_sums(inv, p)[1:]


def verify_vandiver(p: int, table: BernoulliTable | None = None) -> VerificationOutcome:
    """Power sums of the inverse CM-type against -q, 0 and -abc B_{p-3}, every triple at p."""
    p = OddPrime(p)
    if p < 7:
        raise InvalidDimension("needs p >= 7")
    table = table or bernoulli_table(p)
    B = table[p - 3]
    out = VerificationOutcome(f"vandiver p={p}")
    for t in all_triples(p):
        a, b, c = t.exponents
        out.trials += 1
        if a**3 + b**3 + c**3 != 3 * a * b * c:
            out.fail(p=int(p), a=a, b=b, c=c, check="cubes")
        q = fermat_quotient_of_power_product(p, a, b, c)
        s1, s2, s3 = vandiver_sums(t)
        expected = ((-q) % p, 0, (-a * b * c * B) % p)
        for i, (got, want) in enumerate(zip((s1, s2, s3), expected), 1):
            if got != want:
                out.fail(p=int(p), a=a, b=b, c=c, check=f"S{i}", got=got, expected=want)
    return out.finish()


def verify_vandiver_range(p_min: int = 7, p_max: int = DEFAULT_PMAX) -> VerificationOutcome:
    out = VerificationOutcome(f"vandiver {p_min}..{p_max}")
    for p in primes_up_to(p_max):
        if p >= p_min:
            sub = verify_vandiver(p)
            out.trials += sub.trials
            out.failures.extend(sub.failures)
    return out.finish()


def cube_roots_of_unity(p: int) -> list:
    """Roots r in [1, p-1] of r^2 + r + 1 mod p."""
    return [r for r in range(1, p) if (r * r + r + 1) % p == 0]


def verify_tame_nonsimple(p_max: int = DEFAULT_PMAX, step_report: bool = False) -> VerificationOutcome:
    """(r+1)^(6(r+1)) = r^(6r) mod p^2 and tame reduction for (1, r, -(1+r))."""
    if p_max < 7:
        raise ValueError("p_max must be at least 7")
    out = VerificationOutcome(f"tame-nonsimple p<={p_max}")
    if step_report:
        out.steps = []
    for p in primes_up_to(p_max):
        if p % 3 != 1:
            continue
        m = p * p
        for r in cube_roots_of_unity(p):
            out.trials += 1
            lhs, rhs = pow(r + 1, 6 * (r + 1), m), pow(r, 6 * r, m)
            red, w = reduction_type(make_triple(p, 1, r))
            if lhs != rhs:
                out.fail(p=p, r=r, check="congruence", lhs=lhs, rhs=rhs)
            if red is not ReductionType.TAME:
                out.fail(p=p, r=r, check="reduction", reduction=red.value, witness=w)
            if step_report:
                out.steps.append(f"p={p} r={r}: {lhs} vs {rhs} mod {m}, {red.value}")
    return out.finish()


def verify_b_half(p_max: int = DEFAULT_PMAX, tables=None) -> VerificationOutcome:
    """No prime p = 3 mod 4 up to p_max divides B_{(p+1)/2}.

    ``tables`` may map p to a BernoulliTable (e.g. from the cache); primes
    missing from it go through the power-sum route.
    """
    if p_max < 7:
        raise ValueError("p_max must be at least 7")
    out = VerificationOutcome(f"b-half p<={p_max}")
    for p in primes_up_to(p_max):
        if p < 7 or p % 4 != 3:
            continue
        k = (p + 1) // 2
        table = tables.get(p) if tables else None
        value = table[k] if table is not None else bernoulli_mod_p(k, p)
        out.trials += 1
        if value == 0:
            out.fail(p=p, k=k)
    return out.finish()
