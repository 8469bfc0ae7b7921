"""Quotient triples (a, b, c) of the degree-p Fermat curve and their invariants.

The curve attached to a triple is y^p = x^a (1-x)^b with a + b + c = 0.
Two triples give isomorphic curves when their residues mod p differ by a
permutation and a common scalar; ``orbit`` enumerates that class.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .bernoulli import BernoulliTable
from .errors import InvalidTriple, NotNormalizable
from .modarith import OddPrime, fermat_quotient_of_power_product, legendre_symbol


@dataclass(frozen=True, order=True)
class QuotientTriple:
    p: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        object.__setattr__(self, "p", OddPrime(self.p))
        if not (0 < self.a and 0 < self.b and self.a + self.b < self.p):
            raise InvalidTriple(f"need 0 < a, b and a+b < p; got {self.a}, {self.b}, p={self.p}")
        if self.a + self.b + self.c != 0:
            raise InvalidTriple(f"a+b+c must vanish; got {self.a}+{self.b}+{self.c}")

    @property
    def exponents(self) -> tuple:
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"({self.a},{self.b},{self.c}) mod {int(self.p)}"


class ReductionType(enum.Enum):
    TAME = "tame"
    WILD_SPLIT = "wild split"
    WILD_NONSPLIT = "wild non-split"

    def __str__(self):
        return self.value


def make_triple(p: int, a: int, b: int) -> QuotientTriple:
    return QuotientTriple(p, a, b, -(a + b))


def _from_residues(p: int, x: int, y: int, z: int) -> QuotientTriple | None:
    if x + y < p:
        return QuotientTriple(p, x, y, -(x + y))
    return None


def _residues(t: QuotientTriple, u: int = 1) -> tuple:
    p = t.p
    return tuple(u * e % p for e in t.exponents)


def scale_triple(t: QuotientTriple, u: int) -> QuotientTriple:
    """The valid triple with exponents congruent to u*(a, b, c).

    Residues of u*(a, b, c) in [1, p-1] sum to p or 2p.  In the first case
    (ua, ub) is already valid; in the second the residues of -u*(a, b, c)
    sum to p, and the two smallest of them are returned.  The second case
    is scaling by -u, so gamma picks up (-u)^3 rather than u^3.
    """
    p = t.p
    if u % p == 0:
        raise InvalidTriple("scaling factor must be a unit mod p")
    x, y, z = _residues(t, u)
    direct = _from_residues(p, x, y, z)
    if direct is not None:
        return direct
    neg = sorted((p - x, p - y, p - z))
    flipped = _from_residues(p, *neg)
    if flipped is None:
        raise NotNormalizable(f"no valid representative for {t} scaled by {u}")
    return flipped


def scale_multiplier(t: QuotientTriple, u: int) -> int:
    """The effective scalar (u or -u mod p) that scale_triple applies."""
    p = t.p
    x, y, _ = _residues(t, u)
    return u % p if x + y < p else (-u) % p


def orbit(t: QuotientTriple) -> list:
    """Every valid triple isomorphic to t under S3 x F_p^*, sorted by (a, b)."""
    p = t.p
    members = set()
    for u in range(1, p):
        r = _residues(t, u)
        if sum(r) != p:
            continue
        for i in range(3):
            for j in range(3):
                if i != j:
                    members.add((r[i], r[j]))
    return [make_triple(p, a, b) for a, b in sorted(members)]


def canonical(t: QuotientTriple) -> QuotientTriple:
    """Lexicographically least orbit member with a <= b."""
    return min(m for m in orbit(t) if m.a <= m.b)


def enumerate_triples(p: int, up_to_isomorphism: bool = False) -> list:
    p = OddPrime(p)
    triples = [make_triple(p, a, b) for a in range(1, p) for b in range(a, p - a)]
    if not up_to_isomorphism:
        return triples
    reps = []
    seen = set()
    for t in triples:
        if (t.a, t.b) in seen:
            continue
        members = orbit(t)
        seen.update((m.a, m.b) for m in members)
        reps.append(min(m for m in members if m.a <= m.b))
    return sorted(reps)


def all_triples(p: int) -> list:
    """Every valid triple, both orders of (a, b), sorted by (a, b)."""
    p = OddPrime(p)
    return [make_triple(p, a, b) for a in range(1, p) for b in range(1, p - a)]


def reduction_witness(t: QuotientTriple) -> int:
    """-2abc q(a^a b^b c^c) mod p."""
    p = t.p
    q = fermat_quotient_of_power_product(p, t.a, t.b, t.c)
    return (-2 * t.a * t.b * t.c * q) % p


def reduction_type(t: QuotientTriple) -> tuple:
    """(ReductionType, witness) for the special fiber over Z_p[zeta]."""
    w = reduction_witness(t)
    if w == 0:
        return ReductionType.TAME, w
    if legendre_symbol(w, t.p) == 1:
        return ReductionType.WILD_SPLIT, w
    return ReductionType.WILD_NONSPLIT, w


def cm_type(t: QuotientTriple) -> tuple:
    """Indices k with omega_k holomorphic: <ka> + <kb> + <kc> = 2p."""
    p = t.p
    return tuple(
        k for k in range(1, p)
        if k * t.a % p + k * t.b % p + k * t.c % p == 2 * p
    )


def gamma(t: QuotientTriple, table: BernoulliTable) -> int:
    """q(a^a b^b c^c)^3 + abc B_{p-3} mod p."""
    p = t.p
    if table.p != p:
        raise ValueError(f"table is for p={table.p}, triple for p={p}")
    q = fermat_quotient_of_power_product(p, t.a, t.b, t.c)
    return (q**3 + t.a * t.b * t.c * table[p - 3]) % p


def is_nonsimple(t: QuotientTriple) -> tuple:
    """(True, r) when some orbit member is (1, r, -(1+r)) with r^2+r+1 = 0 mod p.

    Returns the least such r, or (False, None).
    """
    p = t.p
    if p % 3 != 1:
        return False, None
    roots = [m.b for m in orbit(t) if m.a == 1 and (m.b * m.b + m.b + 1) % p == 0]
    if roots:
        return True, min(roots)
    return False, None
