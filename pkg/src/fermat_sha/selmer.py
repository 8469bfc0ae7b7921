"""Eigenspace bookkeeping, Selmer dimensions and theorem verdicts.

Everything here is three-valued: a criterion that is only known to be
sufficient (or only necessary) yields ``UNKNOWN`` rather than a guess, and
conclusions are emitted only from verdicts that ``HOLDS``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .bernoulli import BernoulliTable, bernoulli_table
from .curves import (
    QuotientTriple,
    ReductionType,
    gamma,
    is_nonsimple,
    make_triple,
    reduction_type,
)
from .errors import IrregularPrime

FREE = "Ш[λ³] free over Z[ζ]/(λ³)"
NONZERO = "Ш[λ³] ≠ 0"
LOWER_BOUND = "|Ш[p^∞]| ≥ p³"
STRUCTURE = "Ш[p^∞] ≅ (Z[ζ]/(λ³))^2"

GROSS_ROHRLICH = "gross-rohrlich: Mordell-Weil rank of J over Q is positive"
RANK_TWO = "external: Ш[λ³] has rank 2 over Z[ζ]/(λ³)"


class UImage(enum.Enum):
    """Whether the global units U have nonzero image in V(i)."""

    NONTRIVIAL = "nontrivial"
    TRIVIAL = "trivial"
    UNKNOWN = "unknown"


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EigenspaceWindow:
    """V[lo, hi] together with isolated eigenspaces ``singles``."""

    lo: int
    hi: int
    singles: frozenset = frozenset()

    def __contains__(self, i: int) -> bool:
        return i in self.singles or self.lo <= i <= self.hi

    def indices(self) -> list:
        return sorted(set(range(self.lo, self.hi + 1)) | set(self.singles))


def _check_table(p: int, table: BernoulliTable) -> None:
    if table.p != p:
        raise ValueError(f"table is for p={table.p}, expected p={p}")


def u_image_status(p: int, table: BernoulliTable, i: int) -> UImage:
    _check_table(p, table)
    if not 1 <= i <= p:
        raise ValueError(f"eigenspace index must lie in [1, {p}], got {i}")
    if i == 1:
        # zeta itself lands in V(1)
        return UImage.NONTRIVIAL
    if i == p - 1:
        return UImage.TRIVIAL if table.is_regular else UImage.UNKNOWN
    if i % 2:
        if table.is_regular:
            return UImage.TRIVIAL
        # odd i: a nonzero image needs p | B_{p-i}; B_0 = 1 covers i = p
        k = p - i
        return UImage.TRIVIAL if k == 0 or table[k] else UImage.UNKNOWN
    return UImage.NONTRIVIAL if table[i] else UImage.UNKNOWN


def local_image_window(p: int, r: ReductionType) -> EigenspaceWindow:
    """Image of the local descent map at the prime above p."""
    if r is ReductionType.WILD_SPLIT:
        return EigenspaceWindow((p + 3) // 2, p, frozenset({(p - 1) // 2}))
    return EigenspaceWindow((p + 3) // 2, p)


def selmer_lambda_dim(p: int, table: BernoulliTable, r: ReductionType) -> int:
    """F_p-dimension of the lambda-Selmer group for regular p.

    Counts the even eigenspaces 2 <= i <= p-3 (those carrying global units)
    that satisfy the local condition.
    """
    _check_table(p, table)
    if not table.is_regular:
        raise IrregularPrime(f"{p} is irregular; the unit count does not apply")
    window = local_image_window(p, r)
    return sum(1 for i in range(2, p - 2, 2) if i in window)


def _all_nontrivial(statuses) -> Verdict:
    statuses = list(statuses)
    if all(s is UImage.NONTRIVIAL for s in statuses):
        return Verdict.HOLDS
    if any(s is UImage.TRIVIAL for s in statuses):
        return Verdict.FAILS
    return Verdict.UNKNOWN


def _any_trivial(statuses) -> Verdict:
    statuses = list(statuses)
    if any(s is UImage.TRIVIAL for s in statuses):
        return Verdict.HOLDS
    if any(s is UImage.UNKNOWN for s in statuses):
        return Verdict.UNKNOWN
    return Verdict.FAILS


def verdict_old(t: QuotientTriple, table: BernoulliTable, red: ReductionType) -> Verdict:
    """Wild split, p = 1 mod 4, U nontrivial in V((p-1)/2) and V((p+3)/2)."""
    p = t.p
    if p % 4 != 1 or red is not ReductionType.WILD_SPLIT:
        return Verdict.FAILS
    return _all_nontrivial(u_image_status(p, table, i) for i in ((p - 1) // 2, (p + 3) // 2))


def verdict_free(t: QuotientTriple, table: BernoulliTable, red: ReductionType) -> Verdict:
    p = t.p
    if red is ReductionType.WILD_SPLIT:
        return Verdict.HOLDS if p % 4 == 3 else Verdict.FAILS
    return _any_trivial(u_image_status(p, table, i) for i in ((p + 1) // 2, (p + 3) // 2))


def verdict_nontrivial(t: QuotientTriple, table: BernoulliTable, red: ReductionType,
                       g: int) -> Verdict:
    p = t.p
    ok = (p >= 19 and table.is_regular and p % 4 == 3
          and red is not ReductionType.WILD_SPLIT and g != 0)
    return Verdict.HOLDS if ok else Verdict.FAILS


@dataclass
class TheoremReport:
    triple: QuotientTriple
    reduction: ReductionType
    witness: int
    regular: bool
    gamma: int
    nonsimple: bool
    nonsimple_root: int | None
    verdict_old: Verdict
    verdict_free: Verdict
    verdict_nontrivial: Verdict
    selmer_dim: int | None
    rank_bound: int | None
    sha_lower_dim: int
    mw_rank: int | None = None
    sha_lambda_dim: int | None = None
    sha_structure: tuple | None = None
    conclusions: list = field(default_factory=list)
    external_facts_used: list = field(default_factory=list)
    steps: list = field(default_factory=list)

    def to_dict(self) -> dict:
        t = self.triple
        return {
            "p": int(t.p), "a": t.a, "b": t.b, "c": t.c,
            "reduction": self.reduction.value,
            "witness": self.witness,
            "regular": self.regular,
            "gamma": self.gamma,
            "nonsimple": self.nonsimple,
            "nonsimple_root": self.nonsimple_root,
            "old": self.verdict_old.value,
            "free": self.verdict_free.value,
            "nontrivial": self.verdict_nontrivial.value,
            "selmer_dim": self.selmer_dim,
            "rank_bound": self.rank_bound,
            "mw_rank": self.mw_rank,
            "sha_lambda_dim": self.sha_lambda_dim,
            "sha_structure": list(self.sha_structure) if self.sha_structure else None,
            "conclusions": list(self.conclusions),
            "external_facts_used": list(self.external_facts_used),
        }


def mw_rank_bound(t: QuotientTriple, table: BernoulliTable,
                  sha_lower_dim: int | None = None) -> int:
    """Coarse upper bound on the Mordell-Weil rank: dim S_lambda - dim Sha[lambda].

    ``sha_lower_dim`` defaults to 2 when the nontriviality criterion holds
    (the restricted pairing then forces dim Sha[lambda] >= 2), else 0.
    Torsion in J(K)/lambda J(K) is not subtracted.
    """
    red, _ = reduction_type(t)
    dim = selmer_lambda_dim(t.p, table, red)
    if sha_lower_dim is None:
        v = verdict_nontrivial(t, table, red, gamma(t, table))
        sha_lower_dim = 2 if v is Verdict.HOLDS else 0
    return max(0, dim - sha_lower_dim)


def _exact_structure() -> tuple:
    from . import lambda_modules as lm

    found = lm.deduce_partitions(lm.EXACT_STRUCTURE_CONSTRAINTS, part_cap=4, dim_cap=12)
    if len(found) != 1:
        raise AssertionError(f"structure deduction is not unique: {found}")
    return found[0]


def evaluate_theorems(t: QuotientTriple, table: BernoulliTable | None = None,
                      rank_positive: bool = False,
                      sha_lambda3_rank: int | None = None) -> TheoremReport:
    """Evaluate every criterion for t and chain the conclusions they license.

    ``rank_positive`` and ``sha_lambda3_rank`` are external inputs; each one
    that is actually consumed is listed in ``external_facts_used``.
    """
    p = t.p
    if table is None:
        table = bernoulli_table(p)
    _check_table(p, table)
    red, w = reduction_type(t)
    g = gamma(t, table)
    ns, root = is_nonsimple(t)
    old = verdict_old(t, table, red)
    free = verdict_free(t, table, red)
    nontriv = verdict_nontrivial(t, table, red, g)
    sha_lower = 2 if nontriv is Verdict.HOLDS else 0
    if table.is_regular:
        selmer = selmer_lambda_dim(p, table, red)
        bound = max(0, selmer - sha_lower)
    else:
        selmer = bound = None
    report = TheoremReport(
        triple=t, reduction=red, witness=w, regular=table.is_regular, gamma=g,
        nonsimple=ns, nonsimple_root=root, verdict_old=old, verdict_free=free,
        verdict_nontrivial=nontriv, selmer_dim=selmer, rank_bound=bound,
        sha_lower_dim=sha_lower,
    )

    steps = report.steps
    if ns:
        steps.append(f"non-simple: isomorphic to (1,{root},{-(1 + root)}), "
                     f"r={root} satisfies r^2+r+1 ≡ 0 mod {p}")
    steps.append(f"reduction: {red.value} (witness {w})")
    steps.append(f"{p} is {'regular' if table.is_regular else 'irregular'}")
    steps.append(f"gamma{t.exponents} = {g} {'≢' if g else '≡'} 0 mod {p}")
    if selmer is not None:
        steps.append(f"Selmer dimension dim S_λ = {selmer}")

    concl = report.conclusions
    if old is Verdict.HOLDS:
        concl.append("Ш[λ]/λШ[λ²] ≅ (Z/pZ)^2")
    if free is Verdict.HOLDS:
        concl.append(FREE)
    if nontriv is Verdict.HOLDS:
        concl.append(NONZERO)
    both = free is Verdict.HOLDS and nontriv is Verdict.HOLDS
    if both:
        concl.append(LOWER_BOUND)
    if not both:
        return report

    free_rank = None
    if rank_positive and bound == 1:
        report.external_facts_used.append(GROSS_ROHRLICH)
        report.mw_rank = 1
        report.sha_lambda_dim = selmer - 1
        steps.append("Mordell-Weil rank = 1")
        steps.append(f"dim Ш[λ] = {report.sha_lambda_dim}")
        concl.append(f"Mordell-Weil rank = 1, dim Ш[λ] = {report.sha_lambda_dim}")
        # a free Z[zeta]/(lambda^3)-module of rank r has r-dimensional lambda-torsion
        free_rank = report.sha_lambda_dim
        steps.append(f"Ш[λ³] free of rank {free_rank} over Z[ζ]/(λ³)")
    elif rank_positive:
        report.external_facts_used.append(GROSS_ROHRLICH)
        steps.append(f"1 ≤ Mordell-Weil rank ≤ {bound}")
    if free_rank is None and sha_lambda3_rank is not None:
        report.external_facts_used.append(RANK_TWO if sha_lambda3_rank == 2
                                          else f"external: Ш[λ³] has rank {sha_lambda3_rank}")
        free_rank = sha_lambda3_rank
    if free_rank == 2:
        report.sha_structure = _exact_structure()
        steps.append(STRUCTURE)
        concl.append(STRUCTURE)
    return report


def hurwitz_klein_report(external_rank_positive: bool = True) -> TheoremReport:
    """Full deduction chain for p = 19, (a, b, c) = (7, 1, -8)."""
    t = make_triple(19, 7, 1)
    report = evaluate_theorems(t, bernoulli_table(19), rank_positive=external_rank_positive)
    if not report.nonsimple or report.reduction is not ReductionType.TAME:
        raise AssertionError("non-simple triple did not reduce tamely")
    if report.witness != 0:
        raise AssertionError("tame witness must vanish")
    return report
