"""Computable criteria for Shafarevich-Tate groups of Fermat curve quotients."""
from .bernoulli import BernoulliTable, bernoulli_exact, bernoulli_table, is_regular
from .curves import (
    QuotientTriple,
    ReductionType,
    cm_type,
    enumerate_triples,
    gamma,
    is_nonsimple,
    make_triple,
    reduction_type,
    scale_triple,
)
from .modarith import OddPrime, fermat_quotient, fermat_quotient_of_power_product
from .selmer import evaluate_theorems, hurwitz_klein_report, selmer_lambda_dim

__version__ = "0.1.0"

__all__ = [
    "BernoulliTable", "OddPrime", "QuotientTriple", "ReductionType",
    "bernoulli_exact", "bernoulli_table", "cm_type", "enumerate_triples",
    "evaluate_theorems", "fermat_quotient", "fermat_quotient_of_power_product",
    "gamma", "hurwitz_klein_report", "is_nonsimple", "is_regular", "make_triple",
    "reduction_type", "scale_triple", "selmer_lambda_dim",
]
