"""Hurwitz polyzetas, normalized multiple Bernoulli polynomials and the
difference analogue of the KZ equation, in exact and floating-point form."""

from .exact import RationalPoly, bernoulli_number, bernoulli_poly
from .nmbp import mzv_neg, nmbp, nmbp_closed_form, solve_difference, verify_b0
from .numeric import digamma, hurwitz_polyzeta, regularized_numeric
from .words import LinComb, RegElement, coproduct, stuffle, stuffle_regularize

__all__ = [
    "LinComb",
    "RationalPoly",
    "RegElement",
    "bernoulli_number",
    "bernoulli_poly",
    "coproduct",
    "digamma",
    "hurwitz_polyzeta",
    "mzv_neg",
    "nmbp",
    "nmbp_closed_form",
    "regularized_numeric",
    "solve_difference",
    "stuffle",
    "stuffle_regularize",
    "verify_b0",
]
