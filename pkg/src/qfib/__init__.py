"""Exact q-Fibonacci and q-Lucas polynomials with identity verification.

The value type everywhere is :class:`XsPoly`, a polynomial in x and s whose
coefficients are Laurent polynomials in q with integer coefficients.
"""

from .families import FamilyId, family, fib_pentagonal, q_catalan
from .morse import MorseSeq, enumerate_morse, oracle, weight
from .operators import moment
from .qring import Mat2, QLaurent, XsPoly, eval_point, render
from .qseries import ZSeries, gf
from .verify import REGISTRY, VerifyReport, run_all, run_identity

__version__ = "0.1.0"

__all__ = [
    "FamilyId",
    "family",
    "fib_pentagonal",
    "q_catalan",
    "MorseSeq",
    "enumerate_morse",
    "oracle",
    "weight",
    "moment",
    "Mat2",
    "QLaurent",
    "XsPoly",
    "eval_point",
    "render",
    "ZSeries",
    "gf",
    "REGISTRY",
    "VerifyReport",
    "run_all",
    "run_identity",
]
