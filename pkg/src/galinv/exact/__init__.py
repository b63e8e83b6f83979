"""Exact scalar rings and dense matrices over them."""

from .scalars import GaussianRational, I_UNIT, Rational, gauss, rat, rat_str
from .laurent import LaurentPoly
from .multipoly import MultiPoly
from .matrix import (
    LAURENT,
    Matrix,
    PolyRing,
    QI,
    QQ,
    commutator,
    laurent_limit,
    mat_mul,
    nilpotent_exp,
)

__all__ = [
    "GaussianRational",
    "I_UNIT",
    "LAURENT",
    "LaurentPoly",
    "Matrix",
    "MultiPoly",
    "PolyRing",
    "QI",
    "QQ",
    "Rational",
    "commutator",
    "gauss",
    "laurent_limit",
    "mat_mul",
    "nilpotent_exp",
    "rat",
    "rat_str",
]
