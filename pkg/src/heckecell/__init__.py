"""heckecell: exact Kazhdan-Lusztig cells, the asymptotic ring and cellular
bases for small finite Weyl groups, with machine verification of the standard
structural identities."""

__version__ = "0.1.0"

from .exactalg import IntMatrix, LaurentPoly, gcd_normalize
from .coxeter import CartanType, CoxeterGroup, WeightFunction, build_group

__all__ = [
    "CartanType",
    "CoxeterGroup",
    "IntMatrix",
    "LaurentPoly",
    "WeightFunction",
    "build_group",
    "gcd_normalize",
]
