"""Exact arithmetic and module theory for A_h = F<x, y>/(yx - xy - h)."""

from .ahalg import AhContext, AhElement, commutator, delta_apply, embed_weyl, is_normal_bounded, multiply
from .errors import AhlibError
from .poly import Answer, Poly
from .scalars import PrimeField, Rationals, Scalar, field_from_spec

__all__ = [
    "AhContext",
    "AhElement",
    "AhlibError",
    "Answer",
    "Poly",
    "PrimeField",
    "Rationals",
    "Scalar",
    "commutator",
    "delta_apply",
    "embed_weyl",
    "field_from_spec",
    "is_normal_bounded",
    "multiply",
]

__version__ = "0.1.0"
