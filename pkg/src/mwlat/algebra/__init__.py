"""Exact arithmetic: number-field towers, polynomials, Smith normal form."""

from .field import (
    QQ,
    ExtensionField,
    NFElement,
    NotInvertibleError,
    NumberField,
    RationalField,
    field_tower_create,
)
from .poly import Poly, RatFunc, ratfunc_normalize
from .snf import SmithForm, integer_kernel, quotient_invariants, smith_normal_form


def nf_invert(x: NFElement) -> NFElement:
    """Multiplicative inverse; raises ZeroDivisionError or NotInvertibleError."""
    return x.inverse()


__all__ = [
    "QQ",
    "ExtensionField",
    "NFElement",
    "NotInvertibleError",
    "NumberField",
    "RationalField",
    "field_tower_create",
    "nf_invert",
    "Poly",
    "RatFunc",
    "ratfunc_normalize",
    "SmithForm",
    "smith_normal_form",
    "integer_kernel",
    "quotient_invariants",
]
