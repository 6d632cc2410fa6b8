"""Exact fields and sparse multivariate polynomials."""

from .field import QQ, Field, FieldElement, PrimeField, RationalField, field_arithmetic, field_from_descriptor
from .poly import Poly, PolyRing, evaluate_hom, format_poly, partial_derivative, plane_ring

__all__ = [
    "QQ",
    "Field",
    "FieldElement",
    "PrimeField",
    "RationalField",
    "field_arithmetic",
    "field_from_descriptor",
    "Poly",
    "PolyRing",
    "evaluate_hom",
    "format_poly",
    "partial_derivative",
    "plane_ring",
]
