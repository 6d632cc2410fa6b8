"""Exact elimination: Gröbner bases, syzygies, resolutions, quotient algebras."""

from .groebner import (
    GREVLEX,
    GRLEX,
    LEX,
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    in_ideal,
    is_groebner,
    module_groebner,
    normal_form,
    reduces_to_zero,
)
from .hilbert import (
    ZeroDimSystem,
    hilbert_dim_degree,
    is_zero_dimensional,
    projectively_empty,
    quotient_basis_and_companions,
    standard_monomials,
)
from .matrix import FreeResolution, GradedMatrix, free_resolution_min, minimal_generators, minimalize, syzygy
from .minors import determinant, maximal_minors, minors

__all__ = [
    "GREVLEX",
    "GRLEX",
    "LEX",
    "GroebnerBasis",
    "MonomialOrder",
    "buchberger",
    "in_ideal",
    "is_groebner",
    "module_groebner",
    "normal_form",
    "reduces_to_zero",
    "ZeroDimSystem",
    "hilbert_dim_degree",
    "is_zero_dimensional",
    "projectively_empty",
    "quotient_basis_and_companions",
    "standard_monomials",
    "FreeResolution",
    "GradedMatrix",
    "free_resolution_min",
    "minimal_generators",
    "minimalize",
    "syzygy",
    "determinant",
    "maximal_minors",
    "minors",
]
