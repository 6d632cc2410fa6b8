"""Unstable curves of logarithmic bundles: restriction matrices, line enumeration,
expected counts and an exhaustive finite-field oracle."""

from .conics import ConicLocus, conic_in_locus, conic_point, unstable_conics_pipeline, z_matrix
from .eigen import aberth_roots, charpoly, squarefree_decomposition
from .lines import ChartIdeal, UnstableLine, UnstableLineReport, chart_ideal, rational_zeros, unstable_lines
from .oracle import brute_force_oracle, candidate_count, projective_points
from .porteous import porteous_count, porteous_series
from .restriction import (
    CHARTS,
    RestrictionMatrix,
    chart_line,
    check_precondition,
    is_unstable,
    line_chart_params,
    restriction_matrix,
)

__all__ = [
    "CHARTS",
    "ChartIdeal",
    "ConicLocus",
    "RestrictionMatrix",
    "UnstableLine",
    "UnstableLineReport",
    "aberth_roots",
    "brute_force_oracle",
    "candidate_count",
    "chart_ideal",
    "chart_line",
    "charpoly",
    "check_precondition",
    "conic_in_locus",
    "conic_point",
    "is_unstable",
    "line_chart_params",
    "porteous_count",
    "porteous_series",
    "projective_points",
    "rational_zeros",
    "restriction_matrix",
    "squarefree_decomposition",
    "unstable_conics_pipeline",
    "unstable_lines",
    "z_matrix",
]
