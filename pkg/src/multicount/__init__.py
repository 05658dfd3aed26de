"""Counting, estimating, sampling and switching degree-constrained multigraphs."""

from .degrees import (
    DegreeSequence,
    Multigraph,
    MultiplicitySet,
    compute_moments,
    indicators,
    reduce_support,
    validate,
)
from .exact import ClassSignature, class_census, count_class, count_exact, count_region, enumerate_multigraphs
from .pairing import Pairing, pairings_of, project, sample_pairing, total_pairings, w_weight
from .asymptotics import (
    Estimate,
    composed_estimate,
    correction_factors,
    regular_estimate,
    simple_pairing_asymptotic,
    sparse_estimate,
)
from .naive import g_naive, naive_corrected_estimate, solve_p0

__all__ = [
    "ClassSignature", "DegreeSequence", "Estimate", "Multigraph", "MultiplicitySet", "Pairing",
    "class_census", "composed_estimate", "compute_moments", "correction_factors", "count_class",
    "count_exact", "count_region", "enumerate_multigraphs", "g_naive", "indicators",
    "naive_corrected_estimate", "pairings_of", "project", "reduce_support", "regular_estimate",
    "sample_pairing", "simple_pairing_asymptotic", "solve_p0", "sparse_estimate", "total_pairings",
    "validate", "w_weight",
]
