"""Hybrid classical-quantum stabilizer codes over qudits."""

from .codes import (
    HybridCode,
    InvalidCode,
    LinearCode,
    build_bacon_shor,
    build_gkp18,
    build_motivating,
    build_seven_qubit_hybrid,
    classical_code,
    hybridize_css,
    validate,
)
from .correctability import CorrectabilityReport, Tag, check_errors, forbidden_set_membership
from .distance import (
    DistanceResult,
    anticommute_degree,
    css_anticommute_degree,
    css_hybrid_bound,
    exact_distance,
    hybrid_bound,
)
from .groups import PauliSubgroup, coset_count, same_coset, scalar_content
from .pauli import DimensionMismatch, PauliOperator, format_pauli, parse_pauli

__version__ = "0.1.0"
