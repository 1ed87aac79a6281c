"""Exact rank factorizations, minimal bases and eigenstructure of polynomial matrices over Q."""

from .errors import (EpsilonTooLarge, GradeError, InvariantViolation, ParseError, PreconditionError,
                     RankFactError, SamplingError, ShapeError, ZeroMatrixError)
from .polycore import NEG_INF, Poly, poly_arith, poly_divrem, poly_gcd, poly_reverse
from .polymat import (COLUMNS, ROWS, PolyMatrix, pm_degree_profile, pm_distance_sq, pm_highest_coeff,
                      pm_is_reduced, pm_is_unimodular, pm_mul, pm_normal_rank)
from .smith import (SmithDecomposition, invariant_polynomials, partial_multiplicities_at,
                    partial_multiplicities_at_infinity, smith_decompose)
from .minbasis import (MinimalBasis, MinimalIndices, col_space_minimal_basis, column_reduce,
                       is_minimal_basis, left_nullspace_minimal_basis, minimal_indices, row_reduce,
                       row_space_minimal_basis, right_nullspace_minimal_basis)
from .factor import (FactorizationReport, RankFactorization, degree_lower_bound,
                     minimal_rank_factorization, smith_rank_factorization, verify_factorization)
from .eigenstructure import (Eigenstructure, GenericOrbitSpec, classify_orbit, complete_eigenstructure,
                             full_rank_generic_spec, generic_orbit_spec, is_eigenvalue_free)
from .generic import (FactorizationWitness, Membership, SetDescriptor, bset_params, check_membership,
                      homogenize_degrees, pad_to_equality, redistribute_degrees, sample_B_member,
                      sample_MH_member)

__version__ = "0.1.0"

__all__ = [
    "bset_params",
    "check_membership",
    "classify_orbit",
    "col_space_minimal_basis",
    "column_reduce",
    "COLUMNS",
    "complete_eigenstructure",
    "degree_lower_bound",
    "Eigenstructure",
    "EpsilonTooLarge",
    "FactorizationReport",
    "FactorizationWitness",
    "full_rank_generic_spec",
    "generic_orbit_spec",
    "GenericOrbitSpec",
    "GradeError",
    "homogenize_degrees",
    "invariant_polynomials",
    "InvariantViolation",
    "is_eigenvalue_free",
    "is_minimal_basis",
    "left_nullspace_minimal_basis",
    "Membership",
    "minimal_indices",
    "minimal_rank_factorization",
    "MinimalBasis",
    "MinimalIndices",
    "NEG_INF",
    "pad_to_equality",
    "ParseError",
    "partial_multiplicities_at",
    "partial_multiplicities_at_infinity",
    "pm_degree_profile",
    "pm_distance_sq",
    "pm_highest_coeff",
    "pm_is_reduced",
    "pm_is_unimodular",
    "pm_mul",
    "pm_normal_rank",
    "Poly",
    "poly_arith",
    "poly_divrem",
    "poly_gcd",
    "poly_reverse",
    "PolyMatrix",
    "PreconditionError",
    "RankFactError",
    "RankFactorization",
    "redistribute_degrees",
    "right_nullspace_minimal_basis",
    "row_reduce",
    "row_space_minimal_basis",
    "ROWS",
    "sample_B_member",
    "sample_MH_member",
    "SamplingError",
    "SetDescriptor",
    "ShapeError",
    "smith_decompose",
    "smith_rank_factorization",
    "SmithDecomposition",
    "verify_factorization",
    "ZeroMatrixError",
]
