"""Stratified SU(2) representation varieties: quaternion group core,
Fox calculus, twisted cohomology, stabilizer strata, the surface
symplectic pairing, determinant-line torsion, and stratified invariant
sums, with a JSON-speaking command line on top.
"""

from . import su2
from .conventions import CONVENTION_TAGS, SCHEMA_VERSION, TOL, ToleranceLadder
from .cohomology import (CoefficientSystem, CohomologySummary, build_d0,
                         build_d1, cocycle_value, cohomology, full_system,
                         is_cocycle, pullback_cocycle, restrict_coefficients,
                         restricted_system, stabilizer_axis, system_cohomology)
from .errors import (AntipodeError, BoundaryAmbiguousError,
                     CleanIntersectionError, DomainError, ExactnessError,
                     InputError, PresentationError, RankAmbiguityError,
                     ResidualError, SamplingError, StratumConflictError)
from .invariants import (CleanVerdict, HeegaardData, InvariantResult,
                         ModuliPoint, apply_value_table, assemble_invariant,
                         clean_intersection_check, custom_points,
                         deduplicate_points, enumerate_moduli, find_conjugator,
                         heegaard_mv_torsion, heegaard_representations,
                         lens_heegaard, s1xs2_heegaard, stationary_phase_sum,
                         t3_presentation, trace_fingerprint)
from .presentations import (FoxDerivative, Presentation, Representation, Word,
                            circle_times_surface_group, commutator,
                            custom_group, cyclic_group, evaluate_images,
                            evaluate_word, format_word, fox_derivative,
                            fox_jacobian_at, free_group, generator,
                            parse_word, polish_images, presentation_from_json,
                            presentation_to_json, relator_residual,
                            representation_from_json, representation_to_json,
                            surface_group)
from .strata import (StratumLabel, boundary_fibre_values, classify_stratum,
                     handlebody_representation, polarization_map,
                     sample_stratum, sample_surface_representation,
                     stratum_tangent_dim)
from .symplectic import (fibre_tangent_basis, goldman_form, gram_matrix,
                         trace_derivative)
from .torsion import (HalfDensityValue, MetricSequence, TorsionValue,
                      exactness_residual, mayer_vietoris_torsion,
                      sequence_torsion, stratum_volume)

__version__ = "0.1.0"

__all__ = [
    "AntipodeError", "BoundaryAmbiguousError", "CleanIntersectionError",
    "CoefficientSystem", "CohomologySummary", "CleanVerdict",
    "CONVENTION_TAGS", "DomainError", "ExactnessError", "FoxDerivative",
    "HalfDensityValue", "HeegaardData", "InputError", "InvariantResult",
    "MetricSequence", "ModuliPoint", "Presentation", "PresentationError",
    "RankAmbiguityError", "Representation", "ResidualError", "SamplingError",
    "SCHEMA_VERSION", "StratumConflictError", "StratumLabel", "TOL",
    "ToleranceLadder", "TorsionValue", "Word",
    "apply_value_table", "assemble_invariant", "boundary_fibre_values",
    "build_d0", "build_d1", "circle_times_surface_group",
    "classify_stratum", "clean_intersection_check", "cocycle_value",
    "cohomology", "commutator", "custom_group", "custom_points",
    "cyclic_group", "deduplicate_points", "enumerate_moduli",
    "evaluate_images", "evaluate_word", "exactness_residual",
    "fibre_tangent_basis", "find_conjugator", "format_word",
    "fox_derivative", "fox_jacobian_at", "free_group", "full_system",
    "generator", "goldman_form", "gram_matrix", "handlebody_representation",
    "heegaard_mv_torsion", "heegaard_representations", "is_cocycle",
    "lens_heegaard", "mayer_vietoris_torsion", "parse_word",
    "polarization_map", "polish_images", "presentation_from_json",
    "presentation_to_json", "pullback_cocycle", "relator_residual",
    "representation_from_json", "representation_to_json",
    "restrict_coefficients", "restricted_system", "s1xs2_heegaard",
    "sample_stratum", "sample_surface_representation", "sequence_torsion",
    "stabilizer_axis", "stationary_phase_sum", "stratum_tangent_dim",
    "stratum_volume", "su2", "surface_group", "system_cohomology",
    "t3_presentation", "trace_derivative", "trace_fingerprint",
]
