"""Finite p-group engine with a Beauville-structure analyzer."""

from .pcgroup import (
    ConsistencyReport,
    InconsistentPresentationError,
    PcPresentation,
    check_consistency,
    format_element,
    format_word,
    parse_presentation,
    parse_word,
    random_element,
)
from .structure import (
    BudgetExceededError,
    CentralSeries,
    LatticeProfile,
    PlaceOfAgemoReport,
    Subgroup,
    ThinReport,
    agemo,
    center,
    derived_subgroup,
    exponent,
    frattini,
    gamma,
    generated_subgroup,
    is_maximal_class,
    is_metabelian,
    is_thin,
    lattice_profile,
    lower_central_series,
    maximal_subgroups,
    nilpotency_class,
    normal_closure,
    omega1,
    upper_central_series,
    verify_place_of_agemo,
)
from .congruence import (
    PowerCongruenceReport,
    QuadraticPair,
    coefficient_closed_form,
    coefficient_integer,
    collision_bound_check,
    companion_check,
    coincidence_corollary_check,
    deep_commutator_pair,
    find_quadratic_pairs,
    geometric_half_sum,
    is_quadratic_residue,
    literal_coefficient,
    maximal_power_classes,
    power_class_key,
    power_congruence_check,
    product_power_identity_check,
    rational_exponent,
    smallest_nonresidue,
    verify_quadratic_pair,
)
from .beauville import (
    BeauvilleCertificate,
    BeauvilleVerdict,
    OmegaReport,
    TheoremAClassification,
    abelian_invariants,
    beauville,
    catanese_criterion,
    classify_theorem_a,
    exhaustive_beauville,
    generates,
    guided_beauville,
    omega_negative_test,
    sigma_brute,
    socle_key,
    triple_fingerprint,
    verify_beauville_structure,
)
from .catalog import (
    AnalysisReport,
    BUILTIN_IDS,
    CatalogEntry,
    CatalogError,
    UnknownTargetError,
    analyze,
    builtin,
    catalog_entries,
    certificate_kv,
    certificate_lines,
    check_structural_expects,
    data_entry_paths,
    ingest,
    place_depth,
    report_kv,
    report_lines,
    resolve,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BUILTIN_IDS",
    "BeauvilleCertificate",
    "BeauvilleVerdict",
    "BudgetExceededError",
    "CatalogEntry",
    "CatalogError",
    "CentralSeries",
    "ConsistencyReport",
    "InconsistentPresentationError",
    "LatticeProfile",
    "OmegaReport",
    "PcPresentation",
    "PlaceOfAgemoReport",
    "PowerCongruenceReport",
    "QuadraticPair",
    "Subgroup",
    "UnknownTargetError",
    "TheoremAClassification",
    "ThinReport",
    "abelian_invariants",
    "agemo",
    "analyze",
    "beauville",
    "builtin",
    "catalog_entries",
    "catanese_criterion",
    "center",
    "certificate_kv",
    "certificate_lines",
    "check_structural_expects",
    "check_consistency",
    "classify_theorem_a",
    "coefficient_closed_form",
    "coefficient_integer",
    "coincidence_corollary_check",
    "collision_bound_check",
    "companion_check",
    "data_entry_paths",
    "deep_commutator_pair",
    "derived_subgroup",
    "exhaustive_beauville",
    "exponent",
    "find_quadratic_pairs",
    "format_element",
    "format_word",
    "frattini",
    "gamma",
    "generated_subgroup",
    "generates",
    "geometric_half_sum",
    "guided_beauville",
    "ingest",
    "is_maximal_class",
    "is_metabelian",
    "is_quadratic_residue",
    "is_thin",
    "lattice_profile",
    "literal_coefficient",
    "lower_central_series",
    "maximal_power_classes",
    "maximal_subgroups",
    "nilpotency_class",
    "normal_closure",
    "omega1",
    "omega_negative_test",
    "parse_presentation",
    "parse_word",
    "place_depth",
    "power_class_key",
    "power_congruence_check",
    "product_power_identity_check",
    "random_element",
    "rational_exponent",
    "report_kv",
    "report_lines",
    "resolve",
    "sigma_brute",
    "smallest_nonresidue",
    "socle_key",
    "triple_fingerprint",
    "upper_central_series",
    "verify_beauville_structure",
    "verify_place_of_agemo",
    "verify_quadratic_pair",
]
