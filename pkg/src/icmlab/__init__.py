"""Exact computational commutative algebra over affine polynomial rings.

The package computes reduced Groebner bases, ideal arithmetic (sums,
products, intersections, colons, saturations, elimination), Krull
dimension, height, associated primes of monomial ideals, grade via
certified regular sequences, and the I-Cohen-Macaulay condition
grade(I, M) + dim M/IM = dim M for cyclic modules M = R/J, together with
randomized suites exercising the structural relations around that
condition.
"""
from .errors import (
    DimensionMismatchError,
    EmptySupportError,
    EngineError,
    IMEqualsMError,
    ImproperIdealError,
    IncompatibleRingError,
    InhomogeneousIdealError,
    NonMonomialError,
    SearchExhaustedError,
    StepLimitExceededError,
    UnknownSuiteError,
    ZeroElementError,
    ZeroLeadingTermError,
    ZeroModuleError,
)
from .ring_core import (
    ELIMINATION,
    GREVLEX,
    LEX,
    FieldSpec,
    Polynomial,
    RingDescriptor,
    TermOrder,
    monomial_compare,
)
from .ideal_engine import (
    DEFAULT_STEP_LIMIT,
    Ideal,
    ReducedGB,
    SaturationResult,
    buchberger,
    divide,
    eliminate,
    extend_ring,
    get_default_step_limit,
    ideal_equal,
    ideal_intersect,
    ideal_product,
    ideal_quotient,
    ideal_quotient_ideal,
    ideal_sum,
    membership,
    normal_form,
    s_polynomial,
    saturate,
    set_default_step_limit,
)
from .invariants import (
    CyclicModule,
    GradeWitness,
    MonomialPrime,
    associated_primes_monomial,
    find_regular_element,
    grade,
    has_regular_element,
    height,
    independent_witness,
    krull_dimension,
    local_dimension,
    minimal_primes_monomial,
    verify_grade_witness,
)
from .icm_checker import (
    IcmReport,
    RelationReport,
    annihilator_transport,
    ass_dimension_check,
    check_grade_height,
    cm_implies_icm_check,
    icm_report,
    is_cohen_macaulay_graded,
    localization_cm_check,
    polynomial_extension_check,
    quotient_transport,
    subideal_transfer_check,
)
from .theorem_lab import (
    SUITE_IDS,
    InstanceSpec,
    SuiteReport,
    gen_instance,
    run_suite,
    run_trial,
    serialize_instance,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_STEP_LIMIT",
    "ELIMINATION",
    "GREVLEX",
    "LEX",
    "SUITE_IDS",
    "CyclicModule",
    "DimensionMismatchError",
    "EmptySupportError",
    "EngineError",
    "FieldSpec",
    "GradeWitness",
    "IMEqualsMError",
    "IcmReport",
    "Ideal",
    "ImproperIdealError",
    "IncompatibleRingError",
    "InhomogeneousIdealError",
    "InstanceSpec",
    "MonomialPrime",
    "NonMonomialError",
    "Polynomial",
    "ReducedGB",
    "RelationReport",
    "RingDescriptor",
    "SaturationResult",
    "SearchExhaustedError",
    "StepLimitExceededError",
    "SuiteReport",
    "TermOrder",
    "UnknownSuiteError",
    "ZeroElementError",
    "ZeroLeadingTermError",
    "ZeroModuleError",
    "annihilator_transport",
    "ass_dimension_check",
    "associated_primes_monomial",
    "buchberger",
    "check_grade_height",
    "cm_implies_icm_check",
    "divide",
    "eliminate",
    "extend_ring",
    "find_regular_element",
    "gen_instance",
    "get_default_step_limit",
    "grade",
    "has_regular_element",
    "height",
    "icm_report",
    "ideal_equal",
    "ideal_intersect",
    "ideal_product",
    "ideal_quotient",
    "ideal_quotient_ideal",
    "ideal_sum",
    "independent_witness",
    "is_cohen_macaulay_graded",
    "krull_dimension",
    "local_dimension",
    "localization_cm_check",
    "membership",
    "minimal_primes_monomial",
    "monomial_compare",
    "normal_form",
    "polynomial_extension_check",
    "quotient_transport",
    "run_suite",
    "run_trial",
    "s_polynomial",
    "saturate",
    "serialize_instance",
    "set_default_step_limit",
    "subideal_transfer_check",
    "verify_grade_witness",
]
