from odokit.ktheory.groups import AbelianGroup, cyclic, free, invariant_factors
from odokit.ktheory.localized import LocalizedRing, LocalizedScalar, prime_factors
from odokit.ktheory.snf import SNF, IntMatrix, clear_denominators, localized_divisors, smith_normal_form
from odokit.ktheory.spectral import (
    CAVEAT,
    EVEN,
    ODD,
    ConjectureGroups,
    NotAComplexError,
    OutOfHypothesisError,
    SpectralPage,
    action_on_K0,
    build_d1,
    check_stabilization,
    closed_form_e2,
    cohomology,
    conjecture_groups,
    e1_page,
    e2_page,
    numerology_check,
    stabilized_k_groups,
    total_by_parity,
    wedge_append,
    wedge_basis,
)

__all__ = [
    "AbelianGroup",
    "CAVEAT",
    "ConjectureGroups",
    "EVEN",
    "IntMatrix",
    "LocalizedRing",
    "LocalizedScalar",
    "NotAComplexError",
    "ODD",
    "OutOfHypothesisError",
    "SNF",
    "SpectralPage",
    "action_on_K0",
    "build_d1",
    "check_stabilization",
    "clear_denominators",
    "closed_form_e2",
    "cohomology",
    "conjecture_groups",
    "cyclic",
    "e1_page",
    "e2_page",
    "free",
    "invariant_factors",
    "localized_divisors",
    "numerology_check",
    "prime_factors",
    "smith_normal_form",
    "stabilized_k_groups",
    "total_by_parity",
    "wedge_append",
    "wedge_basis",
]
