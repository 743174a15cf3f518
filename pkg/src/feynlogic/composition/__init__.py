"""
Composite-amplitude law.

Numerical evidence that the only admissible rule for the amplitude of a
composite sequence is the product of its parts' amplitudes.
"""

from .candidates import (
    BINARY_CANDIDATES,
    CONJUGATE,
    CONJUGATE_LEFT,
    CONJUGATE_PRODUCT,
    CONSTANT_HALF,
    IDENTITY,
    LEFT_PROJECTION,
    PRODUCT,
    SQUARE,
    SQUARED_PRODUCT,
    UNARY_CANDIDATES,
    ZERO,
    ZERO_MAP,
    BinaryCandidate,
    UnaryCandidate,
    composite_amplitude,
    left_restriction,
    right_restriction,
)

from .axioms import (
    Axiom,
    AxiomCheck,
    ViolationReport,
    candidate_table,
    check_admissibility,
    check_binary_axioms,
    check_factorization,
    check_fixed_point_constraint,
    check_unary_pair,
    evaluate_binary_axioms,
    sample_disk,
)

__all__ = [
    # Candidates
    'BinaryCandidate',
    'UnaryCandidate',
    'composite_amplitude',
    'left_restriction',
    'right_restriction',
    'BINARY_CANDIDATES',
    'UNARY_CANDIDATES',
    'PRODUCT',
    'CONJUGATE_PRODUCT',
    'CONJUGATE_LEFT',
    'SQUARED_PRODUCT',
    'LEFT_PROJECTION',
    'ZERO',
    'CONSTANT_HALF',
    'IDENTITY',
    'CONJUGATE',
    'ZERO_MAP',
    'SQUARE',

    # Axiom checks
    'Axiom',
    'AxiomCheck',
    'ViolationReport',
    'candidate_table',
    'check_admissibility',
    'check_binary_axioms',
    'check_factorization',
    'check_fixed_point_constraint',
    'check_unary_pair',
    'evaluate_binary_axioms',
    'sample_disk',
]
