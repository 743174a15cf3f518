"""
Amplitude calculus.

Houses the amplitude model (transition matrices between atomic measurements)
and Feynman's sum, product and probability rules.
"""

from .model import (
    AmplitudeModel,
    ProbabilityTable,
    check_closure_consistency,
    random_model,
    table_from_atomic,
    unitarity_checks,
)

from .engine import (
    amplitude,
    amplitude_of_inverse,
    basis_vector,
    outcome_distribution,
    probability,
    propagate,
    refinements,
    sum_rule_residual,
)

__all__ = [
    # Model
    'AmplitudeModel',
    'ProbabilityTable',
    'check_closure_consistency',
    'random_model',
    'table_from_atomic',
    'unitarity_checks',

    # Rules
    'amplitude',
    'amplitude_of_inverse',
    'basis_vector',
    'outcome_distribution',
    'probability',
    'propagate',
    'refinements',
    'sum_rule_residual',
]
