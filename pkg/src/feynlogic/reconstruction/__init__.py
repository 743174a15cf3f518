"""
Reconstruction of the finite-dimensional quantum formalism from an amplitude model.

States, transformation matrices, prepared states and the Born rule,
Hermitian measurement operators, change of representation, unitary
evolution and tensor-product composite states.
"""

from .states import (
    EvolutionOperator,
    StateVector,
    TransformationMatrix,
    born_probability,
    change_representation,
    compose_states,
    evolution_operator,
    evolve,
    prepared_states,
    self_transformation,
    state_after_preparation,
    transformation_matrix,
)

from .operators import (
    MeasurementOperator,
    conjugate_operator,
    expectation,
    measurement_operator,
    outcome_probabilities,
    transformation_from_operator,
)

from .summary import summary_checks

__all__ = [
    # States and transformations
    'EvolutionOperator',
    'StateVector',
    'TransformationMatrix',
    'born_probability',
    'change_representation',
    'compose_states',
    'evolution_operator',
    'evolve',
    'prepared_states',
    'self_transformation',
    'state_after_preparation',
    'transformation_matrix',

    # Operators
    'MeasurementOperator',
    'conjugate_operator',
    'expectation',
    'measurement_operator',
    'outcome_probabilities',
    'transformation_from_operator',

    # Checks
    'summary_checks',
]
