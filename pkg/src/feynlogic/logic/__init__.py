"""
Experimental logic.

Outcomes, measurements and measurement sequences, together with the series,
parallel and composition operators and temporal inversion.

Quick Start:
    >>> from feynlogic.logic import Measurement, sequence_from_outcomes, series
    >>> L, M, N = (Measurement.atomic(x, 2) for x in "LMN")
    >>> a = sequence_from_outcomes("S", [L, M], [1, 2], times=[0, 1])
    >>> b = sequence_from_outcomes("S", [M, N], [2, 1], times=[1, 2])
    >>> series(a, b).length
    3
"""

from .outcomes import (
    CompositeOutcome,
    Measurement,
    MeasurementKind,
    OutcomeId,
    canonical_partition,
    coarse_grain,
    compose_measurements,
    compose_outcomes,
    flatten_index,
    measurement_with_block,
    trivialize,
)

from .sequences import (
    Event,
    Sequence,
    compose,
    event_for,
    invert,
    invert_interaction,
    parallel,
    sequence_from_outcomes,
    series,
)

from .sampling import SequenceFactory, default_factory

from .identities import IDENTITIES, check_identity, run_identity_suite

__all__ = [
    # Outcomes
    'CompositeOutcome',
    'Measurement',
    'MeasurementKind',
    'OutcomeId',
    'canonical_partition',
    'coarse_grain',
    'compose_measurements',
    'compose_outcomes',
    'flatten_index',
    'measurement_with_block',
    'trivialize',

    # Sequences
    'Event',
    'Sequence',
    'compose',
    'event_for',
    'invert',
    'invert_interaction',
    'parallel',
    'sequence_from_outcomes',
    'series',

    # Identity suite
    'SequenceFactory',
    'default_factory',
    'IDENTITIES',
    'check_identity',
    'run_identity_suite',
]
