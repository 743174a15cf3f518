"""
Feynman's rules for individual systems.

Amplitudes are computed by propagating an amplitude vector through the
sequence: after each transition the vector is projected onto the observed
outcome's index-set. Projection onto a coarse-grained outcome keeps every
atomic alternative inside it, which is the sum rule; chaining transition
matrices is the product rule. The probability of a sequence is the squared
modulus of its amplitude.

A composite transition is the Kronecker product of its factor transitions,
so the amplitude of a composed sequence is the product of its factor
amplitudes.
"""

from __future__ import annotations

import itertools
import logging
from typing import Iterator, Sequence as Seq, Tuple

import numpy as np

from ..constants import IDENTITY_INTERACTION
from ..errors import NonAtomicEndpoint
from ..logic.outcomes import Measurement, OutcomeId
from ..logic.sequences import Event, Sequence, invert
from .model import AmplitudeModel, ProbabilityTable, table_from_atomic

logger = logging.getLogger(__name__)

Chain = Seq[Tuple[Measurement, str]]


def projector_mask(block: frozenset, dim: int) -> np.ndarray:
    """Boolean mask of the 0-based positions of a 1-based index-set."""
    mask = np.zeros(dim, dtype=bool)
    mask[[i - 1 for i in block]] = True
    return mask


def block_labels(measurement: Measurement) -> np.ndarray:
    """Position of each atomic outcome's block in the measurement's partition."""
    labels = np.empty(measurement.atomic_count, dtype=np.intp)
    for k, block in enumerate(measurement.partition):
        labels[[i - 1 for i in block]] = k
    return labels


def basis_vector(index: int, dim: int) -> np.ndarray:
    """Amplitude vector of the atomic outcome `index` (1-based)."""
    vec = np.zeros(dim, dtype=np.complex128)
    vec[index - 1] = 1.0
    return vec


def propagate(model: AmplitudeModel, seq: Sequence) -> np.ndarray:
    """
    Amplitude vector over the final measurement's atomic outcomes, with every
    intermediate outcome projected in but the final one left open.
    """
    first = seq.initial
    vec = basis_vector(first.outcome.atomic_index, first.measurement.atomic_count)
    last = seq.length - 1
    for k, (interaction, event) in enumerate(zip(seq.interactions, seq.events[1:]), start=1):
        previous = seq.events[k - 1].measurement
        vec = model.transition(previous, event.measurement, interaction) @ vec
        if k < last:
            vec = np.where(projector_mask(event.outcome.indices, vec.shape[0]), vec, 0)
    return vec


def amplitude(model: AmplitudeModel, seq: Sequence) -> complex:
    """
    Amplitude of a sequence.

    Equals the sum over atomic refinements of every coarse-grained interior
    outcome of the product of transition-matrix entries.

    Args:
        model: Amplitude model resolving every adjacent pair
        seq: Sequence with an atomic final outcome

    Returns:
        Complex amplitude

    Raises:
        UnknownTransition: If an adjacent pair does not resolve
        NonAtomicEndpoint: If the final outcome is coarse-grained
    """
    if not seq.final.is_atomic:
        raise NonAtomicEndpoint(
            f"Amplitude needs an atomic final outcome, got {seq.final.outcome}; "
            "use outcome_distribution for coarse final outcomes"
        )
    vec = propagate(model, seq)
    return complex(vec[seq.final.outcome.atomic_index - 1])


def probability(model: AmplitudeModel, seq: Sequence) -> float:
    """Pr(outcomes after the first | first outcome) = |amplitude|²."""
    return float(abs(amplitude(model, seq)) ** 2)


def amplitude_of_inverse(model: AmplitudeModel, seq: Sequence) -> complex:
    """Amplitude of the temporal inverse; equals the conjugate of amplitude(seq)."""
    return amplitude(model, invert(seq))


def outcome_distribution(
    model: AmplitudeModel,
    preparation: Event,
    chain: Chain,
    final: Measurement,
    final_interaction: str = IDENTITY_INTERACTION,
) -> ProbabilityTable:
    """
    Pr(final outcome | preparation).

    Intermediate measurements in `chain` are observed with their own
    partition: probabilities add over the observed outcomes, amplitudes add
    inside each outcome. The alternatives are carried as one matrix of
    amplitude products whose entries between different observed outcomes are
    zeroed at each stage, so branches ending in the same outcome are merged.
    A trivial measurement has a single outcome and leaves the matrix
    untouched.

    Args:
        model: Amplitude model
        preparation: Event with an atomic outcome
        chain: (measurement, interaction into it) for each intermediate step
        final: Final measurement; its partition defines the table's outcomes
        final_interaction: Interaction from the last chain entry into `final`

    Returns:
        ProbabilityTable over the blocks of `final`'s partition
    """
    if not preparation.is_atomic:
        raise NonAtomicEndpoint(f"Preparation outcome {preparation.outcome} must be atomic")
    vec = basis_vector(preparation.outcome.atomic_index, preparation.measurement.atomic_count)
    rho = np.outer(vec, vec.conj())
    previous = preparation.measurement
    for measurement, interaction in chain:
        t = model.transition(previous, measurement, interaction)
        labels = block_labels(measurement)
        rho = np.where(labels[:, None] == labels[None, :], t @ rho @ t.conj().T, 0)
        previous = measurement
        logger.debug(f"After {measurement.id}: {len(measurement.partition)} observed outcomes")
    t = model.transition(previous, final, final_interaction)
    atomic = np.clip(np.einsum("ij,jk,ik->i", t, rho, t.conj()).real, 0.0, None)
    return table_from_atomic(final, atomic)


def refinements(seq: Sequence) -> Iterator[Sequence]:
    """Every sequence obtained by replacing each coarse outcome with one of its atomic indices."""
    choices = [sorted(e.outcome.indices) for e in seq.events]
    for combo in itertools.product(*choices):
        events = []
        for e, i in zip(seq.events, combo):
            m = e.measurement
            atomic = m if m.is_atomic else Measurement(m.id, m.atomic_count, factors=m.factors)
            events.append(Event(e.time, atomic, OutcomeId(m.id, frozenset([i]))))
        yield Sequence(seq.system, tuple(events), seq.interactions)


def sum_rule_residual(model: AmplitudeModel, seq: Sequence) -> float:
    """|amplitude(seq) − Σ amplitude(refinement)| over the atomic refinements."""
    total = sum(amplitude(model, r) for r in refinements(seq))
    return float(abs(amplitude(model, seq) - total))
