"""
Measurement sequences and the three combination operators.

A sequence is the record of one experimental run: events (time, measurement,
outcome) on a system, with one interaction label per interval between
consecutive events. Sequences combine in series (shared atomic junction),
in parallel (one interior outcome coarse-grained) and by composition
(simultaneous sequences on distinct systems).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence as Seq, Tuple, Union

from ..constants import FACTOR_SEPARATOR, IDENTITY_INTERACTION, INVERSE_SUFFIX
from ..errors import (
    LengthMismatch,
    MismatchedJunction,
    NonAtomicEndpoint,
    NotParallelCompatible,
    SameSystem,
    SequenceError,
    TimeMismatch,
)
from .outcomes import (
    Measurement,
    OutcomeId,
    canonical_partition,
    compose_measurements,
    compose_outcomes,
    measurement_with_block,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Event:
    """
    One entry of a sequence.

    Equality compares time, measurement identity and outcome index-set. The
    partition of the measurement is bookkeeping for which outcomes the
    detector separates and does not take part in equality.
    """

    time: int
    measurement: Measurement
    outcome: OutcomeId

    def __post_init__(self):
        object.__setattr__(self, "time", int(self.time))
        self.measurement.require_block(self.outcome)

    @property
    def key(self):
        return (self.time, self.measurement.key, self.outcome.indices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Event):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def is_atomic(self) -> bool:
        return self.outcome.is_atomic

    def __str__(self) -> str:
        return f"{self.outcome}@{self.time}"


def event_for(time: int, measurement: Measurement, block: frozenset) -> Event:
    """Event observing `block`, coarse-graining the measurement when `block` is not already an outcome."""
    m = measurement if measurement.has_block(block) else measurement_with_block(measurement, block)
    return Event(time, m, OutcomeId(m.id, block))


@dataclass(frozen=True)
class Sequence:
    """
    A measurement sequence on a (possibly composite) system.

    Attributes:
        system: Tuple of system ids; a single system is a 1-tuple
        events: Events with strictly increasing times, at least two
        interactions: One interaction id per interval between events
    """

    system: Tuple[str, ...]
    events: Tuple[Event, ...]
    interactions: Tuple[str, ...]

    def __post_init__(self):
        system = (self.system,) if isinstance(self.system, str) else tuple(self.system)
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "interactions", tuple(self.interactions))
        if not system:
            raise SequenceError("Sequence must name at least one system")
        if len(set(system)) != len(system):
            raise SameSystem(f"Sequence system {system} repeats a subsystem")
        if len(self.events) < 2:
            raise SequenceError(f"Sequence needs at least 2 events, got {len(self.events)}")
        if len(self.interactions) != len(self.events) - 1:
            raise SequenceError(
                f"Sequence with {len(self.events)} events needs {len(self.events) - 1} interactions, "
                f"got {len(self.interactions)}"
            )
        times = [e.time for e in self.events]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise SequenceError(f"Event times must be strictly increasing, got {times}")
        if not self.events[0].is_atomic:
            raise NonAtomicEndpoint(f"First outcome {self.events[0].outcome} must be atomic")

    @property
    def length(self) -> int:
        return len(self.events)

    @property
    def times(self) -> Tuple[int, ...]:
        return tuple(e.time for e in self.events)

    @property
    def measurements(self) -> Tuple[Measurement, ...]:
        return tuple(e.measurement for e in self.events)

    @property
    def initial(self) -> Event:
        return self.events[0]

    @property
    def final(self) -> Event:
        return self.events[-1]

    def outcome_at(self, k: int) -> OutcomeId:
        return self.events[k].outcome

    def with_event(self, k: int, event: Event) -> "Sequence":
        events = list(self.events)
        events[k] = event
        return Sequence(self.system, tuple(events), self.interactions)

    def __str__(self) -> str:
        parts = [str(self.events[0])]
        for interaction, event in zip(self.interactions, self.events[1:]):
            parts.append(f"-{interaction}->")
            parts.append(str(event))
        return f"{'⊗'.join(self.system)}: " + " ".join(parts)


def sequence_from_outcomes(
    system: Union[str, Tuple[str, ...]],
    measurements: Seq[Measurement],
    outcomes: Seq[Union[int, Iterable[int]]],
    interactions: Optional[Seq[str]] = None,
    times: Optional[Seq[int]] = None,
) -> Sequence:
    """
    Build a sequence from measurements and 1-based outcome indices.

    Args:
        system: System id (or tuple of ids)
        measurements: Measurement at each position
        outcomes: An atomic index or a collection of indices at each position
        interactions: Interaction per interval (defaults to identity)
        times: Event times (defaults to 0, 1, 2, ...)

    Returns:
        The validated Sequence
    """
    if len(measurements) != len(outcomes):
        raise SequenceError(
            f"Got {len(measurements)} measurements but {len(outcomes)} outcomes"
        )
    if times is None:
        times = range(len(measurements))
    if interactions is None:
        interactions = [IDENTITY_INTERACTION] * (len(measurements) - 1)
    events = []
    for t, m, o in zip(times, measurements, outcomes):
        indices = frozenset([o]) if isinstance(o, int) else frozenset(o)
        events.append(event_for(t, m, indices))
    return Sequence(system, tuple(events), tuple(interactions))


# ------------------------------------------------------------------
# Series
# ------------------------------------------------------------------


def series(a: Sequence, b: Sequence) -> Sequence:
    """
    Series combination A ∙ B.

    Args:
        a: Sequence whose final event is the junction
        b: Sequence whose initial event is the junction

    Returns:
        Concatenation of A and B with the junction event appearing once

    Raises:
        MismatchedJunction: If the systems or the junction events differ
        NonAtomicEndpoint: If the junction or B's final outcome is coarse-grained
    """
    if a.system != b.system:
        raise MismatchedJunction(f"Series of sequences on different systems {a.system} and {b.system}")
    if a.final != b.initial:
        raise MismatchedJunction(f"Junction events differ: {a.final} vs {b.initial}")
    if not a.final.is_atomic:
        raise NonAtomicEndpoint(f"Junction outcome {a.final.outcome} must be atomic")
    if not b.final.is_atomic:
        raise NonAtomicEndpoint(f"Final outcome {b.final.outcome} of the second operand must be atomic")
    return Sequence(a.system, a.events + b.events[1:], a.interactions + b.interactions)


# ------------------------------------------------------------------
# Parallel
# ------------------------------------------------------------------


def _merged_measurement(measurement: Measurement, union: frozenset) -> Measurement:
    """Partition keeping blocks disjoint from `union`, with `union` as one block."""
    blocks = [b for b in measurement.partition if not (b & union)]
    covered = set(union).union(*blocks)
    blocks.append(union)
    blocks.extend(frozenset([i]) for i in range(1, measurement.atomic_count + 1) if i not in covered)
    partition = canonical_partition(blocks, measurement.atomic_count)
    return Measurement(
        id=measurement.id,
        atomic_count=measurement.atomic_count,
        partition=partition,
        factors=measurement.factors,
    )


def parallel_position(a: Sequence, b: Sequence) -> int:
    """
    Position at which two parallel-compatible sequences differ.

    Raises:
        NotParallelCompatible: If they do not differ at exactly one interior
            event with disjoint outcomes of the same measurement
    """
    if a.system != b.system or a.interactions != b.interactions or a.length != b.length:
        raise NotParallelCompatible("Parallel operands must share system, interactions and length")
    diffs = [k for k, (x, y) in enumerate(zip(a.events, b.events)) if x != y]
    if len(diffs) != 1:
        raise NotParallelCompatible(f"Parallel operands differ at {len(diffs)} events, expected exactly 1")
    k = diffs[0]
    if k == 0 or k == a.length - 1:
        raise NotParallelCompatible(f"Parallel operands differ at endpoint position {k}")
    x, y = a.events[k], b.events[k]
    if x.time != y.time or x.measurement.key != y.measurement.key:
        raise NotParallelCompatible(f"Events {x} and {y} are not outcomes of the same measurement")
    if x.outcome.indices & y.outcome.indices:
        raise NotParallelCompatible(f"Outcomes {x.outcome} and {y.outcome} overlap")
    return k


def parallel(a: Sequence, b: Sequence) -> Sequence:
    """
    Parallel combination A ∨ B.

    Returns:
        A with its differing interior outcome replaced by the union of both

    Raises:
        NotParallelCompatible: See parallel_position
    """
    k = parallel_position(a, b)
    x, y = a.events[k], b.events[k]
    union = x.outcome.indices | y.outcome.indices
    measurement = _merged_measurement(x.measurement, union)
    merged = Event(x.time, measurement, OutcomeId(measurement.id, union))
    return a.with_event(k, merged)


# ------------------------------------------------------------------
# Composition
# ------------------------------------------------------------------


def compose_interactions(left: str, right: str) -> str:
    return f"{left}{FACTOR_SEPARATOR}{right}"


def compose(a: Sequence, b: Sequence) -> Sequence:
    """
    Composition A ⊙ B of simultaneous sequences on distinct systems.

    The k-th outcome of the result is the composite of the k-th outcomes,
    flattened row-major over the composite measurement.

    Raises:
        LengthMismatch: If the sequences have different lengths
        TimeMismatch: If event times differ
        SameSystem: If the systems overlap
    """
    if a.length != b.length:
        raise LengthMismatch(f"Cannot compose sequences of length {a.length} and {b.length}")
    if a.times != b.times:
        raise TimeMismatch(f"Cannot compose sequences with times {a.times} and {b.times}")
    if set(a.system) & set(b.system):
        raise SameSystem(f"Cannot compose sequences sharing systems {sorted(set(a.system) & set(b.system))}")
    events = []
    for x, y in zip(a.events, b.events):
        measurement = compose_measurements(x.measurement, y.measurement)
        outcome = compose_outcomes(x.outcome, y.outcome, y.measurement.atomic_count)
        events.append(Event(x.time, measurement, outcome))
    interactions = tuple(compose_interactions(i, j) for i, j in zip(a.interactions, b.interactions))
    return Sequence(a.system + b.system, tuple(events), interactions)


# ------------------------------------------------------------------
# Temporal inversion
# ------------------------------------------------------------------


def invert_interaction(interaction: str) -> str:
    """Toggle the inverse marker on every factor; the identity is its own inverse."""
    factors = []
    for factor in interaction.split(FACTOR_SEPARATOR):
        if factor == IDENTITY_INTERACTION:
            factors.append(factor)
        elif factor.endswith(INVERSE_SUFFIX):
            factors.append(factor[: -len(INVERSE_SUFFIX)])
        else:
            factors.append(factor + INVERSE_SUFFIX)
    return FACTOR_SEPARATOR.join(factors)


def invert(a: Sequence) -> Sequence:
    """
    Temporal inverse of a sequence.

    Events are reversed with times mirrored (t -> -t) and interactions are
    reversed and inverted.

    Mirroring keeps times strictly increasing along the inverse, so
    invert(series(A, B)) == series(invert(B), invert(A)) and invert is its own
    inverse.

    Raises:
        NonAtomicEndpoint: If the final outcome is coarse-grained, since it
            becomes the first outcome of the inverse
    """
    if not a.final.is_atomic:
        raise NonAtomicEndpoint(
            f"Cannot invert a sequence whose final outcome {a.final.outcome} is coarse-grained"
        )
    events = tuple(Event(-e.time, e.measurement, e.outcome) for e in reversed(a.events))
    interactions = tuple(invert_interaction(i) for i in reversed(a.interactions))
    return Sequence(a.system, events, interactions)

