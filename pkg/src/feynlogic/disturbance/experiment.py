"""
Experiment layouts for the no-disturbance checks.

An experiment is a preparation (atomic outcome of a first measurement)
followed by stages; each stage is a measurement together with the
interaction acting on the interval that leads into it. The last stage is
the measurement whose outcome probabilities are tabulated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from ..constants import IDENTITY_INTERACTION
from ..errors import InvalidPosition, NonAtomicEndpoint, SequenceError
from ..logic.outcomes import Measurement, OutcomeId, trivialize
from ..logic.sequences import Event

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Stage:
    measurement: Measurement
    interaction: str = IDENTITY_INTERACTION

    def __str__(self) -> str:
        return f"-{self.interaction}-> {self.measurement}"


@dataclass(frozen=True)
class Experiment:
    """
    Attributes:
        preparation: Event whose atomic outcome conditions every probability
        stages: Intermediate measurements followed by the final measurement
        system: System id
    """

    preparation: Event
    stages: Tuple[Stage, ...]
    system: str = "S"

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        if not self.preparation.is_atomic:
            raise NonAtomicEndpoint(f"Preparation outcome {self.preparation.outcome} must be atomic")
        if not self.stages:
            raise SequenceError("Experiment needs at least one measurement after the preparation")

    @classmethod
    def build(
        cls,
        preparation: Measurement,
        outcome: int,
        stages,
        system: str = "S",
    ) -> "Experiment":
        """
        Convenience constructor.

        Args:
            preparation: First measurement (atomic)
            outcome: 1-based atomic outcome of the preparation
            stages: Iterable of Stage or (measurement, interaction) pairs
            system: System id
        """
        event = Event(0, preparation, OutcomeId(preparation.id, frozenset([outcome])))
        built = tuple(s if isinstance(s, Stage) else Stage(*s) for s in stages)
        return cls(event, built, system)

    @property
    def intermediate(self) -> Tuple[Stage, ...]:
        return self.stages[:-1]

    @property
    def final(self) -> Stage:
        return self.stages[-1]

    @property
    def measurements(self) -> Tuple[Measurement, ...]:
        return (self.preparation.measurement,) + tuple(s.measurement for s in self.stages)

    def chain(self):
        """(measurement, interaction) pairs of the intermediate stages."""
        return [(s.measurement, s.interaction) for s in self.intermediate]

    def __str__(self) -> str:
        return f"{self.preparation.outcome} " + " ".join(str(s) for s in self.stages)


def insert_trivial(
    experiment: Experiment, position: int, measurement: Optional[Measurement] = None
) -> Experiment:
    """
    Insert a trivial measurement immediately before measurement `position`.

    Positions count measurements from the preparation (0) to the final
    measurement (n); the insertion must fall strictly between two of them,
    so 1 <= position <= n. The interaction of the interval keeps acting
    before the trivial measurement, which is followed by a zero-duration
    identity interval.

    Args:
        experiment: Layout to extend
        position: Index of the measurement the trivial one precedes
        measurement: Measurement to trivialize (defaults to the one at `position`)

    Returns:
        New experiment with one more stage

    Raises:
        InvalidPosition: If the position is at or outside an endpoint
    """
    n = len(experiment.stages)
    if not 1 <= position <= n:
        raise InvalidPosition(f"Trivial measurement must go strictly between two measurements (1..{n}), got {position}")
    stages = list(experiment.stages)
    following = stages[position - 1]
    trivial = trivialize(measurement or following.measurement)
    stages[position - 1 : position] = [
        Stage(trivial, following.interaction),
        Stage(following.measurement, IDENTITY_INTERACTION),
    ]
    logger.debug(f"Inserted trivial {trivial.id} before position {position}")
    return Experiment(experiment.preparation, tuple(stages), experiment.system)


def repeat_layout(
    repeated: Measurement,
    middle: Measurement,
    outcome: int = 1,
    interaction: str = IDENTITY_INTERACTION,
    system: str = "S",
) -> Experiment:
    """
    L, then M̃, then L again: the repeated measurement with a trivialized
    measurement in between.
    """
    return Experiment.build(
        repeated,
        outcome,
        [Stage(trivialize(middle), interaction), Stage(repeated, IDENTITY_INTERACTION)],
        system,
    )
