"""
Random generators for valid sequences and operand tuples.

Used by the identity suite and by the property tests. Every generator takes
a numpy Generator so results are reproducible from a seed.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..constants import IDENTITY_INTERACTION
from .outcomes import Measurement
from .sequences import Event, Sequence, event_for

logger = logging.getLogger(__name__)


def random_block(rng: np.random.Generator, atomic_count: int, size: Optional[int] = None) -> frozenset:
    """A random nonempty subset of {1..N}."""
    if size is None:
        size = int(rng.integers(1, atomic_count + 1))
    chosen = rng.choice(np.arange(1, atomic_count + 1), size=size, replace=False)
    return frozenset(int(i) for i in chosen)


def disjoint_blocks(rng: np.random.Generator, atomic_count: int, count: int) -> List[frozenset]:
    """`count` pairwise disjoint nonempty subsets of {1..N}; requires count <= N."""
    order = [int(i) for i in rng.permutation(np.arange(1, atomic_count + 1))]
    total = int(rng.integers(count, atomic_count + 1))
    cuts: List[int] = []
    if count > 1:
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, total), size=count - 1, replace=False))
    bounds = [0] + cuts + [total]
    return [frozenset(order[lo:hi]) for lo, hi in zip(bounds, bounds[1:])]


@dataclass
class SequenceFactory:
    """
    Draws random valid sequences over a fixed catalogue of atomic measurements.

    Attributes:
        rng: Source of randomness
        catalogue: Atomic measurements to draw from
        interactions: Interaction ids to draw from
        coarse_rate: Probability that an interior outcome is coarse-grained
    """

    rng: np.random.Generator
    catalogue: Tuple[Measurement, ...] = ()
    interactions: Tuple[str, ...] = (IDENTITY_INTERACTION, "I1", "I2")
    coarse_rate: float = 0.3
    _systems: itertools.count = field(default_factory=itertools.count, repr=False)

    def __post_init__(self):
        if not self.catalogue:
            self.catalogue = tuple(Measurement.atomic(f"M{k}", n) for k, n in enumerate((2, 3, 3, 4)))

    def fresh_system(self) -> str:
        return f"S{next(self._systems)}"

    def pick_measurement(self, min_count: int = 2) -> Measurement:
        options = [m for m in self.catalogue if m.atomic_count >= min_count]
        return options[int(self.rng.integers(len(options)))]

    def pick_interaction(self) -> str:
        return self.interactions[int(self.rng.integers(len(self.interactions)))]

    def atomic_event(self, time: int, measurement: Optional[Measurement] = None) -> Event:
        m = measurement or self.pick_measurement()
        return event_for(time, m, random_block(self.rng, m.atomic_count, size=1))

    def interior_event(self, time: int) -> Event:
        m = self.pick_measurement()
        if self.rng.random() < self.coarse_rate:
            return event_for(time, m, random_block(self.rng, m.atomic_count))
        return self.atomic_event(time, m)

    def times(self, length: int, start: Optional[int] = None) -> List[int]:
        """Strictly increasing integer times, random gaps of 1 to 3."""
        if start is None:
            start = int(self.rng.integers(-3, 4))
        gaps = self.rng.integers(1, 4, size=length - 1)
        return [start] + [start + int(g) for g in np.cumsum(gaps)]

    def times_ending(self, length: int, end: int) -> List[int]:
        times = self.times(length, 0)
        return [t - times[-1] + end for t in times]

    def sequence(
        self,
        length: Optional[int] = None,
        system: Optional[str] = None,
        times: Optional[List[int]] = None,
        first: Optional[Event] = None,
        last: Optional[Event] = None,
    ) -> Sequence:
        """
        A random valid sequence with atomic endpoints.

        Args:
            length: Number of events (random 2..5 when omitted)
            system: System id (fresh when omitted)
            times: Event times; drawn to fit `first`/`last` when omitted
            first: Initial event to use
            last: Final event to use
        """
        if times is None:
            if length is None:
                length = int(self.rng.integers(2, 6))
            if last is not None:
                times = self.times_ending(length, last.time)
            else:
                times = self.times(length, first.time if first is not None else None)
        events = [first or self.atomic_event(times[0])]
        events += [self.interior_event(t) for t in times[1:-1]]
        events.append(last or self.atomic_event(times[-1]))
        interactions = tuple(self.pick_interaction() for _ in range(len(times) - 1))
        return Sequence(system or self.fresh_system(), tuple(events), interactions)

    # ------------------------------------------------------------------
    # Operand tuples
    # ------------------------------------------------------------------

    def series_chain(self, count: int) -> List[Sequence]:
        """`count` sequences on one system where each ends where the next begins."""
        system = self.fresh_system()
        chain = [self.sequence(system=system)]
        for _ in range(count - 1):
            chain.append(self.sequence(system=system, first=chain[-1].final))
        return chain

    def parallel_family(self, count: int, base: Optional[Sequence] = None) -> List[Sequence]:
        """
        `count` sequences differing only at one interior position, with
        pairwise disjoint outcomes there.
        """
        if base is None:
            base = self.sequence(length=int(self.rng.integers(3, 6)))
        k = int(self.rng.integers(1, base.length - 1))
        m = self.pick_measurement(min_count=count)
        blocks = disjoint_blocks(self.rng, m.atomic_count, count)
        t = base.events[k].time
        return [base.with_event(k, event_for(t, m, block)) for block in blocks]

    def left_distributive(self) -> Tuple[Sequence, Sequence, Sequence]:
        """(A, B, C) with A ∙ (B ∨ C) defined."""
        a = self.sequence()
        base = self.sequence(length=int(self.rng.integers(3, 6)), system=a.system[0], first=a.final)
        b, c = self.parallel_family(2, base)
        return a, b, c

    def right_distributive(self) -> Tuple[Sequence, Sequence, Sequence]:
        """(A, B, C) with (B ∨ C) ∙ A defined."""
        a = self.sequence()
        base = self.sequence(length=int(self.rng.integers(3, 6)), system=a.system[0], last=a.initial)
        b, c = self.parallel_family(2, base)
        return a, b, c

    def simultaneous(self, count: int, length: Optional[int] = None) -> List[Sequence]:
        """`count` sequences on distinct systems sharing event times."""
        if length is None:
            length = int(self.rng.integers(2, 5))
        times = self.times(length)
        return [self.sequence(times=times) for _ in range(count)]

    def composition_distributive(self) -> Tuple[Sequence, Sequence, Sequence]:
        """(A, B, C) on distinct systems with B ∨ C defined and all times equal."""
        times = self.times(int(self.rng.integers(3, 6)))
        a = self.sequence(times=times)
        b, c = self.parallel_family(2, self.sequence(times=times))
        return a, b, c

    def interchange(self) -> Tuple[Sequence, Sequence, Sequence, Sequence]:
        """(A, B, C, D) with (A ∙ B) ⊙ (C ∙ D) defined."""
        first = self.times(int(self.rng.integers(2, 4)))
        second = self.times(int(self.rng.integers(2, 4)), first[-1])
        a = self.sequence(times=first)
        b = self.sequence(times=second, system=a.system[0], first=a.final)
        c = self.sequence(times=first)
        d = self.sequence(times=second, system=c.system[0], first=c.final)
        return a, b, c, d


def default_factory(seed: int, catalogue: Optional[Dict[str, int]] = None) -> SequenceFactory:
    rng = np.random.default_rng(seed)
    if catalogue is None:
        return SequenceFactory(rng)
    measurements = tuple(Measurement.atomic(name, n) for name, n in catalogue.items())
    return SequenceFactory(rng, catalogue=measurements)
