"""
Outcomes and measurements.

Outcomes are index-sets over the atomic outcomes {1..N} of a measurement, so
coarse-graining is set union and a trivial outcome is the full index-set.
Composite measurements flatten their factor indices in row-major order:
outcome (j, k) of factors with N1, N2 outcomes is index (j - 1) * N2 + k.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Tuple

from ..constants import FACTOR_SEPARATOR
from ..errors import InvalidPartition

logger = logging.getLogger(__name__)

Block = frozenset  # frozenset[int], 1-based atomic indices
Partition = Tuple[frozenset, ...]


class MeasurementKind(str, enum.Enum):
    ATOMIC = "atomic"
    COARSE_GRAINED = "coarse-grained"
    TRIVIAL = "trivial"


def canonical_partition(blocks: Iterable[Iterable[int]], atomic_count: int) -> Partition:
    """
    Validate a partition of {1..N} and return it in canonical order.

    Args:
        blocks: Iterable of index collections
        atomic_count: N, the number of atomic outcomes

    Returns:
        Tuple of frozensets ordered by smallest member

    Raises:
        InvalidPartition: If blocks are empty, overlap, or do not cover {1..N}
    """
    frozen_blocks = [frozenset(int(i) for i in b) for b in blocks]
    if not frozen_blocks:
        raise InvalidPartition("Partition must contain at least one block")
    seen: set[int] = set()
    for block in frozen_blocks:
        if not block:
            raise InvalidPartition("Partition blocks must be nonempty")
        if seen & block:
            raise InvalidPartition(f"Partition blocks overlap on {sorted(seen & block)}")
        seen |= block
    universe = set(range(1, atomic_count + 1))
    if seen != universe:
        missing = sorted(universe - seen)
        extra = sorted(seen - universe)
        raise InvalidPartition(
            f"Partition must cover exactly 1..{atomic_count} (missing {missing}, unexpected {extra})"
        )
    return tuple(sorted(frozen_blocks, key=min))


@dataclass(frozen=True)
class OutcomeId:
    """An outcome of a measurement: a nonempty set of 1-based atomic indices."""

    measurement: str
    indices: frozenset

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(int(i) for i in self.indices))
        if not self.indices:
            raise InvalidPartition(f"Outcome of {self.measurement} has an empty index-set")
        if min(self.indices) < 1:
            raise InvalidPartition(f"Outcome indices of {self.measurement} are 1-based")

    @property
    def is_atomic(self) -> bool:
        return len(self.indices) == 1

    @property
    def atomic_index(self) -> int:
        """The single index of an atomic outcome."""
        if not self.is_atomic:
            raise InvalidPartition(f"Outcome {self.label} of {self.measurement} is not atomic")
        return next(iter(self.indices))

    @property
    def label(self) -> str:
        return "∨".join(str(i) for i in sorted(self.indices))

    def __str__(self) -> str:
        return f"{self.measurement}[{self.label}]"


@dataclass(frozen=True)
class Measurement:
    """
    A measurement with N atomic outcomes and an outcome partition.

    `id` is the lineage: coarse-grained versions of a measurement keep the id
    of the atomic measurement they derive from. `factors` lists the
    (id, N) of the subsystem measurements of a composite measurement; a
    simple measurement is its own single factor.
    """

    id: str
    atomic_count: int
    partition: Partition = ()
    factors: Tuple[Tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        if self.atomic_count < 2:
            raise InvalidPartition(f"Measurement {self.id} needs at least 2 atomic outcomes")
        if not self.partition:
            blocks = [[i] for i in range(1, self.atomic_count + 1)]
        else:
            blocks = self.partition
        object.__setattr__(self, "partition", canonical_partition(blocks, self.atomic_count))
        if not self.factors:
            object.__setattr__(self, "factors", ((self.id, self.atomic_count),))
        elif math.prod(n for _, n in self.factors) != self.atomic_count:
            raise InvalidPartition(
                f"Composite measurement {self.id} factors {self.factors} do not multiply to {self.atomic_count}"
            )

    @classmethod
    def atomic(cls, measurement_id: str, atomic_count: int) -> "Measurement":
        return cls(id=measurement_id, atomic_count=atomic_count)

    @property
    def kind(self) -> MeasurementKind:
        if len(self.partition) == 1:
            return MeasurementKind.TRIVIAL
        if all(len(b) == 1 for b in self.partition):
            return MeasurementKind.ATOMIC
        return MeasurementKind.COARSE_GRAINED

    @property
    def is_atomic(self) -> bool:
        return self.kind is MeasurementKind.ATOMIC

    @property
    def is_trivial(self) -> bool:
        return self.kind is MeasurementKind.TRIVIAL

    @property
    def is_composite(self) -> bool:
        return len(self.factors) > 1

    @property
    def key(self) -> Tuple[str, int, Tuple[Tuple[str, int], ...]]:
        """Identity of the measurement independent of its coarse-graining."""
        return (self.id, self.atomic_count, self.factors)

    def outcome(self, *indices: int) -> OutcomeId:
        """The outcome covering the given atomic indices; must be a block of the partition."""
        out = OutcomeId(self.id, frozenset(indices))
        self.require_block(out)
        return out

    def outcomes(self) -> Tuple[OutcomeId, ...]:
        return tuple(OutcomeId(self.id, b) for b in self.partition)

    def has_block(self, indices: frozenset) -> bool:
        return frozenset(indices) in self.partition

    def require_block(self, outcome: OutcomeId) -> None:
        if outcome.measurement != self.id:
            raise InvalidPartition(f"Outcome {outcome} does not belong to measurement {self.id}")
        if not self.has_block(outcome.indices):
            raise InvalidPartition(
                f"Outcome {outcome.label} is not a block of {self.id}'s partition {self.partition_label}"
            )

    @property
    def partition_label(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.partition) + "}"

    def __str__(self) -> str:
        return f"{self.id}{self.partition_label}"


def is_coarser_or_equal(coarse: Partition, fine: Partition) -> bool:
    """True if every block of `fine` lies inside one block of `coarse`."""
    return all(any(block <= big for big in coarse) for block in fine)


def coarse_grain(measurement: Measurement, blocks: Iterable[Iterable[int]]) -> Measurement:
    """
    Coarse-grain a measurement.

    Args:
        measurement: Measurement to coarse-grain
        blocks: New partition of {1..N}, coarser than or equal to the current one

    Returns:
        Measurement with the same id lineage and the new partition

    Raises:
        InvalidPartition: If blocks are not a partition or are finer somewhere
    """
    partition = canonical_partition(blocks, measurement.atomic_count)
    if not is_coarser_or_equal(partition, measurement.partition):
        raise InvalidPartition(
            f"Partition {partition} is not coarser than {measurement.partition_label} of {measurement.id}"
        )
    if partition == measurement.partition:
        return measurement
    logger.debug(f"Coarse-grained {measurement.id} into {len(partition)} blocks")
    return Measurement(
        id=measurement.id,
        atomic_count=measurement.atomic_count,
        partition=partition,
        factors=measurement.factors,
    )


def trivialize(measurement: Measurement) -> Measurement:
    """The trivial form of a measurement: one block covering every atomic outcome."""
    return coarse_grain(measurement, [range(1, measurement.atomic_count + 1)])


def measurement_with_block(measurement: Measurement, block: frozenset) -> Measurement:
    """The atomic partition with `block` merged into one outcome."""
    blocks = [block] + [frozenset([i]) for i in range(1, measurement.atomic_count + 1) if i not in block]
    return Measurement(
        id=measurement.id,
        atomic_count=measurement.atomic_count,
        partition=tuple(blocks),
        factors=measurement.factors,
    )


# ------------------------------------------------------------------
# Composite outcomes
# ------------------------------------------------------------------


def flatten_index(j: int, k: int, right_count: int) -> int:
    """Row-major flattening of 1-based indices: (j, k) -> (j - 1) * N2 + k."""
    return (j - 1) * right_count + k


def product_block(left: frozenset, right: frozenset, right_count: int) -> frozenset:
    return frozenset(flatten_index(j, k, right_count) for j in left for k in right)


@dataclass(frozen=True)
class CompositeOutcome:
    """A pair of simultaneous outcomes on distinct systems."""

    left: OutcomeId
    right: OutcomeId

    def flatten(self, right_count: int) -> frozenset:
        """Index-set of the composite outcome over the flattened measurement."""
        return product_block(self.left.indices, self.right.indices, right_count)


def composite_id(left_id: str, right_id: str) -> str:
    return f"{left_id}{FACTOR_SEPARATOR}{right_id}"


def compose_measurements(left: Measurement, right: Measurement) -> Measurement:
    """
    Composite of two simultaneous measurements on distinct systems.

    The atomic outcomes are the flattened pairs and the partition is the
    product of the factor partitions.
    """
    n2 = right.atomic_count
    blocks = [product_block(a, b, n2) for a in left.partition for b in right.partition]
    return Measurement(
        id=composite_id(left.id, right.id),
        atomic_count=left.atomic_count * n2,
        partition=tuple(blocks),
        factors=left.factors + right.factors,
    )


def compose_outcomes(left: OutcomeId, right: OutcomeId, right_count: int) -> OutcomeId:
    pair = CompositeOutcome(left, right)
    return OutcomeId(composite_id(left.measurement, right.measurement), pair.flatten(right_count))
