"""
Discretized configuration-space paths.

A path records K + 1 (time, position) samples. Its inverse runs the same
samples backwards in time and carries orientation −1, so every segment of
an inverted path has negative signed duration but positive length in time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import DegenerateSegment, MismatchedJunction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathSpec:
    """
    A discretized path.

    Attributes:
        positions: Configuration values x_0..x_K
        times: Sample times t_0..t_K, increasing along the orientation
        orientation: +1 for a forward path, −1 for a time-inverted one
    """

    positions: Tuple[float, ...]
    times: Tuple[float, ...]
    orientation: int = 1

    def __post_init__(self):
        positions = tuple(float(x) for x in self.positions)
        times = tuple(float(t) for t in self.times)
        if len(positions) != len(times):
            raise ValueError(f"Path has {len(positions)} positions but {len(times)} times")
        if len(positions) < 2:
            raise ValueError("A path needs at least one segment")
        if self.orientation not in (1, -1):
            raise ValueError(f"Orientation must be +1 or -1, got {self.orientation}")
        if not (np.all(np.isfinite(positions)) and np.all(np.isfinite(times))):
            raise ValueError("Path samples must be finite")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "times", times)

    @property
    def segments(self) -> int:
        return len(self.positions) - 1

    @property
    def start(self) -> Tuple[float, float]:
        return self.times[0], self.positions[0]

    @property
    def end(self) -> Tuple[float, float]:
        return self.times[-1], self.positions[-1]

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.positions), np.asarray(self.times)

    def durations(self) -> np.ndarray:
        """
        Unsigned segment durations.

        Raises:
            DegenerateSegment: If any segment does not advance along the orientation
        """
        _, t = self.arrays()
        dt = self.orientation * np.diff(t)
        bad = np.flatnonzero(dt <= 0)
        if bad.size:
            k = int(bad[0])
            logger.warning(f"Degenerate segment {k}: t={self.times[k]} -> {self.times[k + 1]}")
            raise DegenerateSegment(
                f"Segment {k} has non-positive duration ({self.times[k]} -> {self.times[k + 1]}, "
                f"orientation {self.orientation:+d})"
            )
        return dt


def straight_path(x_start: float, x_end: float, t_start: float, t_end: float, segments: int) -> PathSpec:
    """Uniform-velocity path sampled at `segments` + 1 equally spaced times."""
    if segments < 1:
        raise ValueError(f"segments must be at least 1, got {segments}")
    return PathSpec(
        positions=tuple(np.linspace(x_start, x_end, segments + 1)),
        times=tuple(np.linspace(t_start, t_end, segments + 1)),
    )


def random_path(
    rng: np.random.Generator,
    segments: int,
    start_time: float = 0.0,
    max_step: float = 1.0,
    spread: float = 2.0,
) -> PathSpec:
    """Forward path with random positive durations and random positions."""
    dt = rng.uniform(0.05, max_step, size=segments)
    times = start_time + np.concatenate([[0.0], np.cumsum(dt)])
    positions = rng.uniform(-spread, spread, size=segments + 1)
    return PathSpec(tuple(positions), tuple(times))


def concatenate(first: PathSpec, second: PathSpec) -> PathSpec:
    """
    Join two paths at their shared sample.

    Raises:
        MismatchedJunction: If the end of `first` is not the start of `second`,
            or the orientations differ
    """
    if first.orientation != second.orientation:
        raise MismatchedJunction("Cannot concatenate paths of opposite orientation")
    if first.end != second.start:
        logger.error(f"Path junction mismatch: {first.end} vs {second.start}")
        raise MismatchedJunction(f"Path ends at {first.end} but the next starts at {second.start}")
    return PathSpec(
        positions=first.positions + second.positions[1:],
        times=first.times + second.times[1:],
        orientation=first.orientation,
    )


def split(path: PathSpec, index: int) -> Tuple[PathSpec, PathSpec]:
    """Split at sample `index` (0 < index < K); the sample belongs to both halves."""
    if not 0 < index < path.segments:
        raise ValueError(f"Split index must lie in 1..{path.segments - 1}, got {index}")
    return (
        PathSpec(path.positions[: index + 1], path.times[: index + 1], path.orientation),
        PathSpec(path.positions[index:], path.times[index:], path.orientation),
    )


def invert(path: PathSpec) -> PathSpec:
    """The same samples traversed backwards in time."""
    return PathSpec(
        positions=path.positions[::-1],
        times=path.times[::-1],
        orientation=-path.orientation,
    )


def path_from_samples(
    positions: Sequence[float], times: Optional[Sequence[float]] = None, step: float = 1.0
) -> PathSpec:
    """Forward path from positions, with times defaulting to 0, step, 2·step, ..."""
    if times is None:
        times = [k * step for k in range(len(positions))]
    return PathSpec(tuple(positions), tuple(times))
