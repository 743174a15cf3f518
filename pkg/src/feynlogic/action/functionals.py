"""
Classical action functionals on discretized paths.

Each segment contributes L(v, x_mid)·Δt with v = Δx/Δt and the potential
evaluated at the segment midpoint. An inverted path contributes the same
segment terms with the opposite sign, so S(invert(A)) = −S(A) for any
Lagrangian even in the velocity.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import OutOfRange
from .paths import PathSpec

logger = logging.getLogger(__name__)

Scalar = Union[float, complex, np.ndarray]


class Lagrangian(str, enum.Enum):
    FREE = "free"
    HARMONIC = "harmonic"


@dataclass(frozen=True)
class ActionFunctional:
    """
    Free particle L = m·v²/2, or harmonic oscillator L = m·v²/2 − m·ω²x²/2.

    Attributes:
        lagrangian: Which form
        mass: Particle mass m > 0
        omega: Angular frequency ω ≥ 0 (harmonic only)
    """

    lagrangian: Lagrangian = Lagrangian.FREE
    mass: float = 1.0
    omega: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "lagrangian", Lagrangian(self.lagrangian))
        if not (np.isfinite(self.mass) and self.mass > 0):
            raise OutOfRange(f"mass must be positive, got {self.mass}")
        if not (np.isfinite(self.omega) and self.omega >= 0):
            raise OutOfRange(f"omega must be non-negative, got {self.omega}")
        if self.lagrangian is Lagrangian.FREE and self.omega != 0:
            raise OutOfRange("The free-particle Lagrangian takes no frequency")

    @classmethod
    def free(cls, mass: float = 1.0) -> "ActionFunctional":
        return cls(Lagrangian.FREE, mass)

    @classmethod
    def harmonic(cls, mass: float = 1.0, omega: float = 1.0) -> "ActionFunctional":
        return cls(Lagrangian.HARMONIC, mass, omega)

    @property
    def label(self) -> str:
        if self.lagrangian is Lagrangian.FREE:
            return f"free(m={self.mass:g})"
        return f"harmonic(m={self.mass:g}, omega={self.omega:g})"

    def segment_action(self, x_start: Scalar, x_end: Scalar, dt: Scalar) -> Scalar:
        """
        Action of single segments; broadcasts over arrays.

        `dt` may be complex (rotated time step); it must not be zero.
        """
        x_start = np.asarray(x_start)
        x_end = np.asarray(x_end)
        dx = x_end - x_start
        kinetic = self.mass * dx**2 / (2.0 * dt)
        if self.lagrangian is Lagrangian.FREE:
            return kinetic
        x_mid = 0.5 * (x_start + x_end)
        return kinetic - dt * self.mass * self.omega**2 * x_mid**2 / 2.0


def segment_actions(path: PathSpec, functional: ActionFunctional) -> np.ndarray:
    """
    Signed per-segment actions.

    Raises:
        DegenerateSegment: If a segment has non-positive duration
    """
    dt = path.durations()
    x, _ = path.arrays()
    return path.orientation * functional.segment_action(x[:-1], x[1:], dt)


def action(path: PathSpec, functional: ActionFunctional) -> float:
    """
    Classical action of a discretized path.

    Args:
        path: Path samples
        functional: Lagrangian and parameters

    Returns:
        Sum of the segment actions; m·Δx²/(2Δt) per segment for a free particle

    Raises:
        DegenerateSegment: If a segment has non-positive duration
    """
    s = float(np.sum(segment_actions(path, functional)))
    logger.debug(f"Action of {path.segments}-segment path under {functional.label}: {s!r}")
    return s
