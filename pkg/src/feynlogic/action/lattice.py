"""
Sum over paths on a finite spatial lattice.

The single-step kernel K[f, i] = e^{iαS(x_i → x_f, Δt)} assigns the
amplitude-action rule to every one-step hop; chaining `steps` kernels by
matrix products applies the product rule along each lattice path and the sum
rule over intermediate positions. Rows of the single-step kernel are scaled
to unit norm before chaining.

The time step may be rotated to Δt·e^{−iθ}. For 0 < θ ≤ π/2 every hop is
damped, the lattice sum converges, and its modulus profile can be compared
with the analytic free-particle kernel at the same complex time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from ..constants import MAX_GRID, MAX_STEPS
from ..errors import OutOfRange, ResourceLimit
from .functionals import ActionFunctional
from .rule import ActionScale

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticeSpec:
    """
    Equally spaced positions lower..upper with a fixed time step.

    Attributes:
        lower: First lattice position
        upper: Last lattice position
        size: Number of lattice points
        step: Time step per hop
    """

    lower: float
    upper: float
    size: int
    step: float

    def __post_init__(self):
        if self.size < 2:
            raise OutOfRange(f"A lattice needs at least 2 points, got {self.size}")
        if not self.upper > self.lower:
            raise OutOfRange(f"Lattice bounds must satisfy lower < upper, got [{self.lower}, {self.upper}]")
        if not (np.isfinite(self.step) and self.step > 0):
            raise OutOfRange(f"Time step must be positive, got {self.step}")

    @property
    def spacing(self) -> float:
        return (self.upper - self.lower) / (self.size - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.lower, self.upper, self.size)

    def index_of(self, x: float) -> int:
        return int(np.argmin(np.abs(self.points() - x)))


def chirp_lattice(size: int, spacing: float = 1.0, mass: float = 1.0, scale: ActionScale = ActionScale()) -> LatticeSpec:
    """
    Free-particle lattice whose normalized single-step kernel is exactly unitary.

    With Δt = αma²G/(2π) and G even the kernel entries are e^{iπ(j−k)²/G},
    a circulant chirp whose eigenvalues all have modulus √G.
    """
    if size % 2:
        raise OutOfRange(f"Chirp lattices need an even number of points, got {size}")
    step = scale.alpha * mass * spacing**2 * size / (2.0 * np.pi)
    return LatticeSpec(0.0, spacing * (size - 1), size, step)


def _check_limits(grid: LatticeSpec, steps: int) -> None:
    if grid.size > MAX_GRID:
        logger.warning(f"Lattice of {grid.size} points exceeds {MAX_GRID}")
        raise ResourceLimit(f"Lattice size {grid.size} exceeds the limit of {MAX_GRID} points")
    if steps > MAX_STEPS:
        logger.warning(f"{steps} steps exceed {MAX_STEPS}")
        raise ResourceLimit(f"{steps} steps exceed the limit of {MAX_STEPS}")
    if steps < 1:
        raise OutOfRange(f"steps must be at least 1, got {steps}")


def _rotated_step(grid: LatticeSpec, wick_angle: float) -> complex:
    if not 0.0 <= wick_angle <= np.pi / 2:
        raise OutOfRange(f"Rotation angle must lie in [0, pi/2], got {wick_angle}")
    return grid.step * np.exp(-1j * wick_angle)


def single_step_kernel(
    functional: ActionFunctional,
    grid: LatticeSpec,
    scale: ActionScale = ActionScale(),
    wick_angle: float = 0.0,
) -> np.ndarray:
    """
    Row-normalized one-hop kernel, entry [f, i] for the hop x_i → x_f.

    Raises:
        ResourceLimit: If the lattice exceeds the point limit
    """
    _check_limits(grid, 1)
    dt = _rotated_step(grid, wick_angle)
    x = grid.points()
    s = functional.segment_action(x[None, :], x[:, None], dt)
    kernel = np.exp(1j * scale.alpha * s)
    norms = np.linalg.norm(kernel, axis=1, keepdims=True)
    return kernel / norms


def lattice_propagator(
    functional: ActionFunctional,
    grid: LatticeSpec,
    steps: int,
    scale: ActionScale = ActionScale(),
    wick_angle: float = 0.0,
) -> np.ndarray:
    """
    Lattice sum over all `steps`-hop paths.

    Args:
        functional: Lagrangian
        grid: Spatial lattice and time step
        steps: Number of hops
        scale: Action scale α
        wick_angle: Rotation θ of the time step into the lower half plane

    Returns:
        (size, size) complex matrix, entry [f, i] for x_i → x_f

    Raises:
        ResourceLimit: If size > 256 or steps > 128
    """
    _check_limits(grid, steps)
    kernel = single_step_kernel(functional, grid, scale, wick_angle)
    propagator = np.linalg.matrix_power(kernel, steps)
    logger.debug(f"Lattice propagator: {grid.size} points, {steps} steps, theta={wick_angle:g}")
    return propagator


def free_particle_kernel(
    x_final,
    x_initial: float,
    duration: float,
    mass: float = 1.0,
    scale: ActionScale = ActionScale(),
    wick_angle: float = 0.0,
):
    """
    Analytic free-particle kernel sqrt(αm/(2πiT))·exp(iαmΔx²/(2T)) at the
    rotated time T = duration·e^{−iθ}.
    """
    if not duration > 0:
        raise OutOfRange(f"duration must be positive, got {duration}")
    t = duration * np.exp(-1j * wick_angle)
    dx = np.asarray(x_final, dtype=np.float64) - x_initial
    value = np.sqrt(scale.alpha * mass / (2j * np.pi * t)) * np.exp(1j * scale.alpha * mass * dx**2 / (2.0 * t))
    return complex(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class KernelComparison:
    """
    Peak-normalized modulus profiles of the lattice and analytic kernels.

    Attributes:
        max_deviation: max |lattice − analytic| over the compared points
        positions: Compared final positions
        lattice: Lattice profile at those positions
        analytic: Analytic profile at those positions
    """

    max_deviation: float
    positions: np.ndarray = field(repr=False)
    lattice: np.ndarray = field(repr=False)
    analytic: np.ndarray = field(repr=False)
    duration: float = 0.0
    wick_angle: float = 0.0

    def as_dict(self) -> Dict[str, object]:
        return {
            "max_deviation": self.max_deviation,
            "points": int(self.positions.size),
            "duration": self.duration,
            "wick_angle": self.wick_angle,
        }


def compare_with_free_kernel(
    grid: LatticeSpec,
    steps: int,
    x_initial: float = 0.0,
    mass: float = 1.0,
    scale: ActionScale = ActionScale(),
    wick_angle: float = np.pi / 4,
    window: Optional[float] = 3.0,
) -> KernelComparison:
    """
    Compare the lattice free-particle propagator with the analytic kernel.

    Both modulus profiles (as functions of the final position, for the
    lattice point nearest `x_initial`) are normalized to their peak and
    compared on |x_f − x_i| ≤ window.

    Raises:
        OutOfRange: If `window` is negative or NaN.
    """
    if window is not None and not window >= 0.0:
        raise OutOfRange(f"window must be non-negative, got {window}")
    functional = ActionFunctional.free(mass)
    propagator = lattice_propagator(functional, grid, steps, scale, wick_angle)
    i = grid.index_of(x_initial)
    x = grid.points()
    lattice = np.abs(propagator[:, i])
    analytic = np.abs(free_particle_kernel(x, x[i], steps * grid.step, mass, scale, wick_angle))
    lattice = lattice / lattice.max()
    analytic = analytic / analytic.max()
    mask = np.ones(x.shape, dtype=bool) if window is None else np.abs(x - x[i]) <= window
    deviation = float(np.max(np.abs(lattice[mask] - analytic[mask])))
    logger.info(f"Lattice vs analytic free kernel: max deviation {deviation:.3e} on {int(mask.sum())} points")
    return KernelComparison(deviation, x[mask], lattice[mask], analytic[mask], steps * grid.step, wick_angle)


# Documented comparison configuration
COMPARISON_GRID = LatticeSpec(-10.0, 10.0, 201, 0.05)
COMPARISON_STEPS = 20
COMPARISON_ANGLE = np.pi / 4
COMPARISON_TOL = 0.02
