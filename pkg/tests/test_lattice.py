import numpy as np
import pytest

from feynlogic.action import (
    COMPARISON_ANGLE,
    COMPARISON_GRID,
    COMPARISON_STEPS,
    COMPARISON_TOL,
    ActionFunctional,
    ActionScale,
    LatticeSpec,
    chirp_lattice,
    compare_with_free_kernel,
    free_particle_kernel,
    lattice_propagator,
    single_step_kernel,
)
from feynlogic.errors import OutOfRange, ResourceLimit
from feynlogic.linalg import unitarity_defect

FREE = ActionFunctional.free()


def test_lattice_spec():
    grid = LatticeSpec(-1.0, 1.0, 5, 0.1)
    assert grid.spacing == pytest.approx(0.5)
    np.testing.assert_allclose(grid.points(), [-1.0, -0.5, 0.0, 0.5, 1.0])
    assert grid.index_of(0.3) == 3
    for bad in ((1.0, -1.0, 5, 0.1), (-1.0, 1.0, 1, 0.1), (-1.0, 1.0, 5, 0.0)):
        with pytest.raises(OutOfRange):
            LatticeSpec(*bad)


def test_single_step_kernel_rows_are_normalized():
    grid = LatticeSpec(-2.0, 2.0, 41, 0.2)
    kernel = single_step_kernel(FREE, grid)
    np.testing.assert_allclose(np.linalg.norm(kernel, axis=1), 1.0)
    # entry [f, i] carries the hop x_i -> x_f
    x = grid.points()
    phase = kernel[7, 3] / abs(kernel[7, 3])
    assert phase == pytest.approx(np.exp(1j * (x[7] - x[3]) ** 2 / (2 * grid.step)))


def test_propagator_is_the_matrix_power():
    grid = LatticeSpec(-2.0, 2.0, 21, 0.3)
    kernel = single_step_kernel(FREE, grid, ActionScale(0.5))
    np.testing.assert_allclose(
        lattice_propagator(FREE, grid, 2, ActionScale(0.5)), kernel @ kernel, atol=1e-12
    )
    np.testing.assert_allclose(lattice_propagator(FREE, grid, 1, ActionScale(0.5)), kernel, atol=1e-12)


@pytest.mark.parametrize("size", [16, 64, 128])
def test_chirp_lattice_kernel_is_unitary(size):
    grid = chirp_lattice(size)
    assert grid.step == pytest.approx(size / (2 * np.pi))
    kernel = single_step_kernel(FREE, grid)
    assert unitarity_defect(kernel) < 1e-8
    assert unitarity_defect(lattice_propagator(FREE, grid, 5)) < 1e-8


def test_chirp_lattice_needs_an_even_size():
    with pytest.raises(OutOfRange):
        chirp_lattice(15)


@pytest.mark.parametrize(
    "size, steps, error",
    [
        (257, 1, ResourceLimit),
        (16, 129, ResourceLimit),
        (16, 0, OutOfRange),
    ],
)
def test_resource_limits(size, steps, error):
    grid = LatticeSpec(0.0, 1.0, size, 0.1)
    with pytest.raises(error):
        lattice_propagator(FREE, grid, steps)


@pytest.mark.parametrize("angle", [-0.1, np.pi])
def test_rotation_angle_range(angle):
    with pytest.raises(OutOfRange):
        single_step_kernel(FREE, LatticeSpec(0.0, 1.0, 8, 0.1), wick_angle=angle)


def test_free_particle_kernel_modulus():
    # at real time the modulus is sqrt(m/(2πT)) everywhere
    values = free_particle_kernel(np.linspace(-3, 3, 7), 0.0, 2.0)
    np.testing.assert_allclose(np.abs(values), np.sqrt(1 / (4 * np.pi)))
    with pytest.raises(OutOfRange):
        free_particle_kernel(0.0, 0.0, 0.0)


def test_rotated_kernel_is_a_gaussian_profile():
    x = np.linspace(-2, 2, 5)
    values = free_particle_kernel(x, 0.0, 1.0, wick_angle=np.pi / 2)
    np.testing.assert_allclose(np.abs(values), np.exp(-(x**2) / 2) / np.sqrt(2 * np.pi), rtol=1e-12)


def test_lattice_matches_the_free_kernel():
    result = compare_with_free_kernel(COMPARISON_GRID, COMPARISON_STEPS, wick_angle=COMPARISON_ANGLE)
    assert result.max_deviation <= COMPARISON_TOL
    assert result.duration == pytest.approx(1.0)
    assert result.as_dict()["points"] == result.positions.size
    assert np.all(np.abs(result.positions) <= 3.0 + 1e-12)


@pytest.mark.parametrize("window", [-1.0, float("nan")])
def test_comparison_window_must_be_non_negative(window):
    grid = LatticeSpec(-2.0, 2.0, 21, 0.05)
    with pytest.raises(OutOfRange, match="window"):
        compare_with_free_kernel(grid, 2, window=window)


def test_zero_window_compares_the_start_point():
    grid = LatticeSpec(-2.0, 2.0, 21, 0.05)
    result = compare_with_free_kernel(grid, 2, window=0.0)
    assert result.positions.size == 1
    assert result.positions[0] == pytest.approx(0.0)


def test_harmonic_propagator_shape():
    grid = LatticeSpec(-3.0, 3.0, 31, 0.1)
    propagator = lattice_propagator(ActionFunctional.harmonic(omega=1.0), grid, 4, wick_angle=np.pi / 4)
    assert propagator.shape == (31, 31)
    assert np.all(np.isfinite(propagator))
